// Copyright 2026 The adpurify developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adpurify/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "adpurify/channels.hpp"

namespace adpurify::sampling {

using qcore::Complex;
using qcore::ComplexMatrix;
using qcore::PureState;

namespace {

std::uint64_t avalanche(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : state_(avalanche(avalanche(seed + 0x9E3779B97F4A7C15ull) +
                       stream * 0xD1B54A32D192ED03ull)) {}

std::uint64_t StreamRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  return avalanche(state_);
}

double StreamRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double StreamRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex StreamRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex{re, im};
}

namespace {

PureState normalized_gaussian_state(StreamRng& rng, std::size_t n_qubits, bool complex_entries) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  while (true) {
    std::vector<Complex> amps(dim);
    for (Complex& a : amps) {
      a = complex_entries ? rng.complex_normal() : Complex{rng.normal(), 0.0};
    }
    PureState state(n_qubits, std::move(amps));
    if (state.norm_squared() > 1e-12) {
      return state.normalized();
    }
  }
}

}  // namespace

PureState sample_state(const SampleSpec& spec, std::uint64_t index) {
  if (spec.kind == SampleKind::unitary_channel) {
    throw std::invalid_argument("sample_state: spec describes a channel, not a state");
  }
  StreamRng rng(spec.seed, index);
  const std::size_t n_qubits = spec.kind == SampleKind::two_qubit_state ? 2 : 1;

  switch (spec.distribution) {
    case Distribution::uniform_alpha: {
      if (n_qubits != 1) {
        throw std::invalid_argument("sample_state: uniform_alpha is a single-qubit ensemble");
      }
      const double alpha = rng.uniform01();
      const double beta = std::sqrt(1.0 - alpha * alpha);
      return PureState(1, {Complex{alpha, 0.0}, Complex{beta, 0.0}});
    }
    case Distribution::haar_real:
      return normalized_gaussian_state(rng, n_qubits, /*complex_entries=*/false);
    case Distribution::haar_complex:
      return normalized_gaussian_state(rng, n_qubits, /*complex_entries=*/true);
  }
  throw std::logic_error("sample_state: unknown distribution");
}

channels::KrausChannel sample_unitary_channel(const SampleSpec& spec, std::uint64_t index) {
  if (spec.kind != SampleKind::unitary_channel) {
    throw std::invalid_argument("sample_unitary_channel: spec does not describe a channel");
  }
  StreamRng rng(spec.seed, index);
  while (true) {
    Complex g00 = rng.complex_normal();
    Complex g10 = rng.complex_normal();
    Complex g01 = rng.complex_normal();
    Complex g11 = rng.complex_normal();

    // Gram-Schmidt on the columns; with positive normalizers this yields
    // the Haar distribution.
    const double n0 = std::sqrt(std::norm(g00) + std::norm(g10));
    if (n0 < 1e-12) continue;
    const Complex u00 = g00 / n0;
    const Complex u10 = g10 / n0;

    const Complex overlap = std::conj(u00) * g01 + std::conj(u10) * g11;
    Complex v01 = g01 - overlap * u00;
    Complex v11 = g11 - overlap * u10;
    const double n1 = std::sqrt(std::norm(v01) + std::norm(v11));
    if (n1 < 1e-12) continue;

    ComplexMatrix u(2, 2);
    u(0, 0) = u00;
    u(1, 0) = u10;
    u(0, 1) = v01 / n1;
    u(1, 1) = v11 / n1;
    return channels::KrausChannel{2, {std::move(u)}};
  }
}

}  // namespace adpurify::sampling

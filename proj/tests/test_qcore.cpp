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

#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "adpurify/channels.hpp"
#include "adpurify/ensemble.hpp"
#include "adpurify/sampling.hpp"

using namespace adpurify;
using qcore::BranchEnsemble;
using qcore::Complex;
using qcore::ComplexMatrix;
using qcore::PureState;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool state_near(const PureState& s, const std::vector<Complex>& ref, double tol = 1e-12) {
  if (s.dim() != ref.size()) return false;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (std::abs(s.amplitude(i) - ref[i]) > tol) return false;
  }
  return true;
}

// Matrices with dyadic entries multiply without rounding, which makes the
// associativity check exact.
ComplexMatrix random_dyadic_matrix(sampling::StreamRng& rng, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double re = static_cast<double>(rng.next_u64() % 33) - 16.0;
      const double im = static_cast<double>(rng.next_u64() % 33) - 16.0;
      m(r, c) = Complex{re / 16.0, im / 16.0};
    }
  }
  return m;
}

}  // namespace

TEST_CASE("tensor: identity times identity") {
  const ComplexMatrix i4 = qcore::tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
  CHECK(qcore::max_abs_diff(i4, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("tensor: Z x Z fixes |11>") {
  const ComplexMatrix zz = qcore::tensor(qcore::gates::pauli_z(), qcore::gates::pauli_z());
  const PureState out = qcore::apply_operator(PureState::basis(2, 3), zz, {0, 1});
  CHECK(state_near(out, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}));
}

TEST_CASE("tensor: no-jump operator squared diagonal at gamma 0.5") {
  const auto ad = channels::make_ad(0.5);
  const ComplexMatrix both = qcore::tensor(ad.no_jump(), ad.no_jump());
  const double s = std::sqrt(0.5);
  CHECK(near(both(0, 0).real(), 1.0, 1e-12));
  CHECK(near(both(1, 1).real(), s, 1e-12));
  CHECK(near(both(2, 2).real(), s, 1e-12));
  CHECK(near(both(3, 3).real(), 0.5, 1e-12));
  CHECK(near(qcore::max_abs(both), 1.0, 1e-12));
}

TEST_CASE("tensor: associative with exact entry equality") {
  sampling::StreamRng rng(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_dyadic_matrix(rng, 2);
    const ComplexMatrix b = random_dyadic_matrix(rng, 2);
    const ComplexMatrix c = random_dyadic_matrix(rng, 4);
    const ComplexMatrix left = qcore::tensor(qcore::tensor(a, b), c);
    const ComplexMatrix right = qcore::tensor(a, qcore::tensor(b, c));
    CHECK(qcore::max_abs_diff(left, right) == 0.0);
  }
}

TEST_CASE("apply_operator: Hadamard on |0>") {
  const PureState out = qcore::apply_operator(PureState::basis(1, 0), qcore::gates::hadamard(), {0});
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(state_near(out, {{s, 0.0}, {s, 0.0}}));
}

TEST_CASE("apply_operator: CZ flips the sign of |11>") {
  const PureState out = qcore::apply_operator(PureState::basis(2, 3), qcore::gates::cz(), {0, 1});
  CHECK(state_near(out, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}}));
}

TEST_CASE("apply_operator: decay jump on |1> at gamma 0.36") {
  const auto ad = channels::make_ad(0.36);
  const PureState out = qcore::apply_operator(PureState::basis(1, 1), ad.decay(), {0});
  CHECK(near(out.amplitude(0).real(), 0.6, 1e-12));
  CHECK(near(out.amplitude(1).real(), 0.0, 1e-15));
}

TEST_CASE("apply_operator: identity leaves amplitudes bit-exact") {
  sampling::SampleSpec spec{sampling::SampleKind::two_qubit_state,
                            sampling::Distribution::haar_complex, 11};
  for (std::uint64_t i = 0; i < 16; ++i) {
    const PureState psi = sampling::sample_state(spec, i);
    const PureState out = qcore::apply_operator(psi, ComplexMatrix::identity(4), {0, 1});
    for (std::size_t k = 0; k < psi.dim(); ++k) {
      CHECK(out.amplitude(k) == psi.amplitude(k));
    }
  }
}

TEST_CASE("apply_operator: rejects bad targets") {
  const PureState psi = PureState::basis(2, 0);
  CHECK_THROWS_AS(qcore::apply_operator(psi, qcore::gates::cz(), {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(qcore::apply_operator(psi, qcore::gates::cz(), {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(qcore::apply_operator(psi, qcore::gates::hadamard(), {0, 1}),
                  std::invalid_argument);
}

TEST_CASE("apply_operator: operator embedding on middle qubit") {
  // X on qubit 1 of three: |000> -> |010>.
  const PureState out =
      qcore::apply_operator(PureState::basis(3, 0), qcore::gates::pauli_x(), {1});
  CHECK(near(std::abs(out.amplitude(2)), 1.0, 1e-15));
}

TEST_CASE("matrix chains keep finite entries") {
  sampling::StreamRng rng(13, 4);
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (int step = 0; step < 30; ++step) {
    m = m * qcore::tensor(random_dyadic_matrix(rng, 2), random_dyadic_matrix(rng, 2)).adjoint();
    CHECK(m.is_finite());
  }
}

TEST_CASE("post_select: plus state splits evenly") {
  const auto ensemble = BranchEnsemble::from_pure(PureState::plus());
  const auto [p, collapsed] = qcore::post_select(ensemble, 0, 0);
  CHECK(near(p, 0.5, 1e-15));
  REQUIRE(collapsed.branches().size() == 1);
  CHECK(state_near(collapsed.branches()[0].state, {{1.0, 0.0}, {0.0, 0.0}}));
}

TEST_CASE("post_select: impossible outcome raises") {
  const auto ensemble = BranchEnsemble::from_pure(PureState::basis(1, 1));
  CHECK_THROWS_AS(qcore::post_select(ensemble, 0, 0), std::domain_error);
}

TEST_CASE("post_select: gadget ensemble at gamma 0.5 gives 0.75") {
  // Ancilla |+> and data (|0>+|1>)/sqrt(2), CZ / noise / CZ / H by hand.
  const auto ad = channels::make_ad(0.5);
  BranchEnsemble staged = BranchEnsemble::from_pure(tensor(PureState::plus(), PureState::plus()));
  staged = qcore::apply_unitary(staged, qcore::gates::cz(), {0, 1});
  staged = channels::apply_channel(staged, ad.channel, 1);
  staged = qcore::apply_unitary(staged, qcore::gates::cz(), {0, 1});
  staged = qcore::apply_unitary(staged, qcore::gates::hadamard(), {0});
  const auto [p, collapsed] = qcore::post_select(staged, 0, 0);
  CHECK(near(p, 0.75, 1e-12));
}

TEST_CASE("post_select: outcome probabilities sum to one") {
  sampling::SampleSpec spec{sampling::SampleKind::two_qubit_state,
                            sampling::Distribution::haar_complex, 5};
  const auto ad = channels::make_ad(0.3);
  for (std::uint64_t i = 0; i < 32; ++i) {
    auto ensemble = BranchEnsemble::from_pure(sampling::sample_state(spec, i));
    ensemble = channels::apply_channel(ensemble, ad.channel, 0);
    const double p0 = qcore::outcome_probability(ensemble, 1, 0);
    const double p1 = qcore::outcome_probability(ensemble, 1, 1);
    CHECK(near(p0 + p1, 1.0, 1e-10));
  }
}

TEST_CASE("fidelity_to_pure: matching and orthogonal references") {
  const auto ensemble = BranchEnsemble::from_pure(PureState::plus());
  CHECK(near(qcore::fidelity_to_pure(PureState::plus(), ensemble), 1.0, 1e-12));
  const PureState minus(1, {Complex{1.0 / std::sqrt(2.0), 0.0},
                            Complex{-1.0 / std::sqrt(2.0), 0.0}});
  CHECK(near(qcore::fidelity_to_pure(minus, ensemble), 0.0, 1e-12));
}

TEST_CASE("fidelity_to_pure: damped plus state") {
  const auto ad = channels::make_ad(0.5);
  const PureState plus = PureState::plus();
  const auto noisy = channels::apply_channel(BranchEnsemble::from_pure(plus), ad.channel, 0);
  const double expected = (2.0 + std::sqrt(2.0)) / 4.0;  // 0.853553...
  CHECK(near(qcore::fidelity_to_pure(plus, noisy), expected, 1e-12));
  CHECK(near(expected, 0.853553, 1e-6));
}

TEST_CASE("fidelity_to_pure: invariant under global phase of the reference") {
  sampling::SampleSpec spec{sampling::SampleKind::single_qubit_state,
                            sampling::Distribution::haar_complex, 19};
  const auto ad = channels::make_ad(0.4);
  for (std::uint64_t i = 0; i < 32; ++i) {
    const PureState psi = sampling::sample_state(spec, i);
    const auto noisy = channels::apply_channel(BranchEnsemble::from_pure(psi), ad.channel, 0);
    const double base = qcore::fidelity_to_pure(psi, noisy);

    const Complex phase = std::polar(1.0, 2.1 + static_cast<double>(i));
    std::vector<Complex> rotated(psi.amplitudes());
    for (Complex& a : rotated) a *= phase;
    const double turned = qcore::fidelity_to_pure(PureState(1, rotated), noisy);
    CHECK(near(base, turned, 1e-12));
  }
}

TEST_CASE("fidelity_to_pure: dimension mismatch raises") {
  const auto ensemble = BranchEnsemble::from_pure(PureState::bell());
  CHECK_THROWS_AS(qcore::fidelity_to_pure(PureState::plus(), ensemble), std::invalid_argument);
}

TEST_CASE("remove_qubit keeps the collapsed slice") {
  const PureState bell = PureState::bell();
  const auto [p, collapsed] = qcore::post_select(BranchEnsemble::from_pure(bell), 0, 1);
  CHECK(near(p, 0.5, 1e-15));
  const auto reduced = qcore::discard_qubit(collapsed, 0, 1);
  REQUIRE(reduced.branches().size() == 1);
  CHECK(state_near(reduced.branches()[0].state, {{0.0, 0.0}, {1.0, 0.0}}));
}

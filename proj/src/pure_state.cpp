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

#include "adpurify/pure_state.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace adpurify::qcore {

PureState::PureState(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != (std::size_t{1} << n_qubits_)) {
    throw std::invalid_argument("PureState: amplitude count must be 2^n_qubits");
  }
}

PureState PureState::basis(std::size_t n_qubits, std::size_t index) {
  std::vector<Complex> amps(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  if (index >= amps.size()) {
    throw std::invalid_argument("PureState::basis: index out of range");
  }
  amps[index] = Complex{1.0, 0.0};
  return PureState(n_qubits, std::move(amps));
}

PureState PureState::plus() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return PureState(1, {Complex{inv_sqrt2, 0.0}, Complex{inv_sqrt2, 0.0}});
}

PureState PureState::bell() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return PureState(2, {Complex{inv_sqrt2, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0},
                       Complex{inv_sqrt2, 0.0}});
}

double PureState::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amplitudes_) {
    total += std::norm(a);
  }
  return total;
}

double PureState::norm() const { return std::sqrt(norm_squared()); }

bool PureState::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

PureState PureState::normalized() const {
  const double n = norm();
  if (n <= 0.0) {
    throw std::domain_error("PureState: cannot normalize the zero vector");
  }
  std::vector<Complex> amps(amplitudes_);
  for (Complex& a : amps) {
    a /= n;
  }
  return PureState(n_qubits_, std::move(amps));
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch");
  }
  Complex total{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    total += std::conj(a.amplitude(i)) * b.amplitude(i);
  }
  return total;
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Complex> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      amps[i * b.dim() + j] = a.amplitude(i) * b.amplitude(j);
    }
  }
  return PureState(a.n_qubits() + b.n_qubits(), std::move(amps));
}

PureState apply_operator(const PureState& state, const ComplexMatrix& op,
                         const std::vector<int>& targets) {
  const std::size_t n = state.n_qubits();
  const std::size_t k = targets.size();
  const std::size_t op_dim = std::size_t{1} << k;
  if (op.rows() != op_dim || op.cols() != op_dim) {
    throw std::invalid_argument("apply_operator: operator must be 2^k x 2^k for k targets");
  }
  std::unordered_set<int> seen;
  for (int t : targets) {
    if (t < 0 || static_cast<std::size_t>(t) >= n) {
      throw std::invalid_argument("apply_operator: target qubit out of range");
    }
    if (!seen.insert(t).second) {
      throw std::invalid_argument("apply_operator: duplicate target qubit");
    }
  }

  // Shift that isolates each target's bit; qubit 0 is most significant.
  std::vector<std::size_t> shifts(k);
  for (std::size_t t = 0; t < k; ++t) {
    shifts[t] = n - 1 - static_cast<std::size_t>(targets[t]);
  }

  const std::size_t dim = state.dim();
  std::vector<Complex> out(dim, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t row = 0;
    for (std::size_t t = 0; t < k; ++t) {
      row = (row << 1) | ((i >> shifts[t]) & 1u);
    }
    Complex acc{0.0, 0.0};
    for (std::size_t col = 0; col < op_dim; ++col) {
      const Complex coeff = op(row, col);
      if (coeff == Complex{0.0, 0.0}) continue;
      std::size_t j = i;
      for (std::size_t t = 0; t < k; ++t) {
        const std::size_t bit = (col >> (k - 1 - t)) & 1u;
        j = (j & ~(std::size_t{1} << shifts[t])) | (bit << shifts[t]);
      }
      acc += coeff * state.amplitude(j);
    }
    out[i] = acc;
  }
  return PureState(n, std::move(out));
}

PureState remove_qubit(const PureState& state, int qubit, int outcome) {
  const std::size_t n = state.n_qubits();
  if (qubit < 0 || static_cast<std::size_t>(qubit) >= n) {
    throw std::invalid_argument("remove_qubit: qubit out of range");
  }
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("remove_qubit: outcome must be 0 or 1");
  }
  const std::size_t shift = n - 1 - static_cast<std::size_t>(qubit);
  std::vector<Complex> out;
  out.reserve(state.dim() / 2);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (((i >> shift) & 1u) == static_cast<std::size_t>(outcome)) {
      out.push_back(state.amplitude(i));
    }
  }
  return PureState(n - 1, std::move(out));
}

}  // namespace adpurify::qcore

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

#pragma once

#include <cstddef>
#include <vector>

#include "adpurify/complex_matrix.hpp"

namespace adpurify::qcore {

/// Amplitude vector over n qubits. Qubit 0 occupies the most significant
/// index position, so the basis label |q0 q1 ...> reads left to right.
class PureState {
 public:
  PureState(std::size_t n_qubits, std::vector<Complex> amplitudes);

  static PureState basis(std::size_t n_qubits, std::size_t index);
  /// (|0> + |1>)/sqrt(2)
  static PureState plus();
  /// (|00> + |11>)/sqrt(2)
  static PureState bell();

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  PureState normalized() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// <a|b>
Complex inner_product(const PureState& a, const PureState& b);

/// Kronecker product of states, a's qubits in the leading positions.
PureState tensor(const PureState& a, const PureState& b);

/// Embeds `op` on the given target qubits (identity elsewhere) and applies
/// it. Does NOT renormalize. `op` must be 2^k x 2^k for k targets; targets
/// must be distinct and in range.
PureState apply_operator(const PureState& state, const ComplexMatrix& op,
                         const std::vector<int>& targets);

/// Drops a collapsed qubit from the index space, keeping the slice where it
/// equals `outcome`. The remaining qubits keep their relative order.
PureState remove_qubit(const PureState& state, int qubit, int outcome);

}  // namespace adpurify::qcore

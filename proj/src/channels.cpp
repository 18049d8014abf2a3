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

#include "adpurify/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace adpurify::channels {

using qcore::Branch;
using qcore::BranchEnsemble;
using qcore::Complex;
using qcore::ComplexMatrix;
using qcore::PureState;

ADChannel make_ad(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("make_ad: gamma must lie in [0, 1]");
  }
  ComplexMatrix no_jump(2, 2);
  no_jump(0, 0) = Complex{1.0, 0.0};
  no_jump(1, 1) = Complex{std::sqrt(1.0 - gamma), 0.0};
  ComplexMatrix decay(2, 2);
  decay(0, 1) = Complex{std::sqrt(gamma), 0.0};
  return ADChannel{gamma, KrausChannel{2, {std::move(no_jump), std::move(decay)}}};
}

CptpReport validate_cptp(const KrausChannel& channel) {
  if (channel.ops.empty()) {
    throw std::invalid_argument("validate_cptp: empty channel");
  }
  for (const ComplexMatrix& op : channel.ops) {
    if (op.rows() != channel.dim || op.cols() != channel.dim) {
      throw std::invalid_argument("validate_cptp: operator dimensions must equal channel dim");
    }
  }
  ComplexMatrix sum(channel.dim, channel.dim);
  for (const ComplexMatrix& op : channel.ops) {
    sum = sum + op.adjoint() * op;
  }
  const double deviation = qcore::max_abs_diff(sum, ComplexMatrix::identity(channel.dim));
  return CptpReport{deviation <= 1e-12, deviation};
}

BranchEnsemble apply_channel(const BranchEnsemble& ensemble, const KrausChannel& channel,
                             int target) {
  if (channel.dim != 2) {
    throw std::invalid_argument("apply_channel: only single-qubit channels are supported");
  }
  if (target < 0 || static_cast<std::size_t>(target) >= ensemble.n_qubits()) {
    throw std::invalid_argument("apply_channel: target qubit out of range");
  }
  BranchEnsemble out(ensemble.n_qubits());
  for (const Branch& b : ensemble.branches()) {
    for (std::size_t i = 0; i < channel.ops.size(); ++i) {
      PureState mapped = apply_operator(b.state, channel.ops[i], {target});
      const double kept = mapped.norm_squared();
      const double weight = b.weight * kept;
      if (weight < qcore::kZeroBranchWeight) continue;
      std::vector<int> word = b.kraus_word;
      word.push_back(static_cast<int>(i));
      // Skip the no-op rescale so identity-like operators cannot drift
      // amplitudes by an ulp.
      PureState state =
          std::abs(kept - 1.0) <= 1e-14 ? std::move(mapped) : mapped.normalized();
      out.add_branch(Branch{weight, std::move(state), std::move(word)});
    }
  }
  return out;
}

ChoiState choi_of(const KrausChannel& channel) {
  if (channel.dim != 2) {
    throw std::invalid_argument("choi_of: only single-qubit channels are supported");
  }
  // Identity acts on the first qubit, the channel on the second.
  BranchEnsemble bell = BranchEnsemble::from_pure(PureState::bell());
  return ChoiState{2, apply_channel(bell, channel, 1)};
}

ZParity z_parity(const ComplexMatrix& op) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw std::invalid_argument("z_parity: operator must be 2x2");
  }
  const ComplexMatrix z = qcore::gates::pauli_z();
  const double anticommutator = qcore::max_abs(op * z + z * op);
  const double commutator = qcore::max_abs(op * z - z * op);
  constexpr double tol = 1e-12;
  if (anticommutator <= tol) return ZParity::anticommutes;
  if (commutator <= tol) return ZParity::commutes;
  return ZParity::neither;
}

}  // namespace adpurify::channels

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
#include <utility>
#include <vector>

#include "adpurify/pure_state.hpp"

namespace adpurify::qcore {

/// Branches below this weight are dropped: a decay operator acting on its
/// dark state produces exact zeros, and the threshold guards rounding.
inline constexpr double kZeroBranchWeight = 1e-15;

/// Minimum probability for a measurement outcome to be considered possible.
inline constexpr double kImpossibleOutcome = 1e-15;

struct Branch {
  double weight;
  PureState state;
  /// Which Kraus operator each noise site acted through, in application order.
  std::vector<int> kraus_word;
};

/// Weighted mixture of normalized pure states tagged with the Kraus indices
/// that produced them. Distinct Kraus words never interfere, so this is an
/// exact representation of a channel-evolved pure state. An ensemble with no
/// branches marks an impossible measurement record.
class BranchEnsemble {
 public:
  BranchEnsemble() = default;
  explicit BranchEnsemble(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  static BranchEnsemble from_pure(PureState state);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  const std::vector<Branch>& branches() const { return branches_; }
  bool empty() const { return branches_.empty(); }

  void add_branch(Branch branch);

  double total_weight() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Branch> branches_;
};

/// Probability of measuring `outcome` on `qubit` without collapsing.
double outcome_probability(const BranchEnsemble& ensemble, int qubit, int outcome);

/// Projects the measured qubit onto `outcome` (kept in place, collapsed),
/// renormalizes branch states and weights, and drops zero-norm branches.
/// Throws std::domain_error when the outcome probability is below 1e-15.
std::pair<double, BranchEnsemble> post_select(const BranchEnsemble& ensemble,
                                              int qubit, int outcome);

/// <ref|rho|ref> for the mixture rho, i.e. the weight-sum of per-branch
/// overlaps |<ref|branch>|^2.
double fidelity_to_pure(const PureState& reference, const BranchEnsemble& ensemble);

/// Applies a unitary to every branch; weights and Kraus words are unchanged.
BranchEnsemble apply_unitary(const BranchEnsemble& ensemble, const ComplexMatrix& op,
                             const std::vector<int>& targets);

/// Removes a collapsed qubit from every branch.
BranchEnsemble discard_qubit(const BranchEnsemble& ensemble, int qubit, int outcome);

}  // namespace adpurify::qcore

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

#include "adpurify/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace adpurify::qcore {

BranchEnsemble BranchEnsemble::from_pure(PureState state) {
  BranchEnsemble ensemble(state.n_qubits());
  ensemble.add_branch(Branch{1.0, std::move(state), {}});
  return ensemble;
}

void BranchEnsemble::add_branch(Branch branch) {
  if (branch.state.n_qubits() != n_qubits_) {
    throw std::invalid_argument("BranchEnsemble: branch qubit count mismatch");
  }
  if (branch.weight < 0.0) {
    throw std::invalid_argument("BranchEnsemble: negative branch weight");
  }
  branches_.push_back(std::move(branch));
}

double BranchEnsemble::total_weight() const {
  double total = 0.0;
  for (const Branch& b : branches_) {
    total += b.weight;
  }
  return total;
}

namespace {

double projected_norm_squared(const PureState& state, std::size_t shift, int outcome) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (((i >> shift) & 1u) == static_cast<std::size_t>(outcome)) {
      total += std::norm(state.amplitude(i));
    }
  }
  return total;
}

std::size_t qubit_shift(const BranchEnsemble& ensemble, int qubit) {
  if (qubit < 0 || static_cast<std::size_t>(qubit) >= ensemble.n_qubits()) {
    throw std::invalid_argument("post_select: qubit out of range");
  }
  return ensemble.n_qubits() - 1 - static_cast<std::size_t>(qubit);
}

}  // namespace

double outcome_probability(const BranchEnsemble& ensemble, int qubit, int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("post_select: outcome must be 0 or 1");
  }
  const std::size_t shift = qubit_shift(ensemble, qubit);
  double probability = 0.0;
  for (const Branch& b : ensemble.branches()) {
    probability += b.weight * projected_norm_squared(b.state, shift, outcome);
  }
  return probability;
}

std::pair<double, BranchEnsemble> post_select(const BranchEnsemble& ensemble, int qubit,
                                              int outcome) {
  const double probability = outcome_probability(ensemble, qubit, outcome);
  if (probability < kImpossibleOutcome) {
    throw std::domain_error("post_select: impossible outcome");
  }

  const std::size_t shift = qubit_shift(ensemble, qubit);
  BranchEnsemble collapsed(ensemble.n_qubits());
  for (const Branch& b : ensemble.branches()) {
    const double kept = projected_norm_squared(b.state, shift, outcome);
    const double weight = b.weight * kept / probability;
    if (weight < kZeroBranchWeight) continue;
    const double scale = std::abs(kept - 1.0) <= 1e-14 ? 1.0 : 1.0 / std::sqrt(kept);
    std::vector<Complex> amps(b.state.dim(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < b.state.dim(); ++i) {
      if (((i >> shift) & 1u) == static_cast<std::size_t>(outcome)) {
        amps[i] = b.state.amplitude(i) * scale;
      }
    }
    collapsed.add_branch(
        Branch{weight, PureState(ensemble.n_qubits(), std::move(amps)), b.kraus_word});
  }
  return {probability, std::move(collapsed)};
}

double fidelity_to_pure(const PureState& reference, const BranchEnsemble& ensemble) {
  if (reference.n_qubits() != ensemble.n_qubits()) {
    throw std::invalid_argument("fidelity_to_pure: dimension mismatch");
  }
  double fidelity = 0.0;
  for (const Branch& b : ensemble.branches()) {
    fidelity += b.weight * std::norm(inner_product(reference, b.state));
  }
  return fidelity;
}

BranchEnsemble apply_unitary(const BranchEnsemble& ensemble, const ComplexMatrix& op,
                             const std::vector<int>& targets) {
  BranchEnsemble out(ensemble.n_qubits());
  for (const Branch& b : ensemble.branches()) {
    out.add_branch(Branch{b.weight, apply_operator(b.state, op, targets), b.kraus_word});
  }
  return out;
}

BranchEnsemble discard_qubit(const BranchEnsemble& ensemble, int qubit, int outcome) {
  if (ensemble.n_qubits() == 0) {
    throw std::invalid_argument("discard_qubit: no qubits left");
  }
  BranchEnsemble out(ensemble.n_qubits() - 1);
  for (const Branch& b : ensemble.branches()) {
    out.add_branch(Branch{b.weight, remove_qubit(b.state, qubit, outcome), b.kraus_word});
  }
  return out;
}

}  // namespace adpurify::qcore

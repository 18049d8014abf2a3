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

// Test-only oracle: a dense density-matrix simulation of the purification
// circuits. It shares only the elementary matrix type with the library and
// never touches the branch-ensemble machinery it is used to check.

#pragma once

#include "adpurify/ensemble.hpp"

namespace adpurify::oracle {

qcore::ComplexMatrix density_from_ensemble(const qcore::BranchEnsemble& ensemble);

qcore::ComplexMatrix density_from_pure(const qcore::PureState& state);

/// <ref|rho|ref>
double fidelity_to_pure_dm(const qcore::PureState& reference, const qcore::ComplexMatrix& rho);

/// Embeds a single-qubit operator on `qubit` of an n-qubit register
/// (qubit 0 most significant) by Kronecker products.
qcore::ComplexMatrix embed_one_qubit(const qcore::ComplexMatrix& op, int qubit, int n_qubits);

/// Full-register CZ between two qubits, built as a diagonal matrix.
qcore::ComplexMatrix cz_matrix(int qubit_a, int qubit_b, int n_qubits);

/// rho -> sum_i K_i rho K_i^dagger with the damping Kraus pair on `qubit`.
qcore::ComplexMatrix apply_ad_superop(const qcore::ComplexMatrix& rho, double gamma, int qubit,
                                      int n_qubits);

struct OutcomeResult {
  double probability = 0.0;
  double fidelity = 0.0;
};

/// Density-matrix simulation of the one-ancilla two-qubit purification
/// circuit: prob and fidelity (to `reference`, ancilla traced out) for both
/// ancilla outcomes, plus the unpurified fidelity.
struct OneAncillaResult {
  OutcomeResult outcome0;
  OutcomeResult outcome1;
  double fidelity_before = 0.0;
};

OneAncillaResult simulate_pair_one_ancilla(const qcore::BranchEnsemble& input, double gamma,
                                           const qcore::PureState& reference);

}  // namespace adpurify::oracle

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

#include <cstdint>
#include <string>
#include <vector>

#include "adpurify/channels.hpp"
#include "adpurify/ensemble.hpp"
#include "adpurify/sampling.hpp"

namespace adpurify::protocols {

/// Result of one post-selection branch of a purification run. `purified`
/// has the ancilla qubits collapsed and removed; an empty ensemble with
/// probability 0 marks an outcome that cannot occur for the given input.
struct PostSelectionReport {
  std::string outcome_label;
  double probability = 0.0;
  qcore::BranchEnsemble purified;
  double fidelity_before = 0.0;
  double fidelity_after = 0.0;
};

/// Single-qubit purification: ancilla |+>, CZ, damping noise on the data
/// qubit, CZ, H, ancilla measurement. Returns one report per outcome;
/// post-selecting on "0" keeps exactly the no-jump branch.
std::vector<PostSelectionReport> purify_state(const qcore::PureState& psi, double gamma);

/// One ancilla coupled by CZ to both qubits of a two-qubit input, damping
/// noise applied independently to each data qubit between the CZ layers.
/// Outcome "0" retains exactly the even-parity Kraus branches, outcome "1"
/// the odd ones. Fidelities are reported against `reference`.
std::vector<PostSelectionReport> purify_pair_one_ancilla(
    const qcore::BranchEnsemble& input, double gamma, const qcore::PureState& reference);

/// Two ancillas, each coupled by CZ to its own data qubit: two independent
/// copies of the single-qubit gadget. Outcome bits equal the Kraus word.
std::vector<PostSelectionReport> purify_pair_two_ancilla(
    const qcore::BranchEnsemble& input, double gamma, const qcore::PureState& reference);

std::vector<PostSelectionReport> purify_pair_two_ancilla(const qcore::PureState& input,
                                                         double gamma);

/// Channel purification through the Choi picture: the Bell resource is
/// purified with the one-ancilla gadget and then consumed by the channel,
/// so the reports compare against the channel's ideal (pure) Choi state.
/// `unitary_channel` must be a single-Kraus (unitary) channel.
std::vector<PostSelectionReport> purify_channel(const channels::KrausChannel& unitary_channel,
                                                double gamma);

struct GammaEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
};

/// Probes the damping strength: the gadget run on |1> yields ancilla
/// outcome 1 with probability exactly gamma. Draws `shots` Bernoulli
/// samples of that outcome and returns the frequency with its binomial
/// standard error.
GammaEstimate estimate_gamma(double gamma_true, std::uint64_t shots,
                             sampling::StreamRng& rng);

/// Applies diag(1, 1/sqrt(1-gamma_hat)) and renormalizes, undoing the
/// no-jump attenuation once gamma has been estimated. gamma_hat must lie in
/// [0,1); the filter is singular at 1.
qcore::PureState compensation_filter(const qcore::PureState& state, double gamma_hat);

struct StatePurificationPrediction {
  double p0 = 0.0;
  double fidelity = 0.0;
};

/// Closed forms for the single-qubit gadget with real amplitudes:
/// p0 = a^2 + (1-g) b^2 and f = (a^2 + sqrt(1-g) b^2)^2 / p0. This is the
/// oracle the circuit simulation is tested against.
StatePurificationPrediction analytic_state_purification(double alpha, double beta,
                                                        double gamma);

}  // namespace adpurify::protocols

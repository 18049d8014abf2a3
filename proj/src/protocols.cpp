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

#include "adpurify/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace adpurify::protocols {

using channels::ADChannel;
using channels::KrausChannel;
using qcore::Branch;
using qcore::BranchEnsemble;
using qcore::ComplexMatrix;
using qcore::PureState;

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
}

void check_normalized(const PureState& state) {
  if (!state.is_normalized(1e-9)) {
    throw std::invalid_argument("input state must be normalized");
  }
}

BranchEnsemble prepend_plus_ancillas(const BranchEnsemble& input, std::size_t count) {
  PureState ancillas = PureState::plus();
  for (std::size_t i = 1; i < count; ++i) {
    ancillas = tensor(ancillas, PureState::plus());
  }
  BranchEnsemble out(input.n_qubits() + count);
  for (const Branch& b : input.branches()) {
    out.add_branch(Branch{b.weight, tensor(ancillas, b.state), b.kraus_word});
  }
  return out;
}

/// Post-selects the listed ancilla qubits on the bits of `label` and strips
/// them from the result. Returns a zero-probability report when the record
/// cannot occur.
PostSelectionReport select_outcome(const BranchEnsemble& premeasure, std::string label,
                                   const std::vector<int>& ancillas,
                                   const PureState& reference, double fidelity_before) {
  PostSelectionReport report;
  report.outcome_label = label;
  report.fidelity_before = fidelity_before;

  BranchEnsemble current = premeasure;
  double probability = 1.0;
  try {
    for (std::size_t i = 0; i < ancillas.size(); ++i) {
      const int outcome = label[i] == '1' ? 1 : 0;
      auto [p, collapsed] = post_select(current, ancillas[i], outcome);
      probability *= p;
      current = std::move(collapsed);
    }
  } catch (const std::domain_error&) {
    report.probability = 0.0;
    report.purified = BranchEnsemble(reference.n_qubits());
    report.fidelity_after = 0.0;
    return report;
  }

  // Ancillas occupy the leading positions; each removal shifts the rest down.
  for (std::size_t i = 0; i < ancillas.size(); ++i) {
    const int outcome = label[i] == '1' ? 1 : 0;
    current = discard_qubit(current, 0, outcome);
  }

  report.probability = probability;
  report.fidelity_after = fidelity_to_pure(reference, current);
  report.purified = std::move(current);
  return report;
}

BranchEnsemble apply_ad_everywhere(const BranchEnsemble& input, double gamma) {
  const ADChannel ad = channels::make_ad(gamma);
  BranchEnsemble noisy = input;
  for (std::size_t q = 0; q < input.n_qubits(); ++q) {
    noisy = apply_channel(noisy, ad.channel, static_cast<int>(q));
  }
  return noisy;
}

std::vector<std::string> outcome_labels(std::size_t ancilla_count) {
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < (std::size_t{1} << ancilla_count); ++v) {
    std::string label;
    for (std::size_t i = 0; i < ancilla_count; ++i) {
      label.push_back(((v >> (ancilla_count - 1 - i)) & 1u) ? '1' : '0');
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<PostSelectionReport> run_purification(const BranchEnsemble& input, double gamma,
                                                  const PureState& reference,
                                                  const std::vector<std::pair<int, int>>& couplings,
                                                  std::size_t ancilla_count) {
  check_gamma(gamma);
  if (reference.n_qubits() != input.n_qubits()) {
    throw std::invalid_argument("reference and input dimensions must match");
  }

  const double fidelity_before =
      fidelity_to_pure(reference, apply_ad_everywhere(input, gamma));

  BranchEnsemble staged = prepend_plus_ancillas(input, ancilla_count);
  const ComplexMatrix cz = qcore::gates::cz();
  const ComplexMatrix h = qcore::gates::hadamard();
  const ADChannel ad = channels::make_ad(gamma);

  for (const auto& [ancilla, data] : couplings) {
    staged = apply_unitary(staged, cz, {ancilla, data});
  }
  for (std::size_t q = 0; q < input.n_qubits(); ++q) {
    staged = apply_channel(staged, ad.channel, static_cast<int>(ancilla_count + q));
  }
  for (const auto& [ancilla, data] : couplings) {
    staged = apply_unitary(staged, cz, {ancilla, data});
  }
  for (std::size_t a = 0; a < ancilla_count; ++a) {
    staged = apply_unitary(staged, h, {static_cast<int>(a)});
  }

  std::vector<int> ancillas;
  for (std::size_t a = 0; a < ancilla_count; ++a) {
    ancillas.push_back(static_cast<int>(a));
  }
  std::vector<PostSelectionReport> reports;
  for (const std::string& label : outcome_labels(ancilla_count)) {
    reports.push_back(select_outcome(staged, label, ancillas, reference, fidelity_before));
  }
  return reports;
}

}  // namespace

std::vector<PostSelectionReport> purify_state(const PureState& psi, double gamma) {
  if (psi.n_qubits() != 1) {
    throw std::invalid_argument("purify_state: input must be a single qubit");
  }
  check_normalized(psi);
  // Ancilla is qubit 0, data is qubit 1.
  return run_purification(BranchEnsemble::from_pure(psi), gamma, psi, {{0, 1}}, 1);
}

std::vector<PostSelectionReport> purify_pair_one_ancilla(const BranchEnsemble& input,
                                                         double gamma,
                                                         const PureState& reference) {
  if (input.n_qubits() != 2) {
    throw std::invalid_argument("purify_pair_one_ancilla: input must hold two qubits");
  }
  // One ancilla (qubit 0) coupled to both data qubits (1 and 2).
  return run_purification(input, gamma, reference, {{0, 1}, {0, 2}}, 1);
}

std::vector<PostSelectionReport> purify_pair_two_ancilla(const BranchEnsemble& input,
                                                         double gamma,
                                                         const PureState& reference) {
  if (input.n_qubits() != 2) {
    throw std::invalid_argument("purify_pair_two_ancilla: input must hold two qubits");
  }
  // Ancilla 0 guards data qubit 2, ancilla 1 guards data qubit 3.
  return run_purification(input, gamma, reference, {{0, 2}, {1, 3}}, 2);
}

std::vector<PostSelectionReport> purify_pair_two_ancilla(const PureState& input, double gamma) {
  check_normalized(input);
  return purify_pair_two_ancilla(BranchEnsemble::from_pure(input), gamma, input);
}

std::vector<PostSelectionReport> purify_channel(const KrausChannel& unitary_channel,
                                                double gamma) {
  if (unitary_channel.ops.size() != 1) {
    throw std::invalid_argument("purify_channel: channel must be unitary (single Kraus)");
  }
  const channels::ChoiState choi = channels::choi_of(unitary_channel);
  const PureState ideal = choi.state.branches().front().state;

  // The noisy Bell resource is purified first and the channel applied to
  // its second qubit afterwards, so the channel unitary never mixes with
  // the damping branches.
  const PureState bell = PureState::bell();
  std::vector<PostSelectionReport> reports =
      purify_pair_one_ancilla(BranchEnsemble::from_pure(bell), gamma, bell);

  const ComplexMatrix& u = unitary_channel.ops.front();
  for (PostSelectionReport& report : reports) {
    BranchEnsemble routed = apply_unitary(report.purified, u, {1});
    report.fidelity_after = fidelity_to_pure(ideal, routed);
    report.purified = std::move(routed);
  }

  // The unpurified reference curve: damping on the Bell resource, then the
  // channel.
  BranchEnsemble noisy = apply_ad_everywhere(BranchEnsemble::from_pure(bell), gamma);
  const double fidelity_before = fidelity_to_pure(ideal, apply_unitary(noisy, u, {1}));
  for (PostSelectionReport& report : reports) {
    report.fidelity_before = fidelity_before;
  }
  return reports;
}

GammaEstimate estimate_gamma(double gamma_true, std::uint64_t shots,
                             sampling::StreamRng& rng) {
  check_gamma(gamma_true);
  if (shots == 0) {
    throw std::invalid_argument("estimate_gamma: shots must be positive");
  }
  // With the data qubit in |1>, the gadget reports outcome 1 with
  // probability exactly gamma.
  const std::vector<PostSelectionReport> reports =
      purify_state(PureState::basis(1, 1), gamma_true);
  const double p1 = reports[1].probability;

  std::uint64_t decays = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    if (rng.uniform01() < p1) ++decays;
  }
  const double estimate = static_cast<double>(decays) / static_cast<double>(shots);
  const double std_error =
      std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(shots));
  return GammaEstimate{estimate, std_error, shots};
}

PureState compensation_filter(const PureState& state, double gamma_hat) {
  if (state.n_qubits() != 1) {
    throw std::invalid_argument("compensation_filter: input must be a single qubit");
  }
  if (!(gamma_hat >= 0.0 && gamma_hat < 1.0)) {
    throw std::invalid_argument("compensation_filter: gamma_hat must lie in [0, 1)");
  }
  ComplexMatrix filter(2, 2);
  filter(0, 0) = qcore::Complex{1.0, 0.0};
  filter(1, 1) = qcore::Complex{1.0 / std::sqrt(1.0 - gamma_hat), 0.0};
  return apply_operator(state, filter, {0}).normalized();
}

StatePurificationPrediction analytic_state_purification(double alpha, double beta,
                                                        double gamma) {
  check_gamma(gamma);
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  if (std::abs(a2 + b2 - 1.0) > 1e-12) {
    throw std::invalid_argument("analytic_state_purification: amplitudes must be normalized");
  }
  const double p0 = a2 + (1.0 - gamma) * b2;
  const double overlap = a2 + std::sqrt(1.0 - gamma) * b2;
  const double fidelity = p0 > 0.0 ? overlap * overlap / p0 : 0.0;
  return StatePurificationPrediction{p0, fidelity};
}

}  // namespace adpurify::protocols

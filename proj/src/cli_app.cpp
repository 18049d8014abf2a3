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

#include "adpurify/cli_app.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "adpurify/experiments.hpp"
#include "adpurify/protocols.hpp"

namespace adpurify::cli {

namespace {

using json = nlohmann::ordered_json;
using experiments::SweepProtocol;

json amplitudes_to_json(const qcore::PureState& state) {
  json amps = json::array();
  for (const qcore::Complex& a : state.amplitudes()) {
    amps.push_back({a.real(), a.imag()});
  }
  return amps;
}

json matrix_to_json(const qcore::ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json ensemble_to_json(const qcore::BranchEnsemble& ensemble) {
  json branches = json::array();
  for (const qcore::Branch& b : ensemble.branches()) {
    branches.push_back({{"weight", b.weight},
                        {"kraus_word", b.kraus_word},
                        {"amplitudes", amplitudes_to_json(b.state)}});
  }
  return {{"n_qubits", ensemble.n_qubits()}, {"branches", std::move(branches)}};
}

json report_to_json(const protocols::PostSelectionReport& report) {
  return {{"outcome", report.outcome_label},
          {"probability", report.probability},
          {"fidelity_before", report.fidelity_before},
          {"fidelity_after", report.fidelity_after},
          {"purified", ensemble_to_json(report.purified)}};
}

json reports_to_json(const std::vector<protocols::PostSelectionReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) {
    out.push_back(report_to_json(r));
  }
  return out;
}

const std::map<std::string, SweepProtocol> kProtocols{
    {"state_1q", SweepProtocol::state_1q},
    {"channel_1anc", SweepProtocol::channel_1anc},
    {"pair_2anc", SweepProtocol::pair_2anc},
};

const std::map<std::string, sampling::Distribution> kDistributions{
    {"uniform_alpha", sampling::Distribution::uniform_alpha},
    {"haar_real", sampling::Distribution::haar_real},
    {"haar_complex", sampling::Distribution::haar_complex},
};

int workers_from_env() {
  const char* raw = std::getenv("ADPURIFY_THREADS");
  if (raw == nullptr) return 0;
  const int value = std::atoi(raw);
  return value > 0 ? value : 0;
}

void emit(std::ostream& out, const json& payload) { out << payload.dump(2) << '\n'; }

struct SweepOptions {
  std::string protocol = "state_1q";
  double gamma_min = 0.0;
  double gamma_max = 0.5;
  int steps = 51;
  int samples = experiments::kDefaultSamplesPerPoint;
  std::uint64_t seed = experiments::kDefaultSeed;
  std::string dist;
  std::string out_path;
};

experiments::SweepConfig build_sweep_config(const SweepOptions& options) {
  experiments::SweepConfig config =
      experiments::default_config(kProtocols.at(options.protocol), options.seed);
  config.gamma_grid = experiments::linear_grid(options.gamma_min, options.gamma_max,
                                               options.steps);
  config.samples_per_point = options.samples;
  config.workers = workers_from_env();
  if (!options.dist.empty()) {
    config.sample_spec.distribution = kDistributions.at(options.dist);
  }
  return config;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Post-selection purification of amplitude-damping noise on states and channels"};
  app.require_subcommand(1);

  // purify-state
  double ps_gamma = 0.0;
  double ps_alpha = 0.0;
  double ps_beta = -1.0;
  CLI::App* purify_state = app.add_subcommand(
      "purify-state", "Run single-qubit purification and print the per-outcome report");
  purify_state->add_option("--gamma", ps_gamma, "Damping probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  purify_state->add_option("--alpha", ps_alpha, "Amplitude of |0>")
      ->required()
      ->check(CLI::Range(-1.0, 1.0));
  purify_state->add_option("--beta", ps_beta,
                           "Amplitude of |1>; defaults to sqrt(1 - alpha^2)");

  // purify-channel
  double pc_gamma = 0.0;
  std::uint64_t pc_seed = experiments::kDefaultSeed;
  CLI::App* purify_channel = app.add_subcommand(
      "purify-channel",
      "Sample a Haar-random unitary channel and purify it through its Choi state");
  purify_channel->add_option("--gamma", pc_gamma, "Damping probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  purify_channel->add_option("--seed", pc_seed, "Channel sampling seed");

  // purify-pair
  double pp_gamma = 0.0;
  std::uint64_t pp_seed = experiments::kDefaultSeed;
  bool pp_bell = false;
  CLI::App* purify_pair = app.add_subcommand(
      "purify-pair", "Two-ancilla purification of a two-qubit state");
  purify_pair->add_option("--gamma", pp_gamma, "Damping probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  purify_pair->add_option("--seed", pp_seed, "State sampling seed");
  purify_pair->add_flag("--bell", pp_bell, "Use the Bell state instead of a random state");

  // estimate-gamma
  double eg_gamma = 0.0;
  std::uint64_t eg_shots = 100000;
  std::uint64_t eg_seed = experiments::kDefaultSeed;
  CLI::App* estimate = app.add_subcommand(
      "estimate-gamma", "Probe the damping strength with the |1>-input gadget");
  estimate->add_option("--gamma-true", eg_gamma, "True damping probability")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  estimate->add_option("--shots", eg_shots, "Number of Bernoulli shots")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--seed", eg_seed, "Shot noise seed");

  // sweep
  SweepOptions sweep_options;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo gamma sweep, CSV output");
  sweep->add_option("--protocol", sweep_options.protocol, "Protocol to sweep")
      ->check(CLI::IsMember({"state_1q", "channel_1anc", "pair_2anc"}));
  sweep->add_option("--gamma-min", sweep_options.gamma_min)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--gamma-max", sweep_options.gamma_max)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--steps", sweep_options.steps)->check(CLI::PositiveNumber);
  sweep->add_option("--samples", sweep_options.samples)->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_options.seed, "Sampling seed");
  sweep->add_option("--dist", sweep_options.dist, "Input distribution override")
      ->check(CLI::IsMember({"uniform_alpha", "haar_real", "haar_complex"}));
  sweep->add_option("--out", sweep_options.out_path, "CSV destination (default: stdout)");

  // critical-point
  SweepOptions critical_options;
  double cp_threshold = 0.99;
  CLI::App* critical = app.add_subcommand(
      "critical-point", "Locate the gamma where mean purified fidelity crosses a threshold");
  critical->add_option("--protocol", critical_options.protocol, "Protocol")
      ->check(CLI::IsMember({"state_1q", "channel_1anc", "pair_2anc"}));
  critical->add_option("--threshold", cp_threshold)->check(CLI::Range(0.0, 1.0));
  critical->add_option("--samples", critical_options.samples)->check(CLI::PositiveNumber);
  critical->add_option("--seed", critical_options.seed, "Sampling seed");

  // reproduce
  int figure = 4;
  std::string reproduce_dir = ".";
  int reproduce_samples = experiments::kDefaultSamplesPerPoint;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "Write the figure-data CSV for one of the reference sweeps");
  reproduce->add_option("--figure", figure, "Figure number")
      ->required()
      ->check(CLI::IsMember({4, 5, 6}));
  reproduce->add_option("--out", reproduce_dir, "Output directory");
  reproduce->add_option("--samples", reproduce_samples)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (purify_state->parsed()) {
      double beta = ps_beta;
      if (beta < 0.0 && purify_state->count("--beta") == 0) {
        beta = std::sqrt(std::max(0.0, 1.0 - ps_alpha * ps_alpha));
      }
      if (std::abs(ps_alpha * ps_alpha + beta * beta - 1.0) > 1e-9) {
        err << "error: alpha^2 + beta^2 must equal 1\n";
        return 1;
      }
      qcore::PureState psi(1, {qcore::Complex{ps_alpha, 0.0}, qcore::Complex{beta, 0.0}});
      emit(out, json{{"command", "purify-state"},
                     {"gamma", ps_gamma},
                     {"alpha", ps_alpha},
                     {"beta", beta},
                     {"reports", reports_to_json(protocols::purify_state(psi, ps_gamma))}});
      return 0;
    }

    if (purify_channel->parsed()) {
      sampling::SampleSpec spec{sampling::SampleKind::unitary_channel,
                                sampling::Distribution::haar_complex, pc_seed};
      const channels::KrausChannel channel = sampling::sample_unitary_channel(spec, 0);
      emit(out, json{{"command", "purify-channel"},
                     {"gamma", pc_gamma},
                     {"seed", pc_seed},
                     {"unitary", matrix_to_json(channel.ops.front())},
                     {"reports", reports_to_json(protocols::purify_channel(channel, pc_gamma))}});
      return 0;
    }

    if (purify_pair->parsed()) {
      qcore::PureState input = pp_bell
          ? qcore::PureState::bell()
          : sampling::sample_state(sampling::SampleSpec{sampling::SampleKind::two_qubit_state,
                                                        sampling::Distribution::haar_real,
                                                        pp_seed},
                                   0);
      emit(out, json{{"command", "purify-pair"},
                     {"gamma", pp_gamma},
                     {"seed", pp_seed},
                     {"bell", pp_bell},
                     {"input", amplitudes_to_json(input)},
                     {"reports",
                      reports_to_json(protocols::purify_pair_two_ancilla(input, pp_gamma))}});
      return 0;
    }

    if (estimate->parsed()) {
      sampling::StreamRng rng(eg_seed, 0);
      const protocols::GammaEstimate result =
          protocols::estimate_gamma(eg_gamma, eg_shots, rng);
      emit(out, json{{"command", "estimate-gamma"},
                     {"gamma_true", eg_gamma},
                     {"shots", result.shots},
                     {"seed", eg_seed},
                     {"estimate", result.estimate},
                     {"std_error", result.std_error}});
      return 0;
    }

    if (sweep->parsed()) {
      if (!(sweep_options.gamma_min < sweep_options.gamma_max) && sweep_options.steps > 1) {
        err << "error: --gamma-min must be below --gamma-max\n";
        return 1;
      }
      const experiments::SweepConfig config = build_sweep_config(sweep_options);
      const std::vector<experiments::SweepRow> rows = experiments::run_sweep(config);
      if (sweep_options.out_path.empty()) {
        experiments::write_rows(rows, out);
      } else {
        std::ofstream file(sweep_options.out_path, std::ios::binary);
        if (!file) {
          err << "error: cannot open " << sweep_options.out_path << " for writing\n";
          return 1;
        }
        const std::size_t bytes = experiments::write_rows(rows, file);
        emit(out, json{{"command", "sweep"},
                       {"protocol", sweep_options.protocol},
                       {"seed", sweep_options.seed},
                       {"rows", rows.size()},
                       {"bytes", bytes},
                       {"out", sweep_options.out_path}});
      }
      return 0;
    }

    if (critical->parsed()) {
      experiments::SweepConfig config =
          experiments::default_config(kProtocols.at(critical_options.protocol),
                                      critical_options.seed);
      config.samples_per_point = critical_options.samples;
      config.workers = workers_from_env();
      const double gamma_star = experiments::critical_gamma(config, cp_threshold);
      emit(out, json{{"command", "critical-point"},
                     {"protocol", critical_options.protocol},
                     {"threshold", cp_threshold},
                     {"samples", critical_options.samples},
                     {"seed", critical_options.seed},
                     {"gamma_star", gamma_star}});
      return 0;
    }

    if (reproduce->parsed()) {
      const SweepProtocol protocol = figure == 4   ? SweepProtocol::state_1q
                                     : figure == 5 ? SweepProtocol::channel_1anc
                                                   : SweepProtocol::pair_2anc;
      experiments::SweepConfig config = experiments::default_config(protocol);
      config.samples_per_point = reproduce_samples;
      config.workers = workers_from_env();
      const std::vector<experiments::SweepRow> rows = experiments::run_sweep(config);

      std::filesystem::create_directories(reproduce_dir);
      const std::filesystem::path path =
          std::filesystem::path(reproduce_dir) / ("figure" + std::to_string(figure) + ".csv");
      std::ofstream file(path, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << path.string() << " for writing\n";
        return 1;
      }
      const std::size_t bytes = experiments::write_rows(rows, file);
      emit(out, json{{"command", "reproduce"},
                     {"figure", figure},
                     {"protocol", experiments::protocol_name(protocol)},
                     {"samples", reproduce_samples},
                     {"seed", experiments::kDefaultSeed},
                     {"rows", rows.size()},
                     {"bytes", bytes},
                     {"out", path.string()}});
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  err << "error: no subcommand selected\n";
  return 1;
}

}  // namespace adpurify::cli

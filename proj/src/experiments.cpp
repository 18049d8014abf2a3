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

#include "adpurify/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "adpurify/protocols.hpp"

namespace adpurify::experiments {

using protocols::PostSelectionReport;
using qcore::BranchEnsemble;
using qcore::PureState;

std::string protocol_name(SweepProtocol protocol) {
  switch (protocol) {
    case SweepProtocol::state_1q: return "state_1q";
    case SweepProtocol::channel_1anc: return "channel_1anc";
    case SweepProtocol::pair_2anc: return "pair_2anc";
  }
  return "unknown";
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) {
    throw std::invalid_argument("linear_grid: need at least one step");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < steps; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return grid;
}

SweepConfig default_config(SweepProtocol protocol, std::uint64_t seed) {
  SweepConfig config;
  config.protocol = protocol;
  config.gamma_grid = linear_grid(0.0, 0.5, 51);
  config.samples_per_point = kDefaultSamplesPerPoint;
  config.sample_spec.seed = seed;
  switch (protocol) {
    case SweepProtocol::state_1q:
      config.sample_spec.kind = sampling::SampleKind::single_qubit_state;
      config.sample_spec.distribution = sampling::Distribution::uniform_alpha;
      config.post_select_label = "0";
      break;
    case SweepProtocol::channel_1anc:
      config.sample_spec.kind = sampling::SampleKind::unitary_channel;
      config.sample_spec.distribution = sampling::Distribution::haar_complex;
      config.post_select_label = "0";
      break;
    case SweepProtocol::pair_2anc:
      config.sample_spec.kind = sampling::SampleKind::two_qubit_state;
      config.sample_spec.distribution = sampling::Distribution::haar_real;
      config.post_select_label = "00";
      break;
  }
  return config;
}

namespace {

struct SampleResult {
  double fid_noisy = 0.0;
  double fid_purified = 0.0;
  double p_success = 0.0;
};

struct PreparedInputs {
  std::vector<PureState> states;
  std::vector<channels::KrausChannel> unitaries;
};

PreparedInputs prepare_inputs(const SweepConfig& config) {
  PreparedInputs inputs;
  const int n = config.samples_per_point;
  if (config.protocol == SweepProtocol::channel_1anc) {
    inputs.unitaries.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      inputs.unitaries.push_back(
          sampling::sample_unitary_channel(config.sample_spec, static_cast<std::uint64_t>(j)));
    }
  } else {
    inputs.states.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      inputs.states.push_back(
          sampling::sample_state(config.sample_spec, static_cast<std::uint64_t>(j)));
    }
  }
  return inputs;
}

const PostSelectionReport& find_report(const std::vector<PostSelectionReport>& reports,
                                       const std::string& label) {
  for (const PostSelectionReport& r : reports) {
    if (r.outcome_label == label) return r;
  }
  throw std::invalid_argument("unknown post-selection label: " + label);
}

SampleResult evaluate_sample(const SweepConfig& config, const PreparedInputs& inputs,
                             double gamma, int j) {
  std::vector<PostSelectionReport> reports;
  switch (config.protocol) {
    case SweepProtocol::state_1q:
      reports = protocols::purify_state(inputs.states[static_cast<std::size_t>(j)], gamma);
      break;
    case SweepProtocol::channel_1anc:
      reports =
          protocols::purify_channel(inputs.unitaries[static_cast<std::size_t>(j)], gamma);
      break;
    case SweepProtocol::pair_2anc:
      reports =
          protocols::purify_pair_two_ancilla(inputs.states[static_cast<std::size_t>(j)], gamma);
      break;
  }
  const PostSelectionReport& r = find_report(reports, config.post_select_label);
  return SampleResult{r.fidelity_before, r.fidelity_after, r.probability};
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Fills one result per sample index. Partitioning by index keeps the
/// output independent of the worker count.
std::vector<SampleResult> evaluate_all(const SweepConfig& config, const PreparedInputs& inputs,
                                       double gamma) {
  const int n = config.samples_per_point;
  std::vector<SampleResult> results(static_cast<std::size_t>(n));
  const int workers = std::min(resolve_workers(config.workers), std::max(n, 1));
  if (workers <= 1) {
    for (int j = 0; j < n; ++j) {
      results[static_cast<std::size_t>(j)] = evaluate_sample(config, inputs, gamma, j);
    }
    return results;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int lo = n * w / workers;
    const int hi = n * (w + 1) / workers;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (int j = lo; j < hi; ++j) {
          results[static_cast<std::size_t>(j)] = evaluate_sample(config, inputs, gamma, j);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Fixed-order accumulation so aggregation never depends on thread timing.
MeanSe aggregate(const std::vector<SampleResult>& results, double SampleResult::* field) {
  const std::size_t n = results.size();
  double sum = 0.0;
  for (const SampleResult& r : results) {
    sum += r.*field;
  }
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const SampleResult& r : results) {
    const double d = r.*field - mean;
    sq += d * d;
  }
  const double population_sd = std::sqrt(sq / static_cast<double>(n));
  return MeanSe{mean, population_sd / std::sqrt(static_cast<double>(n))};
}

SweepRow make_row(const SweepConfig& config, const PreparedInputs& inputs, double gamma) {
  const std::vector<SampleResult> results = evaluate_all(config, inputs, gamma);
  const MeanSe noisy = aggregate(results, &SampleResult::fid_noisy);
  const MeanSe purified = aggregate(results, &SampleResult::fid_purified);
  const MeanSe success = aggregate(results, &SampleResult::p_success);
  SweepRow row;
  row.gamma = gamma;
  row.n = static_cast<long>(results.size());
  row.fid_noisy_mean = noisy.mean;
  row.fid_noisy_se = noisy.se;
  row.fid_purified_mean = purified.mean;
  row.fid_purified_se = purified.se;
  row.p_success_mean = success.mean;
  row.p_success_se = success.se;
  return row;
}

void check_config(const SweepConfig& config) {
  if (config.gamma_grid.empty()) {
    throw std::invalid_argument("run_sweep: empty gamma grid");
  }
  for (std::size_t i = 0; i < config.gamma_grid.size(); ++i) {
    const double g = config.gamma_grid[i];
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::invalid_argument("run_sweep: gamma grid must lie in [0, 1]");
    }
    if (i > 0 && !(config.gamma_grid[i - 1] < g)) {
      throw std::invalid_argument("run_sweep: gamma grid must be strictly increasing");
    }
  }
  if (config.samples_per_point < 1) {
    throw std::invalid_argument("run_sweep: need at least one sample per point");
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  check_config(config);
  const PreparedInputs inputs = prepare_inputs(config);
  std::vector<SweepRow> rows;
  rows.reserve(config.gamma_grid.size());
  for (double gamma : config.gamma_grid) {
    rows.push_back(make_row(config, inputs, gamma));
  }
  return rows;
}

SweepRow evaluate_point(const SweepConfig& config, double gamma) {
  if (config.samples_per_point < 1) {
    throw std::invalid_argument("evaluate_point: need at least one sample");
  }
  const PreparedInputs inputs = prepare_inputs(config);
  return make_row(config, inputs, gamma);
}

double critical_gamma(const SweepConfig& config, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("critical_gamma: threshold must lie in (0, 1)");
  }
  if (config.samples_per_point < 1) {
    throw std::invalid_argument("critical_gamma: need at least one sample");
  }
  // Common random numbers: one sample set shared by every probe.
  const PreparedInputs inputs = prepare_inputs(config);
  const auto mean_fidelity = [&](double gamma) {
    return make_row(config, inputs, gamma).fid_purified_mean;
  };

  if (!(mean_fidelity(0.0) > threshold)) {
    throw std::domain_error("critical_gamma: fidelity at gamma = 0 does not exceed threshold");
  }
  if (mean_fidelity(1.0) >= threshold) {
    throw std::domain_error("critical_gamma: no crossing in [0, 1]");
  }

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    if (mean_fidelity(mid) >= threshold) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::size_t write_rows(const std::vector<SweepRow>& rows, std::ostream& out) {
  if (rows.empty()) {
    throw std::invalid_argument("write_rows: no rows to write");
  }
  static constexpr char kHeader[] =
      "gamma,n,fid_noisy_mean,fid_noisy_se,fid_purified_mean,fid_purified_se,"
      "p_success_mean,p_success_se";
  std::size_t bytes = 0;
  const auto emit = [&](const std::string& line) {
    out << line << '\n';
    bytes += line.size() + 1;
  };
  emit(kHeader);
  char buffer[256];
  for (const SweepRow& row : rows) {
    const int written = std::snprintf(
        buffer, sizeof buffer, "%.12f,%ld,%.12f,%.12f,%.12f,%.12f,%.12f,%.12f", row.gamma,
        row.n, row.fid_noisy_mean, row.fid_noisy_se, row.fid_purified_mean,
        row.fid_purified_se, row.p_success_mean, row.p_success_se);
    if (written < 0 || static_cast<std::size_t>(written) >= sizeof buffer) {
      throw std::runtime_error("write_rows: row formatting failed");
    }
    emit(std::string(buffer, static_cast<std::size_t>(written)));
  }
  if (!out) {
    throw std::runtime_error("write_rows: sink failure");
  }
  return bytes;
}

}  // namespace adpurify::experiments

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
#include <iosfwd>
#include <string>
#include <vector>

#include "adpurify/sampling.hpp"

namespace adpurify::experiments {

/// Fixed default seed for reproducible runs; never wall-clock derived.
inline constexpr std::uint64_t kDefaultSeed = 42;

inline constexpr int kDefaultSamplesPerPoint = 1000;

enum class SweepProtocol { state_1q, channel_1anc, pair_2anc };

std::string protocol_name(SweepProtocol protocol);

struct SweepConfig {
  SweepProtocol protocol = SweepProtocol::state_1q;
  std::vector<double> gamma_grid;
  int samples_per_point = kDefaultSamplesPerPoint;
  sampling::SampleSpec sample_spec;
  std::string post_select_label = "0";
  /// 0 means use all available hardware parallelism. Results are identical
  /// for every worker count: per-sample values are keyed by (seed, index)
  /// and aggregation always runs in index order.
  int workers = 0;
};

/// Config with the conventional defaults for a protocol: 51 evenly spaced
/// gamma values on [0, 0.5], 1000 samples per point, and the protocol's
/// default input distribution.
SweepConfig default_config(SweepProtocol protocol, std::uint64_t seed = kDefaultSeed);

std::vector<double> linear_grid(double lo, double hi, int steps);

/// One gamma grid point: means and population-SD/sqrt(n) standard errors of
/// the unpurified fidelity, the post-selected fidelity, and the favorable
/// outcome probability over the sampled inputs.
struct SweepRow {
  double gamma = 0.0;
  long n = 0;
  double fid_noisy_mean = 0.0;
  double fid_noisy_se = 0.0;
  double fid_purified_mean = 0.0;
  double fid_purified_se = 0.0;
  double p_success_mean = 0.0;
  double p_success_se = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Evaluates a single grid point with the config's sample set.
SweepRow evaluate_point(const SweepConfig& config, double gamma);

/// Bisection for the gamma where the mean purified fidelity crosses
/// `threshold`, using common random numbers (the same sample set at every
/// probe) until the bracket width is at most 1e-3.
double critical_gamma(const SweepConfig& config, double threshold);

/// Writes the CSV (exact header `gamma,n,fid_noisy_mean,...`), one row per
/// grid point, 12-digit fixed-point fields, LF line endings. Returns the
/// byte count.
std::size_t write_rows(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace adpurify::experiments

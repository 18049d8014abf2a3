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

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "adpurify/experiments.hpp"

using namespace adpurify;
using experiments::SweepConfig;
using experiments::SweepProtocol;
using experiments::SweepRow;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  experiments::write_rows(rows, out);
  return out.str();
}

// Parse-back oracle for the CSV round-trip checks.
std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line ==
          "gamma,n,fid_noisy_mean,fid_noisy_se,fid_purified_mean,fid_purified_se,"
          "p_success_mean,p_success_se");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> parts;
    while (std::getline(fields, field, ',')) {
      parts.push_back(field);
    }
    REQUIRE(parts.size() == 8);
    SweepRow row;
    row.gamma = std::stod(parts[0]);
    row.n = std::stol(parts[1]);
    row.fid_noisy_mean = std::stod(parts[2]);
    row.fid_noisy_se = std::stod(parts[3]);
    row.fid_purified_mean = std::stod(parts[4]);
    row.fid_purified_se = std::stod(parts[5]);
    row.p_success_mean = std::stod(parts[6]);
    row.p_success_se = std::stod(parts[7]);
    rows.push_back(row);
  }
  return rows;
}

SweepConfig small_config(SweepProtocol protocol, int samples, std::vector<double> grid) {
  SweepConfig config = experiments::default_config(protocol);
  config.samples_per_point = samples;
  config.gamma_grid = std::move(grid);
  return config;
}

}  // namespace

TEST_CASE("run_sweep: gamma 0 row is ideal to double rounding") {
  for (SweepProtocol protocol :
       {SweepProtocol::state_1q, SweepProtocol::channel_1anc, SweepProtocol::pair_2anc}) {
    SweepConfig config = small_config(protocol, 50, {0.0});
    const auto rows = experiments::run_sweep(config);
    REQUIRE(rows.size() == 1);
    CHECK(near(rows[0].fid_noisy_mean, 1.0, 1e-14));
    CHECK(near(rows[0].fid_purified_mean, 1.0, 1e-14));
    CHECK(near(rows[0].p_success_mean, 1.0, 1e-14));
    CHECK(rows[0].fid_purified_se <= 1e-15);
  }
}

TEST_CASE("run_sweep: invalid configs raise") {
  SweepConfig config = experiments::default_config(SweepProtocol::state_1q);
  config.gamma_grid = {};
  CHECK_THROWS_AS(experiments::run_sweep(config), std::invalid_argument);
  config.gamma_grid = {0.2, 0.1};
  CHECK_THROWS_AS(experiments::run_sweep(config), std::invalid_argument);
  config.gamma_grid = {0.2, 1.2};
  CHECK_THROWS_AS(experiments::run_sweep(config), std::invalid_argument);
  config.gamma_grid = {0.2};
  config.samples_per_point = 0;
  CHECK_THROWS_AS(experiments::run_sweep(config), std::invalid_argument);
}

TEST_CASE("run_sweep: identical bytes for repeated runs and any worker count") {
  SweepConfig config =
      small_config(SweepProtocol::pair_2anc, 60, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5});
  config.workers = 1;
  const std::string serial = rows_to_csv(experiments::run_sweep(config));
  const std::string serial_again = rows_to_csv(experiments::run_sweep(config));
  CHECK(serial == serial_again);
  config.workers = 7;
  const std::string parallel = rows_to_csv(experiments::run_sweep(config));
  CHECK(serial == parallel);
}

TEST_CASE("run_sweep: purified dominates noisy and decays slowly") {
  SweepConfig config =
      small_config(SweepProtocol::state_1q, 300, {0.05, 0.15, 0.25, 0.35, 0.45});
  const auto rows = experiments::run_sweep(config);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].fid_purified_mean >=
          rows[i].fid_noisy_mean - rows[i].fid_noisy_se);
    if (i > 0) {
      CHECK(rows[i].fid_purified_mean <=
            rows[i - 1].fid_purified_mean + 3.0 * rows[i].fid_purified_se);
    }
  }
}

TEST_CASE("write_rows: exact header and first field format") {
  SweepRow row;
  row.gamma = 0.0;
  row.n = 10;
  const std::string csv = rows_to_csv({row});
  CHECK(csv.rfind("gamma,n,fid_noisy_mean,fid_noisy_se,fid_purified_mean,"
                  "fid_purified_se,p_success_mean,p_success_se\n0.000000000000,10,",
                  0) == 0);
  CHECK(csv.find("\r") == std::string::npos);
}

TEST_CASE("write_rows: empty input raises") {
  std::ostringstream out;
  CHECK_THROWS_AS(experiments::write_rows({}, out), std::invalid_argument);
}

TEST_CASE("write_rows: reported byte count matches the stream") {
  SweepConfig config = small_config(SweepProtocol::state_1q, 20, {0.0, 0.25, 0.5});
  const auto rows = experiments::run_sweep(config);
  std::ostringstream out;
  const std::size_t bytes = experiments::write_rows(rows, out);
  CHECK(bytes == out.str().size());
}

TEST_CASE("write_rows: parse-back round-trips") {
  SweepConfig config = small_config(SweepProtocol::pair_2anc, 40, {0.0, 0.2, 0.4});
  const auto rows = experiments::run_sweep(config);
  const std::string csv = rows_to_csv(rows);
  const auto parsed = parse_csv(csv);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].n == rows[i].n);
    CHECK(near(parsed[i].gamma, rows[i].gamma, 5e-13));
    CHECK(near(parsed[i].fid_purified_mean, rows[i].fid_purified_mean, 5e-13));
    CHECK(near(parsed[i].p_success_se, rows[i].p_success_se, 5e-13));
  }
  // Rewriting the parsed rows reproduces the bytes.
  CHECK(rows_to_csv(parsed) == csv);
}

TEST_CASE("critical_gamma: single-qubit crossing near 0.418") {
  SweepConfig config = experiments::default_config(SweepProtocol::state_1q);
  config.samples_per_point = 400;
  const double gamma_star = experiments::critical_gamma(config, 0.99);
  CHECK(gamma_star >= 0.39);
  CHECK(gamma_star <= 0.45);
}

TEST_CASE("critical_gamma: rejects thresholds without a crossing") {
  SweepConfig config = experiments::default_config(SweepProtocol::state_1q);
  config.samples_per_point = 100;
  CHECK_THROWS_AS(experiments::critical_gamma(config, 0.2), std::domain_error);
  CHECK_THROWS_AS(experiments::critical_gamma(config, 1.5), std::invalid_argument);
}

TEST_CASE("evaluate_point: matches the matching sweep row") {
  SweepConfig config = small_config(SweepProtocol::state_1q, 50, {0.3});
  const auto rows = experiments::run_sweep(config);
  const auto row = experiments::evaluate_point(config, 0.3);
  CHECK(row.fid_purified_mean == rows[0].fid_purified_mean);
  CHECK(row.p_success_mean == rows[0].p_success_mean);
}

TEST_CASE("run_sweep: single-qubit success slope is minus the mean excited weight") {
  SweepConfig config =
      small_config(SweepProtocol::state_1q, 500, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5});
  const auto rows = experiments::run_sweep(config);
  const double slope =
      (rows.back().p_success_mean - rows.front().p_success_mean) / 0.5;
  CHECK(near(slope, -2.0 / 3.0, 0.04));
}

TEST_CASE("linear_grid: endpoints and spacing") {
  const auto grid = experiments::linear_grid(0.0, 0.5, 51);
  REQUIRE(grid.size() == 51);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 0.5);
  CHECK(near(grid[1] - grid[0], 0.01, 1e-15));
}

// Copyright 2026 The nball Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// RIPS: the mean of r12 . r23 over independent point triples, compared with
// its exact value. A biased or correlated stream shifts the mean.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nball/rng.hpp"
#include "nball/sampling.hpp"

namespace nball {

/// -n R^2 / (n + 2)
double rips_exact_uniform(int dim, double radius);
/// -n sigma^2
double rips_exact_gaussian(int dim, double sigma);

enum class RipsDensity { Uniform, Gaussian };

/// Rejection below 8 dimensions, polar from 8 up (acceptance ~ 2% at n = 8).
Mapping default_mapping(int dim);

struct RipsConfig {
  int dim = 3;
  RipsDensity density = RipsDensity::Uniform;
  double radius = 1.0;
  double sigma = 1.0;
  std::uint64_t n_triples = 1'000'000;
  std::optional<Mapping> mapping;  // unset: default_mapping(dim)
  double z_threshold = 4.0;
  /// Shard k of `shards` draws from engine.substream(k + 1); one shard uses
  /// the engine itself. Results depend on shards, never on jobs.
  int shards = 1;
  int jobs = 1;
};

struct RipsReport {
  int dim = 0;
  std::string geometry;   // "uniform R=1" / "gaussian sigma=1"
  std::uint64_t n_triples = 0;
  double empirical_mean = 0.0;
  double stderr_mean = 0.0;
  double exact_value = 0.0;
  double z_score = 0.0;
  double z_threshold = 4.0;
  bool pass = false;
  std::string rng;        // engine descriptor
  std::string algorithm;
  std::uint64_t seed = 0;
  double alpha = 0.0;     // NWS only
  std::string mapping;
  int shards = 1;
  std::uint64_t variates_consumed = 0;
  std::string error;      // nonempty when the run aborted
  std::string error_kind; // "stream_exhausted", "stream_defect", ...

  const char* verdict() const { return pass ? "pass" : "fail"; }
  std::string to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Validates the config (ConfigError), then runs. Sampler and stream errors
/// are recorded in the report with verdict fail rather than thrown.
RipsReport rips_run(const RipsConfig& config, const rng::Engine& engine);

struct RipsTable {
  std::vector<std::string> rows;       // generator labels
  std::vector<int> dims;
  std::vector<std::vector<RipsReport>> cells;  // [row][dim]
  double radius = 1.0;

  /// Fixed-width text mirroring the published comparison, 5 decimals.
  std::string format() const;
  std::string to_json() const;
  std::string to_csv() const;
  bool all_pass() const;
};

/// One row per engine, one column per dimension, plus the exact row.
RipsTable table1_harness(const std::vector<rng::Engine>& engines, const std::vector<int>& dims,
                         std::uint64_t n_triples, std::optional<Mapping> mapping = std::nullopt,
                         int jobs = 1, double radius = 1.0);

/// "-.60037" style: 5 decimals, no leading zero.
std::string format_table_value(double v);

}  // namespace nball

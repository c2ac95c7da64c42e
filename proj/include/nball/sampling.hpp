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

// Point samplers over the n-ball, pair-distance histograms and
// Kolmogorov-Smirnov goodness of fit.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nball/density.hpp"
#include "nball/rng.hpp"

namespace nball {

/// How uniforms become uniform ball points. Rejection keeps the raw stream
/// visible to the statistic; polar costs O(n) variates regardless of n.
enum class Mapping { Rejection, Polar };

const char* mapping_name(Mapping m);
Mapping parse_mapping(const std::string& name);  // throws ConfigError

/// Rejection tries per point before the stream is declared defective.
inline constexpr std::uint64_t kRejectionCap = 1'000'000;

/// Standard normals by Box-Muller. Consumes 2 * ceil(k / 2) uniforms for k
/// outputs; the spare of an odd count is discarded so accounting stays fixed.
void fill_normals(rng::Engine& engine, std::span<double> out);

/// Uniform point in the ball into `out` (size n).
/// Rejection: n uniforms per try in [-R, R]^n, StreamDefect after kRejectionCap.
/// Polar: 2 ceil(n/2) uniforms for the direction, one for R U^(1/n).
void sample_ball_uniform(const BallGeometry& geom, rng::Engine& engine, Mapping mapping,
                         std::span<double> out);
std::vector<double> sample_ball_uniform(const BallGeometry& geom, rng::Engine& engine,
                                        Mapping mapping);

/// Uniform direction on the unit sphere S^(n-1) (n = 1: a random sign).
void sample_direction(int dim, rng::Engine& engine, std::span<double> out);

/// Draws points with probability proportional to a DensityModel.
///   Uniform       per `mapping`
///   Gaussian      sigma * normals; with truncate, redrawn until |x| <= R
///   RadialShells  shell by mass, radius by inverse CDF in the shell, polar direction
///   RadialProfile / General  rejection against a bound: the supplied one, or
///                 1.5 x the maximum over 2^16 fixed-seed scan points. A draw
///                 above the bound raises ConfigError.
class DensitySampler {
 public:
  DensitySampler(const BallGeometry& geom, DensityModel density,
                 Mapping mapping = Mapping::Rejection);

  void operator()(rng::Engine& engine, std::span<double> out) const;
  std::vector<double> operator()(rng::Engine& engine) const;

  double bound() const { return bound_; }
  bool bound_scanned() const { return scanned_; }
  const BallGeometry& geometry() const { return geom_; }
  const DensityModel& density() const { return density_; }
  /// Upper end of the distance range: 2R, or 8 sigma for untruncated Gaussians.
  double distance_range() const;

 private:
  BallGeometry geom_;
  DensityModel density_;
  Mapping mapping_;
  double bound_ = 0.0;
  bool scanned_ = false;
  std::vector<double> shell_cdf_;  // cumulative mass per shell
};

// ---- histograms ------------------------------------------------------------

struct HistogramEstimate {
  std::vector<double> bin_edges;  // bins + 1 ascending edges
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;        // sum of counts
  std::uint64_t overflow = 0;     // distances beyond the last edge (not in total)

  /// CSV with header "bin_lo,bin_hi,count".
  std::string to_csv() const;
};

/// `pairs` independent pair distances from `sampler`.
std::vector<double> pair_distances(const DensitySampler& sampler, std::uint64_t pairs,
                                   rng::Engine& engine);

/// Histogram of pair distances over [0, sampler.distance_range()].
HistogramEstimate pair_distance_histogram(const DensitySampler& sampler, std::uint64_t pairs,
                                          int bins, rng::Engine& engine);

/// Histogram of given values over [lo, hi] with `bins` equal bins.
HistogramEstimate make_histogram(std::span<const double> values, double lo, double hi, int bins);

// ---- Kolmogorov-Smirnov ----------------------------------------------------

struct KsResult {
  double statistic = 0.0;  // D_N
  std::uint64_t n_eff = 0;
  double alpha = 0.05;
  double critical = 0.0;   // c(alpha) / sqrt(n_eff)
  bool pass = false;
};

/// c(alpha): 1.628 at 0.01, 1.358 at 0.05, asymptotic sqrt(-ln(alpha/2)/2) otherwise.
double ks_coefficient(double alpha);

/// One-sample test against a continuous CDF. Needs >= 1000 values, not all equal.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 double alpha = 0.05);

/// Binned variant: the statistic is taken at bin edges only.
KsResult ks_test(const HistogramEstimate& hist, const std::function<double(double)>& cdf,
                 double alpha = 0.05);

/// Two-sample test, critical value c(alpha) sqrt((n + m) / (n m)).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                       double alpha = 0.05);

}  // namespace nball

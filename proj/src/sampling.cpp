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

#include "nball/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nball/errors.hpp"

namespace nball {

const char* mapping_name(Mapping m) { return m == Mapping::Polar ? "polar" : "rejection"; }

Mapping parse_mapping(const std::string& name) {
  if (name == "rejection") return Mapping::Rejection;
  if (name == "polar") return Mapping::Polar;
  throw ConfigError("unknown point mapping '" + name + "' (expected rejection or polar)");
}

void fill_normals(rng::Engine& engine, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); i += 2) {
    // 1 - u lies in (0, 1] for every engine, so the log is finite.
    const double u1 = 1.0 - engine.next_uniform();
    const double u2 = engine.next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    out[i] = r * std::cos(a);
    if (i + 1 < out.size()) out[i + 1] = r * std::sin(a);
  }
}

void sample_direction(int dim, rng::Engine& engine, std::span<double> out) {
  if (dim == 1) {
    out[0] = engine.next_uniform() < 0.5 ? -1.0 : 1.0;
    return;
  }
  // A zero-length normal vector needs both radii to vanish, which requires
  // u1 == 1 exactly; redraw rather than divide by zero.
  for (;;) {
    fill_normals(engine, out.first(dim));
    double norm2 = 0.0;
    for (int i = 0; i < dim; ++i) norm2 += out[i] * out[i];
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (int i = 0; i < dim; ++i) out[i] *= inv;
      return;
    }
  }
}

void sample_ball_uniform(const BallGeometry& geom, rng::Engine& engine, Mapping mapping,
                         std::span<double> out) {
  const int n = geom.dim;
  const double radius = geom.radius;
  if (mapping == Mapping::Polar) {
    sample_direction(n, engine, out);
    const double r = radius * std::pow(engine.next_uniform(), 1.0 / n);
    for (int i = 0; i < n; ++i) out[i] *= r;
    return;
  }
  const double r2max = radius * radius;
  for (std::uint64_t tries = 0; tries < kRejectionCap; ++tries) {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      out[i] = radius * (2.0 * engine.next_uniform() - 1.0);
      r2 += out[i] * out[i];
    }
    if (r2 <= r2max) return;
  }
  throw StreamDefect("rejection sampling hit " + std::to_string(kRejectionCap) +
                     " tries for one point in " + std::to_string(n) +
                     " dimensions; the stream does not fill the cube");
}

std::vector<double> sample_ball_uniform(const BallGeometry& geom, rng::Engine& engine,
                                        Mapping mapping) {
  std::vector<double> out(geom.dim);
  sample_ball_uniform(geom, engine, mapping, out);
  return out;
}

// ---- density sampler -------------------------------------------------------

namespace {

constexpr int kScanPoints = 1 << 16;
constexpr double kScanMargin = 1.5;
constexpr std::uint32_t kScanSeed = 20231;

}  // namespace

DensitySampler::DensitySampler(const BallGeometry& geom, DensityModel density, Mapping mapping)
    : geom_(geom), density_(std::move(density)), mapping_(mapping) {
  if (const auto* g = std::get_if<density::Gaussian>(&density_)) {
    if (geom_.dim < 1) throw ConfigError("dimension must be >= 1");
    if (!(g->sigma > 0.0)) throw ConfigError("gaussian sigma must be positive");
    if (g->truncate && !geom_.bounded()) {
      throw ConfigError("truncated gaussian needs a finite radius");
    }
    return;
  }
  validate(density_, geom_);
  if (!geom_.bounded()) throw ConfigError("this density needs a finite radius");

  if (const auto* s = std::get_if<density::RadialShells>(&density_)) {
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < s->breakpoints.size(); ++i) {
      const double b = s->breakpoints[i];
      acc += s->densities[i] * (std::pow(b, geom_.dim) - std::pow(prev, geom_.dim));
      shell_cdf_.push_back(acc);
      prev = b;
    }
    for (double& c : shell_cdf_) c /= acc;
    return;
  }

  double supplied = 0.0;
  if (const auto* p = std::get_if<density::RadialProfile>(&density_)) supplied = p->bound;
  if (const auto* g = std::get_if<density::General>(&density_)) supplied = g->bound;
  if (std::holds_alternative<density::Uniform>(density_)) return;

  if (supplied > 0.0) {
    bound_ = supplied;
    return;
  }
  // Scan for a bound with a private fixed-seed stream so the caller's stream
  // is untouched.
  double peak = 0.0;
  if (const auto* p = std::get_if<density::RadialProfile>(&density_)) {
    for (int i = 0; i <= kScanPoints; ++i) {
      peak = std::max(peak, p->rho(geom_.radius * i / kScanPoints));
    }
  } else {
    rng::Engine scan = rng::make_engine(rng::Algorithm::Ran0, kScanSeed);
    std::vector<double> x(geom_.dim);
    for (int i = 0; i < kScanPoints; ++i) {
      sample_ball_uniform(geom_, scan, Mapping::Polar, x);
      peak = std::max(peak, point_value(density_, geom_, x));
    }
  }
  if (!(peak > 0.0)) {
    throw DegenerateDensity("density bound scan found no positive value in the ball");
  }
  bound_ = kScanMargin * peak;
  scanned_ = true;
}

double DensitySampler::distance_range() const {
  if (const auto* g = std::get_if<density::Gaussian>(&density_)) {
    if (!g->truncate) return 8.0 * g->sigma;
    return std::min(2.0 * geom_.radius, 8.0 * g->sigma);
  }
  return 2.0 * geom_.radius;
}

void DensitySampler::operator()(rng::Engine& engine, std::span<double> out) const {
  const int n = geom_.dim;
  if (const auto* g = std::get_if<density::Gaussian>(&density_)) {
    const double r2max = geom_.radius * geom_.radius;
    for (std::uint64_t tries = 0; tries < kRejectionCap; ++tries) {
      fill_normals(engine, out.first(n));
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        out[i] *= g->sigma;
        r2 += out[i] * out[i];
      }
      if (!g->truncate || r2 <= r2max) return;
    }
    throw StreamDefect("truncated gaussian sampling hit the rejection cap");
  }
  if (std::holds_alternative<density::Uniform>(density_)) {
    sample_ball_uniform(geom_, engine, mapping_, out);
    return;
  }
  if (const auto* s = std::get_if<density::RadialShells>(&density_)) {
    const double u = engine.next_uniform();
    std::size_t k = 0;
    while (k + 1 < shell_cdf_.size() && u >= shell_cdf_[k]) ++k;
    const double lo = k == 0 ? 0.0 : std::pow(s->breakpoints[k - 1], n);
    const double hi = std::pow(s->breakpoints[k], n);
    const double r = std::pow(lo + engine.next_uniform() * (hi - lo), 1.0 / n);
    sample_direction(n, engine, out);
    for (int i = 0; i < n; ++i) out[i] *= r;
    return;
  }
  for (std::uint64_t tries = 0; tries < kRejectionCap; ++tries) {
    sample_ball_uniform(geom_, engine, Mapping::Rejection, out);
    const double v = point_value(density_, geom_, out);
    if (v > bound_) {
      throw ConfigError("density value " + std::to_string(v) + " exceeds the rejection bound " +
                        std::to_string(bound_) + "; supply a larger bound");
    }
    if (engine.next_uniform() * bound_ < v) return;
  }
  throw StreamDefect("density rejection sampling hit the rejection cap");
}

std::vector<double> DensitySampler::operator()(rng::Engine& engine) const {
  std::vector<double> out(geom_.dim);
  (*this)(engine, out);
  return out;
}

// ---- histograms ------------------------------------------------------------

std::string HistogramEstimate::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    os << bin_edges[i] << "," << bin_edges[i + 1] << "," << counts[i] << "\n";
  }
  return os.str();
}

std::vector<double> pair_distances(const DensitySampler& sampler, std::uint64_t pairs,
                                   rng::Engine& engine) {
  const int n = sampler.geometry().dim;
  std::vector<double> a(n), b(n);
  std::vector<double> out;
  out.reserve(pairs);
  for (std::uint64_t k = 0; k < pairs; ++k) {
    sampler(engine, a);
    sampler(engine, b);
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    out.push_back(std::sqrt(d2));
  }
  return out;
}

HistogramEstimate make_histogram(std::span<const double> values, double lo, double hi,
                                 int bins) {
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  if (!(hi > lo)) throw ConfigError("histogram range must be nonempty");
  HistogramEstimate h;
  h.bin_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
  h.counts.assign(bins, 0);
  const double scale = bins / (hi - lo);
  for (double v : values) {
    if (v > hi || v < lo) {
      ++h.overflow;
      continue;
    }
    auto k = static_cast<int>((v - lo) * scale);
    if (k >= bins) k = bins - 1;
    ++h.counts[k];
    ++h.total;
  }
  return h;
}

HistogramEstimate pair_distance_histogram(const DensitySampler& sampler, std::uint64_t pairs,
                                          int bins, rng::Engine& engine) {
  if (pairs < 1000) throw ConfigError("pair_distance_histogram needs at least 1000 pairs");
  const auto d = pair_distances(sampler, pairs, engine);
  return make_histogram(d, 0.0, sampler.distance_range(), bins);
}

// ---- Kolmogorov-Smirnov ----------------------------------------------------

double ks_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("KS alpha must lie in (0, 1)");
  if (alpha == 0.01) return 1.628;
  if (alpha == 0.05) return 1.358;
  return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

namespace {

void check_sample_set(std::span<const double> s, const char* what) {
  if (s.size() < 1000) {
    throw DomainError(std::string(what) + ": need at least 1000 samples");
  }
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (*lo == *hi) throw DomainError(std::string(what) + ": all samples are identical");
}

}  // namespace

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 double alpha) {
  check_sample_set(samples, "ks_test");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  KsResult r;
  r.statistic = d;
  r.n_eff = x.size();
  r.alpha = alpha;
  r.critical = ks_coefficient(alpha) / std::sqrt(n);
  r.pass = d <= r.critical;
  return r;
}

KsResult ks_test(const HistogramEstimate& hist, const std::function<double(double)>& cdf,
                 double alpha) {
  if (hist.total < 1000) throw DomainError("ks_test: need at least 1000 samples");
  std::size_t nonzero = 0;
  for (auto c : hist.counts) nonzero += c > 0;
  if (nonzero < 2) throw DomainError("ks_test: all samples fall in one bin");
  const double n = static_cast<double>(hist.total);
  const double f0 = cdf(hist.bin_edges.front());
  double cum = 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    cum += static_cast<double>(hist.counts[i]);
    d = std::max(d, std::abs(cum / n - (cdf(hist.bin_edges[i + 1]) - f0)));
  }
  KsResult r;
  r.statistic = d;
  r.n_eff = hist.total;
  r.alpha = alpha;
  r.critical = ks_coefficient(alpha) / std::sqrt(n);
  r.pass = d <= r.critical;
  return r;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  check_sample_set(a, "ks_two_sample");
  check_sample_set(b, "ks_two_sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  KsResult r;
  r.statistic = d;
  r.n_eff = static_cast<std::uint64_t>(n * m / (n + m));
  r.alpha = alpha;
  r.critical = ks_coefficient(alpha) * std::sqrt((n + m) / (n * m));
  r.pass = d <= r.critical;
  return r;
}

}  // namespace nball

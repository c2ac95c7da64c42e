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

#include "nball/master.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "nball/errors.hpp"
#include "nball/sampling.hpp"
#include "nball/specfun.hpp"

namespace nball {

// ---- rotations -------------------------------------------------------------

namespace {

void check_angles(int dim, const RotationAngles& angles) {
  if (dim < 2) throw DomainError("rotation matrices need dimension >= 2");
  if (static_cast<int>(angles.thetas.size()) != dim - 2) {
    throw DomainError("rotation needs exactly n - 2 polar angles");
  }
  for (double t : angles.thetas) {
    if (!(t >= 0.0 && t <= std::numbers::pi)) throw DomainError("polar angle outside [0, pi]");
  }
  if (!(angles.phi >= 0.0 && angles.phi <= 2.0 * std::numbers::pi)) {
    throw DomainError("azimuth outside [0, 2 pi]");
  }
}

// Rotation in the (p, q) plane with a_pp = a_qq = c, a_pq = s, a_qp = -s.
inline void givens(double* v, int p, int q, double c, double s) {
  const double vp = v[p], vq = v[q];
  v[p] = c * vp + s * vq;
  v[q] = -s * vp + c * vq;
}

// Plane (0-based) and sign of the factor for theta_k, k = 1..n-2. theta_1
// couples axes 1 and 3; later ones couple k+1 and k+2.
inline std::pair<int, int> theta_plane(int k) {
  return k == 1 ? std::pair{0, 2} : std::pair{k, k + 1};
}

}  // namespace

int lens_axis(int dim) { return dim == 2 ? 0 : dim - 1; }

void apply_rotation(int dim, const RotationAngles& angles, std::span<const double> v,
                    std::span<double> out) {
  std::copy(v.begin(), v.begin() + dim, out.begin());
  double* w = out.data();
  // Rightmost factor first: R(theta_{n-2}) ... R(theta_1), then R(phi).
  for (int k = dim - 2; k >= 1; --k) {
    const auto [p, q] = theta_plane(k);
    const double t = angles.thetas[k - 1];
    givens(w, p, q, std::cos(t), std::sin(t));
  }
  givens(w, 0, 1, std::cos(angles.phi), -std::sin(angles.phi));
}

void apply_rotation_transpose(int dim, const RotationAngles& angles, std::span<const double> v,
                              std::span<double> out) {
  std::copy(v.begin(), v.begin() + dim, out.begin());
  double* w = out.data();
  givens(w, 0, 1, std::cos(angles.phi), std::sin(angles.phi));
  for (int k = 1; k <= dim - 2; ++k) {
    const auto [p, q] = theta_plane(k);
    const double t = angles.thetas[k - 1];
    givens(w, p, q, std::cos(t), -std::sin(t));
  }
}

RotationMatrix rotation_matrix(int dim, const RotationAngles& angles) {
  check_angles(dim, angles);
  RotationMatrix m{dim, std::vector<double>(static_cast<std::size_t>(dim) * dim)};
  std::vector<double> e(dim), col(dim);
  for (int j = 0; j < dim; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    apply_rotation(dim, angles, e, col);
    for (int i = 0; i < dim; ++i) m(i, j) = col[i];
  }
  return m;
}

std::vector<double> hyperspherical_unit(int dim, const RotationAngles& angles) {
  check_angles(dim, angles);
  std::vector<double> x(dim);
  if (dim == 2) {
    x[0] = std::cos(angles.phi);
    x[1] = std::sin(angles.phi);
    return x;
  }
  // x_n = cos theta_{n-2}; x_i = prod_{k >= i-1} sin theta_k * cos theta_{i-2};
  // x_1, x_2 carry cos phi, sin phi.
  double tail = 1.0;  // product of sines of theta_{n-2} .. theta_{i-1}
  for (int i = dim; i >= 3; --i) {
    const double t = angles.thetas[i - 3];  // theta_{i-2}
    x[i - 1] = tail * std::cos(t);
    tail *= std::sin(t);
  }
  x[0] = tail * std::cos(angles.phi);
  x[1] = tail * std::sin(angles.phi);
  return x;
}

RotationMatrix transpose(const RotationMatrix& m) {
  RotationMatrix t{m.dim, std::vector<double>(m.a.size())};
  for (int i = 0; i < m.dim; ++i) {
    for (int j = 0; j < m.dim; ++j) t(j, i) = m(i, j);
  }
  return t;
}

RotationMatrix multiply(const RotationMatrix& x, const RotationMatrix& y) {
  const int n = x.dim;
  RotationMatrix out{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double v = x(i, k);
      for (int j = 0; j < n; ++j) out(i, j) += v * y(k, j);
    }
  }
  return out;
}

double determinant(RotationMatrix m) {
  const int n = m.dim;
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(m(r, c)) > std::abs(m(pivot, c))) pivot = r;
    }
    if (m(pivot, c) == 0.0) return 0.0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(pivot, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

// ---- angle sampling --------------------------------------------------------

namespace {

// int_0^theta sin^k by the reduction I_k = -sin^{k-1} cos / k + (k-1)/k I_{k-2}.
double sin_power_integral(int k, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  double lo = theta;      // I_0
  double hi = 1.0 - c;    // I_1
  if (k == 0) return lo;
  if (k == 1) return hi;
  double prev2 = (k % 2 == 0) ? lo : hi;
  double sp = (k % 2 == 0) ? s : s * s;  // sin^{j-1} for the first j
  for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) {
    prev2 = -sp * c / j + static_cast<double>(j - 1) / j * prev2;
    sp *= s * s;
  }
  return prev2;
}

}  // namespace

SinPowerSampler::SinPowerSampler(int power) : power_(power) {
  if (power < 0) throw DomainError("sin power must be >= 0");
  total_ = sin_power_integral(power_, std::numbers::pi);
  knots_.resize(kKnots);
  for (int i = 0; i < kKnots; ++i) {
    knots_[i] = sin_power_integral(power_, std::numbers::pi * i / (kKnots - 1)) / total_;
  }
  knots_.front() = 0.0;
  knots_.back() = 1.0;
}

double SinPowerSampler::cdf(double theta) const {
  return sin_power_integral(power_, theta) / total_;
}

double SinPowerSampler::operator()(double u) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
  int i = static_cast<int>(it - knots_.begin()) - 1;
  i = std::clamp(i, 0, kKnots - 2);
  const double step = std::numbers::pi / (kKnots - 1);
  const double lo = step * i, hi = step * (i + 1);
  const double span = knots_[i + 1] - knots_[i];
  double t = span > 0.0 ? lo + step * (u - knots_[i]) / span : lo;
  // Newton on the exact CDF, kept inside [a, b] by bisection; the CDF is very
  // flat near 0 and pi, where a single step is not enough.
  double a = lo, b = hi;
  for (int iter = 0; iter < 60; ++iter) {
    const double f = cdf(t) - u;
    if (f == 0.0) break;
    (f < 0.0 ? a : b) = t;
    const double dens = std::pow(std::sin(t), power_) / total_;
    double next = dens > 0.0 ? t - f / dens : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, t)) {
      t = next;
      break;
    }
    t = next;
  }
  return t;
}

AngleSampler::AngleSampler(int dim) : dim_(dim) {
  for (int k = 1; k <= dim - 2; ++k) thetas_.emplace_back(k);
}

RotationAngles AngleSampler::operator()(rng::Engine& engine) const {
  RotationAngles a;
  a.thetas.resize(thetas_.size());
  for (std::size_t k = 0; k < thetas_.size(); ++k) a.thetas[k] = thetas_[k](engine.next_uniform());
  a.phi = 2.0 * std::numbers::pi * engine.next_uniform();
  return a;
}

// ---- spherically symmetric model -------------------------------------------

namespace {

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SymmetricDistanceModel::SymmetricDistanceModel(const BallGeometry& geom, DensityModel density,
                                               QuadSpec spec)
    : geom_(geom), density_(std::move(density)), spec_(spec) {
  validate(density_, geom_);
  if (!geom_.bounded()) throw ConfigError("symmetric pdf needs a finite radius");
  if (!is_radial(density_)) throw ConfigError("symmetric pdf needs a radial density");
  const int n = geom_.dim;
  const double radius = geom_.radius;

  kinks_ = radial_kinks(density_, geom_);
  kinks_.push_back(radius);
  sort_unique(kinks_);
  for (double a : kinks_) {
    for (double b : kinks_) {
      for (double v : {a + b, std::abs(a - b)}) {
        if (v > 0.0 && v < 2.0 * radius) s_breaks_.push_back(v);
      }
    }
  }
  sort_unique(s_breaks_);

  if (n >= 2) {
    const double h = 0.5 * (n - 1);
    surface_ = 2.0 * std::pow(std::numbers::pi, h) / specfun::gamma(h);
  }

  double peak = 0.0;
  for (int i = 0; i <= 1024; ++i) {
    peak = std::max(peak, std::abs(radial_value(density_, geom_, radius * i / 1024)));
  }
  if (!(peak > 0.0)) throw DegenerateDensity("radial density vanishes on the ball");
  // Scale the absolute tolerance to the largest possible overlap.
  spec_.abs_tol = spec.abs_tol * peak * peak * std::pow(radius, n);

  quad::Options opt;
  opt.rel_tol = spec_.rel_tol * 100.0;
  opt.abs_tol = spec_.abs_tol * std::pow(2.0 * radius, n);
  opt.max_intervals = spec_.max_intervals;
  norm_ = quad::integrate_checked([this](double s) { return unnormalized(s); }, 0.0,
                                  2.0 * radius, opt, s_breaks_, "symmetric_pdf normalization");
  if (!(norm_ > 0.0)) throw DegenerateDensity("symmetric pdf has zero total mass");
}

double SymmetricDistanceModel::transverse(double s, double x) const {
  const int n = geom_.dim;
  const double radius = geom_.radius;
  const double tmax2 = radius * radius - x * x;
  if (tmax2 <= 0.0) return 0.0;
  const double tmax = std::sqrt(tmax2);
  const double xs = x - s;
  auto f = [&](double t) {
    const double t2 = t * t;
    const double a = radial_value(density_, geom_, std::sqrt(x * x + t2));
    const double b = radial_value(density_, geom_, std::sqrt(xs * xs + t2));
    return std::pow(t, n - 2) * a * b;
  };
  std::vector<double> breaks;
  for (double b : kinks_) {
    if (b > std::abs(x)) breaks.push_back(std::sqrt(b * b - x * x));
    if (b > std::abs(xs)) breaks.push_back(std::sqrt(b * b - xs * xs));
  }
  quad::Options opt;
  opt.rel_tol = spec_.rel_tol;
  opt.abs_tol = spec_.abs_tol;
  opt.max_intervals = spec_.max_intervals;
  const double inner = quad::integrate_checked(f, 0.0, tmax, opt, breaks, "symmetric_pdf inner");
  return surface_ * inner;
}

double SymmetricDistanceModel::overlap(double s) const {
  const double radius = geom_.radius;
  const double lo = 0.5 * s;
  if (lo >= radius) return 0.0;
  quad::Options opt;
  opt.rel_tol = spec_.rel_tol * 10.0;
  opt.abs_tol = spec_.abs_tol * radius;
  opt.max_intervals = spec_.max_intervals;

  if (geom_.dim == 1) {
    auto f = [&](double x) {
      return radial_value(density_, geom_, std::abs(x)) *
             radial_value(density_, geom_, std::abs(x - s));
    };
    std::vector<double> breaks;
    for (double b : kinks_) breaks.insert(breaks.end(), {b, s - b, s + b});
    return quad::integrate_checked(f, lo, radius, opt, breaks, "symmetric_pdf");
  }

  std::vector<double> breaks;
  for (double b1 : kinks_) {
    breaks.insert(breaks.end(), {b1, s - b1, s + b1});
    if (s > 0.0) {
      for (double b2 : kinks_) breaks.push_back((b1 * b1 - b2 * b2 + s * s) / (2.0 * s));
    }
  }
  return quad::integrate_checked([&](double x) { return transverse(s, x); }, lo, radius, opt,
                                 breaks, "symmetric_pdf middle");
}

double SymmetricDistanceModel::unnormalized(double s) const {
  if (!(s >= 0.0 && s <= 2.0 * geom_.radius)) {
    throw DomainError("symmetric_pdf: distance outside [0, 2R]");
  }
  if (s == 2.0 * geom_.radius) return 0.0;
  const int n = geom_.dim;
  if (n >= 2 && s == 0.0) return 0.0;
  return std::pow(s, n - 1) * overlap(s);
}

double SymmetricDistanceModel::pdf(double s) const { return unnormalized(s) / norm_; }

std::string SymmetricDistanceModel::describe() const {
  std::ostringstream os;
  os << "symmetric " << nball::describe(density_) << " n=" << geom_.dim << " R=" << geom_.radius;
  return os.str();
}

double symmetric_pdf(const BallGeometry& geom, const DensityModel& density, double s,
                     QuadSpec spec) {
  return SymmetricDistanceModel(geom, density, spec).pdf(s);
}

// ---- Monte Carlo master formula --------------------------------------------

double NumericPdfEstimate::mass() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    m += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
  }
  return m;
}

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& grid) {
  std::vector<double> c(grid.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double h = 0.5 * (grid[i + 1] - grid[i]);
    c[i] += h;
    c[i + 1] += h;
  }
  return c;
}

}  // namespace

NumericPdfEstimate::Functional NumericPdfEstimate::functional(
    std::span<const double> weights) const {
  if (weights.size() != values.size()) throw ConfigError("functional: weights size mismatch");
  Functional f;
  for (std::size_t i = 0; i < values.size(); ++i) f.value += weights[i] * values[i];
  if (raw_stderrs.size() != values.size()) return f;
  // v = u / M with M = sum c u: d(sum a v) / du_k = (a_k - L c_k) / M.
  const auto c = trapezoid_weights(grid);
  double var = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double g = (weights[k] - (normalization_applied ? f.value * c[k] : 0.0)) * raw_stderrs[k];
    var += g * g;
  }
  f.stderr_value = std::sqrt(var);
  return f;
}

std::vector<double> uniform_grid(double radius, int points) {
  if (points < 3) throw ConfigError("grid needs at least 3 points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = 2.0 * radius * i / (points - 1);
  g.back() = 2.0 * radius;
  return g;
}

namespace {

struct PointStats {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

// Mean and standard error of w * rho(x') * rho(x'') over lens samples at
// distance s, x'' = R x and x' = R (x - s e_axis).
PointStats lens_average(const BallGeometry& geom, const DensityModel& density, double s,
                        std::uint64_t samples, const AngleSampler& angles,
                        rng::Engine& engine) {
  const int n = geom.dim;
  const double radius = geom.radius;
  const double lo = 0.5 * s;
  if (lo >= radius) return {};
  const int axis = n == 1 ? 0 : lens_axis(n);
  const int m = n - 1;  // transverse dimension
  const double unit_ball = m == 0 ? 1.0
                                  : std::pow(std::numbers::pi, 0.5 * m) /
                                        specfun::gamma(0.5 * m + 1.0);

  std::vector<double> x(n), shifted(n), xpp(n), xp(n), dir(std::max(m, 1));
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t k = 1; k <= samples; ++k) {
    RotationAngles a;
    double sign = 1.0;
    if (n == 1) {
      sign = engine.next_uniform() < 0.5 ? -1.0 : 1.0;
    } else {
      a = angles(engine);
    }
    const double xa = lo + (radius - lo) * engine.next_uniform();
    const double tmax = std::sqrt(std::max(0.0, radius * radius - xa * xa));
    double weight = radius - lo;
    if (m == 1) {
      const double t = tmax * (2.0 * engine.next_uniform() - 1.0);
      x[axis] = xa;
      x[1 - axis] = t;
      weight *= 2.0 * tmax;
    } else if (m >= 2) {
      sample_direction(m, engine, dir);
      const double r = tmax * std::pow(engine.next_uniform(), 1.0 / m);
      for (int i = 0; i < m; ++i) x[i] = r * dir[i];
      x[axis] = xa;
      weight *= unit_ball * std::pow(tmax, m);
    } else {
      x[0] = xa;
    }

    double f = 0.0;
    if (weight > 0.0) {
      shifted = x;
      shifted[axis] -= s;
      if (n == 1) {
        xpp[0] = sign * x[0];
        xp[0] = sign * shifted[0];
      } else {
        apply_rotation(n, a, x, xpp);
        apply_rotation(n, a, shifted, xp);
      }
      const double r1 = point_value(density, geom, xp);
      if (r1 != 0.0) f = weight * r1 * point_value(density, geom, xpp);
    }
    const double delta = f - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (f - mean);
  }
  PointStats st;
  st.mean = mean;
  if (samples > 1) {
    st.stderr_mean = std::sqrt(m2 / static_cast<double>(samples - 1) / samples);
  }
  return st;
}

}  // namespace

NumericPdfEstimate general_pdf_mc(const BallGeometry& geom, const DensityModel& density,
                                  std::span<const double> grid, std::uint64_t samples,
                                  const rng::Engine& engine, int jobs) {
  validate(density, geom);
  if (!geom.bounded()) throw ConfigError("general_pdf_mc needs a finite radius");
  if (samples < 10000) throw ConfigError("general_pdf_mc needs at least 10^4 samples per point");
  if (grid.size() < 3) throw ConfigError("grid needs at least 3 points");
  const double top = 2.0 * geom.radius;
  if (grid.front() != 0.0 || std::abs(grid.back() - top) > 1e-12 * top) {
    throw ConfigError("grid must start at 0 and end at 2R");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly ascending");
  }
  if (jobs < 1) throw ConfigError("jobs must be >= 1");

  const int n = geom.dim;
  const AngleSampler angles(std::max(n, 2));
  NumericPdfEstimate est;
  est.grid.assign(grid.begin(), grid.end());
  est.grid.back() = top;
  est.values.assign(grid.size(), 0.0);
  est.stderrs.assign(grid.size(), 0.0);
  est.samples_per_point = samples;
  est.rng_descriptor = rng::describe(engine.info());

  auto run_point = [&](std::size_t i, rng::Engine& e) {
    const double s = est.grid[i];
    if ((n >= 2 && s == 0.0) || s >= top) return;
    const auto st = lens_average(geom, density, s, samples, angles, e);
    const double p = std::pow(s, n - 1);
    est.values[i] = p * st.mean;
    est.stderrs[i] = p * st.stderr_mean;
  };

  if (engine.algorithm() == rng::Algorithm::External) {
    rng::Engine e = engine;
    for (std::size_t i = 0; i < grid.size(); ++i) run_point(i, e);
  } else {
    const int workers = std::min<int>(jobs, static_cast<int>(grid.size()));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](int w) {
      try {
        for (std::size_t i = w; i < grid.size(); i += workers) {
          rng::Engine e = engine.substream(i + 1);
          run_point(i, e);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const double mass = est.mass();
  if (!(mass > 0.0)) {
    throw DegenerateDensity("density overlap vanishes at every grid distance");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    est.values[i] /= mass;
    est.stderrs[i] /= mass;
  }
  est.raw_stderrs = est.stderrs;
  est.normalization_applied = true;
  std::vector<double> unit(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    unit[i] = 1.0;
    est.stderrs[i] = est.functional(unit).stderr_value;
    unit[i] = 0.0;
  }
  return est;
}

}  // namespace nball

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

#include "nball/distributions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nball/errors.hpp"
#include "nball/quadrature.hpp"
#include "nball/specfun.hpp"

namespace nball {

namespace sf = specfun;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_ball(const BallGeometry& geom) {
  if (geom.dim < 1) throw DomainError("dimension must be >= 1");
  if (!(geom.radius > 0.0) || !std::isfinite(geom.radius)) {
    throw DomainError("radius must be positive and finite");
  }
}

void check_distance(const BallGeometry& geom, double s, const char* what) {
  check_ball(geom);
  if (!(s >= 0.0 && s <= 2.0 * geom.radius)) {
    throw DomainError(std::string(what) + ": distance outside [0, 2R]");
  }
}

double log_beta(double p, double q) {
  return sf::log_gamma(p) + sf::log_gamma(q) - sf::log_gamma(p + q);
}

// H(R, r_c, m, n) with the incomplete-beta arguments in integration-by-parts
// order: B(p,q) - B_x(p,q) = B_{1-x}(q,p), p = (n+m+1)/2, q = (n+1)/2.
double hardcore_h(double radius, double r_c, int m, int n) {
  const double q = 0.5 * (n + 1);
  const double p = 0.5 * (n + m + 1);
  const double x = r_c * r_c / (4.0 * radius * radius);
  const double nm = n + m;
  const double head = std::pow(2.0 * radius, nm) / nm * sf::incomplete_beta(1.0 - x, q, p);
  const double tail = std::pow(r_c, nm) / nm * sf::incomplete_beta(1.0 - x, q, 0.5);
  return head - tail;
}

void check_hardcore(const BallGeometry& geom, double r_c) {
  check_ball(geom);
  if (!(r_c > 0.0 && r_c < 2.0 * geom.radius)) {
    throw DomainError("hard-core radius must lie in (0, 2R)");
  }
}

// Two-shell region polynomials: P(s) = (1/R) sum_j c[j] (s/R)^j, j = 0..5.
using Poly = std::array<double, 6>;

std::array<Poly, 4> two_shell_regions(double rho1, double rho2) {
  if (!(rho1 >= 0.0) || !(rho2 >= 0.0) || !(rho1 + rho2 > 0.0) || !std::isfinite(rho1) ||
      !std::isfinite(rho2)) {
    throw DomainError("two-shell densities must be nonnegative and not both zero");
  }
  const double w = rho1 + 7.0 * rho2;
  const double d = w * w;
  const double r11 = rho1 * rho1, r12 = rho1 * rho2, r22 = rho2 * rho2;
  const double lin = -81.0 * (rho1 - rho2) * rho2 / (2.0 * d);
  std::array<Poly, 4> out{};
  out[0] = {0, 0, 24.0 * (r11 + 7.0 * r22) / d, -36.0 * (r11 - 2.0 * r12 + 5.0 * r22) / d, 0,
            12.0 * (r11 - 2.0 * r12 + 2.0 * r22) / d};
  out[1] = {0, lin, 24.0 * rho1 / w, -36.0 * rho1 * (rho1 + 3.0 * rho2) / d, 0, 12.0 * r11 / d};
  out[2] = {0,
            lin,
            24.0 * (9.0 * rho1 - rho2) * rho2 / d,
            -36.0 * (5.0 * rho1 - rho2) * rho2 / d,
            0,
            12.0 * (2.0 * rho1 - rho2) * rho2 / d};
  out[3] = {0, 0, 192.0 * r22 / d, -144.0 * r22 / d, 0, 12.0 * r22 / d};
  return out;
}

double poly_eval(const Poly& c, double u) {
  double v = 0.0;
  for (int j = 5; j >= 0; --j) v = v * u + c[j];
  return v;
}

double poly_antiderivative(const Poly& c, double u) {
  double v = 0.0;
  for (int j = 5; j >= 0; --j) v = v * u + c[j] / (j + 1);
  return v * u;
}

int two_shell_region(double u) {
  if (u <= 0.5) return 0;
  if (u <= 1.0) return 1;
  if (u <= 1.5) return 2;
  return 3;
}

}  // namespace

// ---- uniform ---------------------------------------------------------------

double uniform_lens_integral(const BallGeometry& geom, double s) {
  check_distance(geom, s, "uniform_lens_integral");
  const double y = s / (2.0 * geom.radius);
  if (y >= 1.0) return 0.0;
  const int n = geom.dim;
  return 0.5 * std::pow(geom.radius, n) * sf::incomplete_beta(1.0 - y * y, 0.5 * (n + 1), 0.5);
}

double uniform_pdf(const BallGeometry& geom, double s) {
  check_distance(geom, s, "uniform_pdf");
  const int n = geom.dim;
  const double radius = geom.radius;
  if (s == 2.0 * radius) return 0.0;
  const double y = s / (2.0 * radius);
  const double prefactor = n / radius * std::pow(s / radius, n - 1);
  // The explicit acos/polynomial sums cancel badly as y -> 1 for large n; the
  // incomplete-beta form keeps full relative accuracy across the support.
  return prefactor * sf::regularized_incomplete_beta((1.0 - y) * (1.0 + y), 0.5 * (n + 1), 0.5);
}

double uniform_pdf_integral_rep(const BallGeometry& geom, double s) {
  check_distance(geom, s, "uniform_pdf_integral_rep");
  const int n = geom.dim;
  const double radius = geom.radius;
  if (s == 2.0 * radius) return 0.0;
  const double r2 = radius * radius;
  const double half_power = 0.5 * (n - 1);
  auto integrand = [&](double x) {
    const double t = std::max(0.0, r2 - x * x);
    return std::pow(t, half_power);
  };
  quad::Options opt;
  opt.abs_tol = 1e-15 * std::pow(radius, n);
  opt.rel_tol = 1e-13;
  const double numerator =
      quad::integrate_checked(integrand, 0.5 * s, radius, opt, {}, "uniform_pdf_integral_rep");
  const double norm = sf::beta(0.5 * (n + 1), 0.5) * std::pow(radius, 2 * n) / (2.0 * n);
  return std::pow(s, n - 1) * numerator / norm;
}

double uniform_pdf_hypergeometric_rep(const BallGeometry& geom, double s) {
  check_distance(geom, s, "uniform_pdf_hypergeometric_rep");
  const int n = geom.dim;
  const double radius = geom.radius;
  if (s == 2.0 * radius) return 0.0;
  const double a = 0.5;
  const double b = 0.5 - 0.5 * n;
  const double c = 1.5;
  const double beta_arg = s * s / (4.0 * radius * radius);
  const double bracket =
      sf::gauss_2f1(a, b, c, 1.0) * radius - 0.5 * s * sf::gauss_2f1(a, b, c, beta_arg);
  const double value = 2.0 * n / sf::beta(0.5 * (n + 1), 0.5) * bracket *
                       std::pow(s, n - 1) / std::pow(radius, n + 1);
  return std::max(0.0, value);
}

double uniform_cdf_formula(const BallGeometry& geom, double x) {
  check_distance(geom, x, "uniform_cdf");
  const int n = geom.dim;
  const double q = 0.5 * (n + 1);
  const double alpha = x * x / (4.0 * geom.radius * geom.radius);
  const double full = sf::beta(0.5, q);
  const double ratio_n = std::pow(x / geom.radius, n);
  // x^n/R^n (1 - B_alpha(1/2, q)/B) with the complement taken as B_{1-alpha}(q, 1/2).
  const double first = ratio_n * sf::incomplete_beta(1.0 - alpha, q, 0.5) / full;
  const double second = std::pow(2.0, n) * sf::incomplete_beta(alpha, q, q) / full;
  return first + second;
}

double uniform_cdf(const BallGeometry& geom, double x) {
  check_distance(geom, x, "uniform_cdf");
  if (x == 0.0) return 0.0;
  if (x == 2.0 * geom.radius) return 1.0;
  return std::clamp(uniform_cdf_formula(geom, x), 0.0, 1.0);
}

double uniform_moment(const BallGeometry& geom, int m) {
  check_ball(geom);
  const int n = geom.dim;
  if (m < -(n - 1)) {
    throw DomainError("uniform_moment: order m must satisfy m >= -(n-1)");
  }
  if (n + m == 0) throw DomainError("uniform_moment: n + m must be nonzero");
  if (m == 0) return 1.0;
  const double q = 0.5 * (n + 1);
  const double log_value =
      (n + m) * std::numbers::ln2 + log_beta(q, q + 0.5 * m) - log_beta(q, 0.5);
  return std::exp(log_value) * n / (n + m) * std::pow(geom.radius, m);
}

// ---- Gaussian --------------------------------------------------------------

namespace {
void check_gaussian(int dim, double sigma) {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
}
}  // namespace

double gaussian_pdf(int dim, double sigma, double s) {
  check_gaussian(dim, sigma);
  if (!(s >= 0.0)) throw DomainError("gaussian_pdf: distance must be nonnegative");
  if (std::isinf(s)) return 0.0;
  if (s == 0.0) return dim == 1 ? 1.0 / (std::sqrt(std::numbers::pi) * sigma) : 0.0;
  const double log_value = (dim - 1) * std::log(s) - s * s / (4.0 * sigma * sigma) -
                           (dim - 1) * std::numbers::ln2 - sf::log_gamma(0.5 * dim) -
                           dim * std::log(sigma);
  return std::exp(log_value);
}

double gaussian_cdf(int dim, double sigma, double x) {
  check_gaussian(dim, sigma);
  if (!(x >= 0.0)) throw DomainError("gaussian_cdf: distance must be nonnegative");
  const double upper = std::min(x, 40.0 * sigma);
  if (upper == 0.0) return 0.0;
  const double mode = gaussian_mode(dim, sigma);
  const std::array<double, 3> kinks = {mode, mode + 4 * sigma, mode + 10 * sigma};
  quad::Options opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-13;
  const double v = quad::integrate_checked([&](double s) { return gaussian_pdf(dim, sigma, s); },
                                           0.0, upper, opt, kinks, "gaussian_cdf");
  return std::clamp(v, 0.0, 1.0);
}

double gaussian_moment(int dim, double sigma, int m) {
  check_gaussian(dim, sigma);
  if (dim + m <= 0) throw DomainError("gaussian_moment: requires n + m > 0");
  if (m == 0) return 1.0;
  return std::exp(m * std::log(2.0 * sigma) + sf::log_gamma(0.5 * (dim + m)) -
                  sf::log_gamma(0.5 * dim));
}

double gaussian_mode(int dim, double sigma) {
  check_gaussian(dim, sigma);
  return std::sqrt(2.0 * (dim - 1)) * sigma;
}

// ---- hard core -------------------------------------------------------------

double hardcore_pdf(const BallGeometry& geom, double r_c, double s) {
  check_hardcore(geom, r_c);
  if (!(s >= r_c && s <= 2.0 * geom.radius)) {
    throw DomainError("hardcore_pdf: distance outside [r_c, 2R]");
  }
  const int n = geom.dim;
  if (s == 2.0 * geom.radius) return 0.0;
  const double y = s / (2.0 * geom.radius);
  const double lens = sf::incomplete_beta(1.0 - y * y, 0.5 * (n + 1), 0.5);
  return std::pow(s, n - 1) * lens / hardcore_h(geom.radius, r_c, 0, n);
}

double hardcore_cdf(const BallGeometry& geom, double r_c, double x) {
  check_hardcore(geom, r_c);
  if (!(x >= r_c && x <= 2.0 * geom.radius)) {
    throw DomainError("hardcore_cdf: distance outside [r_c, 2R]");
  }
  if (x == r_c) return 0.0;
  if (x == 2.0 * geom.radius) return 1.0;
  const double below = uniform_cdf(geom, r_c);
  return std::clamp((uniform_cdf(geom, x) - below) / (1.0 - below), 0.0, 1.0);
}

MomentResult hardcore_moment_detailed(const BallGeometry& geom, double r_c, int m) {
  check_hardcore(geom, r_c);
  const int n = geom.dim;
  MomentResult out;
  if (m == 0) {
    out.value = 1.0;
    out.formula = "normalization";
    return out;
  }
  if (m >= -(n - 1)) {
    const double h0 = hardcore_h(geom.radius, r_c, 0, n);
    if (!(h0 > 0.0)) throw DomainError("hardcore_moment: H(R, r_c, 0, n) must be positive");
    out.value = hardcore_h(geom.radius, r_c, m, n) / h0;
    out.formula = "H(R,r_c,m,n)/H(R,r_c,0,n)";
    return out;
  }
  // Below the uniform-ball moment rule the integral still converges because
  // the support starts at r_c > 0; the closed form has 1/(n+m) and B(p<=0, q)
  // singularities there, so integrate directly.
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-13;
  out.value = quad::integrate_checked(
      [&](double s) { return std::pow(s, m) * hardcore_pdf(geom, r_c, s); }, r_c,
      2.0 * geom.radius, opt, {}, "hardcore_moment");
  out.formula = "quadrature of s^m P(s) over [r_c, 2R]";
  out.warning = "m < -(n-1): finite only because r_c > 0; evaluated by quadrature";
  return out;
}

double hardcore_moment(const BallGeometry& geom, double r_c, int m) {
  return hardcore_moment_detailed(geom, r_c, m).value;
}

// ---- two shell -------------------------------------------------------------

double two_shell_pdf(double radius, double rho1, double rho2, double s) {
  if (!(radius > 0.0)) throw DomainError("two_shell_pdf: radius must be positive");
  if (!(s >= 0.0 && s <= 2.0 * radius)) throw DomainError("two_shell_pdf: s outside [0, 2R]");
  const auto regions = two_shell_regions(rho1, rho2);
  if (s == 2.0 * radius) return 0.0;
  const double u = s / radius;
  return std::max(0.0, poly_eval(regions[two_shell_region(u)], u) / radius);
}

double two_shell_cdf(double radius, double rho1, double rho2, double x) {
  if (!(radius > 0.0)) throw DomainError("two_shell_cdf: radius must be positive");
  if (!(x >= 0.0 && x <= 2.0 * radius)) throw DomainError("two_shell_cdf: x outside [0, 2R]");
  const auto regions = two_shell_regions(rho1, rho2);
  if (x == 2.0 * radius) return 1.0;
  const double u = x / radius;
  constexpr std::array<double, 5> edges = {0.0, 0.5, 1.0, 1.5, 2.0};
  double total = 0.0;
  for (int r = 0; r < 4; ++r) {
    const double lo = edges[r];
    const double hi = std::min(edges[r + 1], u);
    if (hi <= lo) break;
    total += poly_antiderivative(regions[r], hi) - poly_antiderivative(regions[r], lo);
  }
  return std::clamp(total, 0.0, 1.0);
}

// ---- distribution objects --------------------------------------------------

double DistributionModel::cdf(double x) const {
  const double lo = support_min();
  const double hi = std::min(x, integration_max());
  if (hi <= lo) return 0.0;
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-12;
  const auto bp = breakpoints();
  const double v =
      quad::integrate_checked([this](double s) { return pdf(s); }, lo, hi, opt, bp, "cdf");
  return std::clamp(v, 0.0, 1.0);
}

double DistributionModel::moment(int m) const {
  const int n = geometry().dim;
  if (support_min() == 0.0 && m < -(n - 1)) {
    throw DomainError("moment: order m must satisfy m >= -(n-1)");
  }
  if (m == 0) return 1.0;
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-12;
  const auto bp = breakpoints();
  return quad::integrate_checked([this, m](double s) { return std::pow(s, m) * pdf(s); },
                                 support_min(), integration_max(), opt, bp, "moment");
}

namespace {

class UniformModel final : public DistributionModel {
 public:
  explicit UniformModel(const BallGeometry& g) : geom_(g) { check_ball(g); }
  double pdf(double s) const override { return uniform_pdf(geom_, s); }
  double cdf(double x) const override { return uniform_cdf(geom_, std::min(x, 2 * geom_.radius)); }
  double moment(int m) const override { return uniform_moment(geom_, m); }
  double support_max() const override { return 2.0 * geom_.radius; }
  Method method() const override { return Method::ClosedForm; }
  BallGeometry geometry() const override { return geom_; }
  DensityModel density() const override { return density::Uniform{}; }
  std::string describe() const override {
    std::ostringstream os;
    os << "uniform n=" << geom_.dim << " R=" << geom_.radius;
    return os.str();
  }

 private:
  BallGeometry geom_;
};

class GaussianModel final : public DistributionModel {
 public:
  GaussianModel(int dim, double sigma) : dim_(dim), sigma_(sigma) { check_gaussian(dim, sigma); }
  double pdf(double s) const override { return gaussian_pdf(dim_, sigma_, s); }
  double cdf(double x) const override { return gaussian_cdf(dim_, sigma_, x); }
  double moment(int m) const override { return gaussian_moment(dim_, sigma_, m); }
  double support_max() const override { return kInf; }
  double integration_max() const override { return 40.0 * sigma_; }
  Method method() const override { return Method::ClosedForm; }
  BallGeometry geometry() const override { return {dim_, kInf}; }
  DensityModel density() const override { return density::Gaussian{sigma_, false}; }
  std::vector<double> breakpoints() const override {
    const double mode = gaussian_mode(dim_, sigma_);
    return {mode, mode + 4 * sigma_, mode + 10 * sigma_};
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "gaussian n=" << dim_ << " sigma=" << sigma_;
    return os.str();
  }

 private:
  int dim_;
  double sigma_;
};

class HardCoreModel final : public DistributionModel {
 public:
  HardCoreModel(const BallGeometry& g, double r_c) : geom_(g), r_c_(r_c) { check_hardcore(g, r_c); }
  double pdf(double s) const override { return hardcore_pdf(geom_, r_c_, s); }
  double cdf(double x) const override {
    if (x <= r_c_) return 0.0;
    return hardcore_cdf(geom_, r_c_, std::min(x, 2 * geom_.radius));
  }
  double moment(int m) const override { return hardcore_moment(geom_, r_c_, m); }
  double support_min() const override { return r_c_; }
  double support_max() const override { return 2.0 * geom_.radius; }
  Method method() const override { return Method::ClosedForm; }
  BallGeometry geometry() const override { return geom_; }
  DensityModel density() const override { return density::Uniform{}; }
  std::string describe() const override {
    std::ostringstream os;
    os << "hard-core uniform n=" << geom_.dim << " R=" << geom_.radius << " r_c=" << r_c_;
    return os.str();
  }

 private:
  BallGeometry geom_;
  double r_c_;
};

class TwoShellModel final : public DistributionModel {
 public:
  TwoShellModel(double radius, double rho1, double rho2)
      : radius_(radius), rho1_(rho1), rho2_(rho2) {
    two_shell_pdf(radius, rho1, rho2, 0.0);  // validates
  }
  double pdf(double s) const override { return two_shell_pdf(radius_, rho1_, rho2_, s); }
  double cdf(double x) const override {
    return two_shell_cdf(radius_, rho1_, rho2_, std::min(x, 2 * radius_));
  }
  double support_max() const override { return 2.0 * radius_; }
  Method method() const override { return Method::ClosedForm; }
  BallGeometry geometry() const override { return {3, radius_}; }
  DensityModel density() const override { return two_shell(radius_, rho1_, rho2_); }
  std::vector<double> breakpoints() const override {
    return {0.5 * radius_, radius_, 1.5 * radius_};
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "two-shell n=3 R=" << radius_ << " rho1=" << rho1_ << " rho2=" << rho2_;
    return os.str();
  }

 private:
  double radius_, rho1_, rho2_;
};

}  // namespace

DistanceDistribution DistanceDistribution::uniform(const BallGeometry& geom) {
  return DistanceDistribution(std::make_shared<UniformModel>(geom));
}
DistanceDistribution DistanceDistribution::gaussian(int dim, double sigma) {
  return DistanceDistribution(std::make_shared<GaussianModel>(dim, sigma));
}
DistanceDistribution DistanceDistribution::hard_core(const BallGeometry& geom, double r_c) {
  return DistanceDistribution(std::make_shared<HardCoreModel>(geom, r_c));
}
DistanceDistribution DistanceDistribution::two_shell(double radius, double rho1, double rho2) {
  return DistanceDistribution(std::make_shared<TwoShellModel>(radius, rho1, rho2));
}

}  // namespace nball

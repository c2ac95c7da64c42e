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

// Closed-form distance distributions P_n(s) for two independent points.
//
// Uniform ball (three representations plus the CDF), Gaussian space,
// hard-core truncation of the uniform ball, and the 3-d two-shell model.

#include <memory>
#include <string>
#include <vector>

#include "nball/density.hpp"

namespace nball {

// ---- uniform n-ball --------------------------------------------------------

/// Closed form, dispatching on the parity of n. Exactly 0 at s = 2R.
double uniform_pdf(const BallGeometry& geom, double s);

/// s^(n-1) int_{s/2}^R (R^2 - x^2)^((n-1)/2) dx over (1/2n) B((n+1)/2, 1/2) R^(2n),
/// numerator by adaptive quadrature.
double uniform_pdf_integral_rep(const BallGeometry& geom, double s);

/// Hypergeometric form with a = 1/2, b = 1/2 - n/2, c = 3/2.
double uniform_pdf_hypergeometric_rep(const BallGeometry& geom, double s);

/// D_n(x) from incomplete beta functions. D(0) = 0 and D(2R) = 1 exactly.
double uniform_cdf(const BallGeometry& geom, double x);

/// Same formula without the exact endpoint branches (test hook).
double uniform_cdf_formula(const BallGeometry& geom, double x);

/// <s^m> for integer m >= -(n-1).
double uniform_moment(const BallGeometry& geom, int m);

/// int_{s/2}^R (R^2 - x^2)^((n-1)/2) dx, the lens half-volume per unit
/// transverse measure, via the incomplete beta function.
double uniform_lens_integral(const BallGeometry& geom, double s);

// ---- Gaussian space --------------------------------------------------------

double gaussian_pdf(int dim, double sigma, double s);
/// By quadrature, truncated at 40 sigma.
double gaussian_cdf(int dim, double sigma, double x);
/// (2 sigma)^m Gamma((n+m)/2) / Gamma(n/2), n + m > 0.
double gaussian_moment(int dim, double sigma, int m);
/// sqrt(2 (n - 1)) sigma.
double gaussian_mode(int dim, double sigma);

// ---- hard core -------------------------------------------------------------

/// Uniform-ball pdf renormalized to [r_c, 2R].
double hardcore_pdf(const BallGeometry& geom, double r_c, double s);
double hardcore_cdf(const BallGeometry& geom, double r_c, double x);

struct MomentResult {
  double value = 0.0;
  std::string formula;  // identity used, echoed by the CLI
  std::string warning;  // nonempty when outside the closed-form regime
};

/// <s^m> over [r_c, 2R] as H(m)/H(0). For m < -(n-1) (allowed only because
/// r_c > 0) the value comes from quadrature and carries a warning.
MomentResult hardcore_moment_detailed(const BallGeometry& geom, double r_c, int m);
double hardcore_moment(const BallGeometry& geom, double r_c, int m);

// ---- two-shell sphere (n = 3) ----------------------------------------------

/// rho1 on [0, R/2], rho2 on (R/2, R]. Boundary points use the left region.
double two_shell_pdf(double radius, double rho1, double rho2, double s);
double two_shell_cdf(double radius, double rho1, double rho2, double x);

// ---- evaluable distribution object -----------------------------------------

enum class Method { ClosedForm, Numeric };

/// Backend of a DistanceDistribution. cdf() and moment() default to
/// quadrature of pdf().
class DistributionModel {
 public:
  virtual ~DistributionModel() = default;
  virtual double pdf(double s) const = 0;
  virtual double cdf(double x) const;
  virtual double moment(int m) const;
  virtual double support_min() const { return 0.0; }
  virtual double support_max() const = 0;
  /// Upper end for numerical integration (support_max, or 40 sigma).
  virtual double integration_max() const { return support_max(); }
  virtual Method method() const = 0;
  virtual BallGeometry geometry() const = 0;
  virtual DensityModel density() const = 0;
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual std::string describe() const = 0;
};

/// Value handle over a shared immutable model.
class DistanceDistribution {
 public:
  explicit DistanceDistribution(std::shared_ptr<const DistributionModel> model)
      : model_(std::move(model)) {}

  static DistanceDistribution uniform(const BallGeometry& geom);
  static DistanceDistribution gaussian(int dim, double sigma);
  static DistanceDistribution hard_core(const BallGeometry& geom, double r_c);
  static DistanceDistribution two_shell(double radius, double rho1, double rho2);

  double pdf(double s) const { return model_->pdf(s); }
  double cdf(double x) const { return model_->cdf(x); }
  double moment(int m) const { return model_->moment(m); }
  double support_min() const { return model_->support_min(); }
  double support_max() const { return model_->support_max(); }
  double integration_max() const { return model_->integration_max(); }
  Method method() const { return model_->method(); }
  BallGeometry geometry() const { return model_->geometry(); }
  DensityModel density() const { return model_->density(); }
  std::vector<double> breakpoints() const { return model_->breakpoints(); }
  std::string describe() const { return model_->describe(); }
  int dim() const { return geometry().dim; }

 private:
  std::shared_ptr<const DistributionModel> model_;
};

}  // namespace nball

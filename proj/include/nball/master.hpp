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

// Numeric distance distributions for non-uniform densities: the 2D lens
// reduction for radial densities and Monte Carlo over rotations for
// arbitrary ones.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nball/density.hpp"
#include "nball/distributions.hpp"
#include "nball/quadrature.hpp"
#include "nball/rng.hpp"

namespace nball {

// ---- rotations -------------------------------------------------------------

/// thetas[k-1] is theta_k in [0, pi] (n - 2 of them), phi in [0, 2 pi].
struct RotationAngles {
  std::vector<double> thetas;
  double phi = 0.0;
};

/// Dense row-major n x n matrix.
struct RotationMatrix {
  int dim = 0;
  std::vector<double> a;

  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
};

/// Product R(phi) R(theta_1) ... R(theta_{n-2}) of Givens factors: phi acts
/// on axes (1,2), theta_1 on (1,3), theta_k (k >= 2) on (k+1,k+2), 1-based.
/// Column n is the unit vector with hyperspherical angles `angles`.
RotationMatrix rotation_matrix(int dim, const RotationAngles& angles);

/// Unit vector with the given hyperspherical angles (n = 2: (cos phi, sin phi)).
std::vector<double> hyperspherical_unit(int dim, const RotationAngles& angles);

/// Index of the axis that R maps onto the unit vector: n - 1 for n >= 3,
/// 0 for n = 2 (the planar convention measures phi from x_1).
int lens_axis(int dim);

/// out = R v without forming R; O(n).
void apply_rotation(int dim, const RotationAngles& angles, std::span<const double> v,
                    std::span<double> out);

/// out = R^T v; O(n).
void apply_rotation_transpose(int dim, const RotationAngles& angles, std::span<const double> v,
                              std::span<double> out);

RotationMatrix transpose(const RotationMatrix& m);
RotationMatrix multiply(const RotationMatrix& x, const RotationMatrix& y);
double determinant(RotationMatrix m);

/// Inverse-CDF sampler for the density sin^k(theta) on [0, pi], from a
/// 4096-knot table refined by a Newton step on the exact CDF.
class SinPowerSampler {
 public:
  static constexpr int kKnots = 4096;
  explicit SinPowerSampler(int power);
  double operator()(double u) const;
  int power() const { return power_; }
  /// Exact CDF, int_0^theta sin^k / int_0^pi sin^k.
  double cdf(double theta) const;

 private:
  int power_;
  double total_;
  std::vector<double> knots_;  // CDF at theta_i = pi i / (kKnots - 1)
};

/// Draws angles theta_k ~ sin^k, phi ~ U[0, 2 pi) from `engine`.
class AngleSampler {
 public:
  explicit AngleSampler(int dim);
  RotationAngles operator()(rng::Engine& engine) const;

 private:
  int dim_;
  std::vector<SinPowerSampler> thetas_;
};

// ---- spherically symmetric densities ---------------------------------------

struct QuadSpec {
  double rel_tol = 1e-10;  // innermost (transverse) integral
  double abs_tol = 1e-15;
  int max_intervals = 2000;
};

/// P_n(s) for a radial density by reducing the lens overlap to an integral
/// over (x_n, t), t the transverse radius. The normalization over [0, 2R] is
/// computed once at construction.
class SymmetricDistanceModel final : public DistributionModel {
 public:
  SymmetricDistanceModel(const BallGeometry& geom, DensityModel density, QuadSpec spec = {});

  /// Unnormalized s^(n-1) * overlap(s).
  double unnormalized(double s) const;
  double normalization() const { return norm_; }

  double pdf(double s) const override;
  double support_max() const override { return 2.0 * geom_.radius; }
  Method method() const override { return Method::Numeric; }
  BallGeometry geometry() const override { return geom_; }
  DensityModel density() const override { return density_; }
  std::vector<double> breakpoints() const override { return s_breaks_; }
  std::string describe() const override;

 private:
  double overlap(double s) const;
  double transverse(double s, double x) const;

  BallGeometry geom_;
  DensityModel density_;
  QuadSpec spec_;
  std::vector<double> kinks_;  // radial kinks plus R
  std::vector<double> s_breaks_;
  double surface_ = 1.0;       // S_{n-2}, area of the unit sphere in R^(n-1)
  double norm_ = 1.0;
};

/// Normalized pdf at one point (builds a model each call; prefer the model).
double symmetric_pdf(const BallGeometry& geom, const DensityModel& density, double s,
                     QuadSpec spec = {});

// ---- arbitrary densities ---------------------------------------------------

struct NumericPdfEstimate {
  std::vector<double> grid;
  std::vector<double> values;
  /// Per-point standard errors, including the uncertainty of the grid
  /// normalization (which correlates all points).
  std::vector<double> stderrs;
  /// Independent per-point errors before the normalization is propagated,
  /// already divided by the normalizing mass.
  std::vector<double> raw_stderrs;
  bool normalization_applied = false;
  std::uint64_t samples_per_point = 0;
  std::string rng_descriptor;

  struct Functional {
    double value = 0.0;
    double stderr_value = 0.0;
  };

  /// Trapezoid integral of values over grid.
  double mass() const;

  /// sum_i weights[i] * values[i] with its standard error, accounting for
  /// the shared normalization (delta method).
  Functional functional(std::span<const double> weights) const;
};

/// Monte Carlo estimate of P_n(s) on `grid` (ascending, containing 0 and 2R)
/// for any density. Grid point i uses engine substream i + 1, so results do
/// not depend on `jobs`. External engines run single-threaded in order.
NumericPdfEstimate general_pdf_mc(const BallGeometry& geom, const DensityModel& density,
                                  std::span<const double> grid, std::uint64_t samples,
                                  const rng::Engine& engine, int jobs = 1);

/// Uniform grid of `points` values over [0, 2R].
std::vector<double> uniform_grid(double radius, int points);

}  // namespace nball

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

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nball {

/// The n-ball {x in R^n : |x| <= R}. A Gaussian space uses R = +inf.
struct BallGeometry {
  int dim = 3;
  double radius = 1.0;

  void validate() const;  // dim >= 1, radius > 0
  bool bounded() const { return radius < std::numeric_limits<double>::infinity(); }
};

namespace density {

struct Uniform {};

/// rho(r) proportional to exp(-r^2 / 2 sigma^2). Unbounded unless `truncate`
/// is set, in which case the ball radius cuts it off.
struct Gaussian {
  double sigma = 1.0;
  bool truncate = false;
};

/// Piecewise-constant radial density: rho = densities[i] for
/// breakpoints[i-1] < r <= breakpoints[i] (breakpoints[-1] = 0). The last
/// breakpoint equals the ball radius.
struct RadialShells {
  std::vector<double> breakpoints;
  std::vector<double> densities;
};

/// rho(|x|) for an arbitrary nonnegative profile. `bound` (0 = scan) is the
/// rejection-sampling ceiling; `kinks` seed quadrature partitions.
struct RadialProfile {
  std::function<double(double)> rho;
  double bound = 0.0;
  std::vector<double> kinks;
  std::string label = "radial";
};

/// rho(x_1, ..., x_n) for an arbitrary nonnegative point function.
struct General {
  std::function<double(std::span<const double>)> rho;
  double bound = 0.0;
  std::string label = "general";
};

}  // namespace density

using DensityModel = std::variant<density::Uniform, density::Gaussian, density::RadialShells,
                                  density::RadialProfile, density::General>;

/// Raises ConfigError when the model violates its invariants for `geom`.
void validate(const DensityModel& model, const BallGeometry& geom);

std::string describe(const DensityModel& model);

bool is_radial(const DensityModel& model);

/// Value of a radially symmetric model at radius r (0 outside the ball).
/// Uniform returns 1. Throws ConfigError for General.
double radial_value(const DensityModel& model, const BallGeometry& geom, double r);

/// Value at point x (0 outside the ball).
double point_value(const DensityModel& model, const BallGeometry& geom,
                   std::span<const double> x);

/// Radii where the radial density has kinks or jumps, inside (0, R).
std::vector<double> radial_kinks(const DensityModel& model, const BallGeometry& geom);

/// Two equal-thickness shells [0, R/2] and (R/2, R] with densities rho1, rho2.
density::RadialShells two_shell(double radius, double rho1, double rho2);

}  // namespace nball

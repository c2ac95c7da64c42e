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

#include "nball/density.hpp"

#include <cmath>
#include <sstream>

#include "nball/errors.hpp"

namespace nball {

void BallGeometry::validate() const {
  if (dim < 1) throw ConfigError("dimension must be >= 1");
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void validate(const DensityModel& model, const BallGeometry& geom) {
  geom.validate();
  std::visit(
      overloaded{
          [](const density::Uniform&) {},
          [](const density::Gaussian& g) {
            if (!(g.sigma > 0.0)) throw ConfigError("gaussian sigma must be positive");
          },
          [&](const density::RadialShells& s) {
            if (s.breakpoints.empty() || s.breakpoints.size() != s.densities.size()) {
              throw ConfigError("shells: need one density per breakpoint");
            }
            double prev = 0.0;
            for (double b : s.breakpoints) {
              if (!(b > prev)) throw ConfigError("shells: breakpoints must be strictly ascending");
              prev = b;
            }
            if (std::abs(s.breakpoints.back() - geom.radius) > 1e-12 * geom.radius) {
              throw ConfigError("shells: last breakpoint must equal the ball radius");
            }
            bool positive = false;
            for (double d : s.densities) {
              if (!(d >= 0.0) || !std::isfinite(d)) {
                throw ConfigError("shells: densities must be finite and nonnegative");
              }
              positive = positive || d > 0.0;
            }
            if (!positive) throw ConfigError("shells: at least one density must be positive");
          },
          [](const density::RadialProfile& p) {
            if (!p.rho) throw ConfigError("radial profile: missing density function");
            if (p.bound < 0.0) throw ConfigError("radial profile: bound must be >= 0");
          },
          [](const density::General& g) {
            if (!g.rho) throw ConfigError("general density: missing density function");
            if (g.bound < 0.0) throw ConfigError("general density: bound must be >= 0");
          },
      },
      model);
}

std::string describe(const DensityModel& model) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const density::Uniform&) { os << "uniform"; },
                 [&](const density::Gaussian& g) {
                   os << "gaussian(sigma=" << g.sigma << (g.truncate ? ",truncated" : "") << ")";
                 },
                 [&](const density::RadialShells& s) {
                   os << "shells(";
                   for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
                     if (i) os << ";";
                     os << s.breakpoints[i] << ":" << s.densities[i];
                   }
                   os << ")";
                 },
                 [&](const density::RadialProfile& p) { os << p.label; },
                 [&](const density::General& g) { os << g.label; },
             },
             model);
  return os.str();
}

bool is_radial(const DensityModel& model) {
  return !std::holds_alternative<density::General>(model);
}

double radial_value(const DensityModel& model, const BallGeometry& geom, double r) {
  if (r > geom.radius) return 0.0;
  return std::visit(
      overloaded{
          [](const density::Uniform&) { return 1.0; },
          [&](const density::Gaussian& g) {
            return std::exp(-0.5 * r * r / (g.sigma * g.sigma));
          },
          [&](const density::RadialShells& s) {
            for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
              if (r <= s.breakpoints[i]) return s.densities[i];
            }
            return 0.0;
          },
          [&](const density::RadialProfile& p) { return p.rho(r); },
          [](const density::General&) -> double {
            throw ConfigError("general density has no radial profile");
          },
      },
      model);
}

double point_value(const DensityModel& model, const BallGeometry& geom,
                   std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (r2 > geom.radius * geom.radius) return 0.0;
  if (const auto* g = std::get_if<density::General>(&model)) return g->rho(x);
  return radial_value(model, geom, std::sqrt(r2));
}

std::vector<double> radial_kinks(const DensityModel& model, const BallGeometry& geom) {
  std::vector<double> out;
  if (const auto* s = std::get_if<density::RadialShells>(&model)) {
    for (std::size_t i = 0; i + 1 < s->breakpoints.size(); ++i) out.push_back(s->breakpoints[i]);
  } else if (const auto* p = std::get_if<density::RadialProfile>(&model)) {
    for (double k : p->kinks) {
      if (k > 0 && k < geom.radius) out.push_back(k);
    }
  } else if (const auto* g = std::get_if<density::Gaussian>(&model)) {
    // Scale hints: the profile varies on the sigma scale, not the radius scale.
    for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      if (k * g->sigma < geom.radius) out.push_back(k * g->sigma);
    }
  }
  return out;
}

density::RadialShells two_shell(double radius, double rho1, double rho2) {
  return density::RadialShells{{0.5 * radius, radius}, {rho1, rho2}};
}

}  // namespace nball

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

#include "nball/physics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "nball/errors.hpp"
#include "nball/quadrature.hpp"
#include "nball/specfun.hpp"

namespace nball {

Potential Potential::power_law(double coeff, int m) {
  Potential p;
  p.v = [coeff, m](double s) { return coeff * std::pow(s, m); };
  p.power_near_zero = m;
  std::ostringstream os;
  os << coeff << "*s^" << m;
  p.label = os.str();
  return p;
}

double pairwise_expectation(const DistanceDistribution& dist, const Potential& potential,
                            double lower_cut) {
  if (!potential.v) throw ConfigError("potential has no function");
  if (!(lower_cut >= 0.0)) throw DomainError("lower cut must be >= 0");
  const int n = dist.dim();
  const double lo = std::max(lower_cut, dist.support_min());
  if (lo == 0.0 && potential.power_near_zero < -(n - 1)) {
    std::ostringstream os;
    os << "pair integral diverges at s -> 0: V ~ s^" << potential.power_near_zero
       << " against P(s) ~ s^" << n - 1 << " needs exponent >= -(n-1) = " << -(n - 1)
       << "; set a positive cutoff";
    throw DivergentIntegral(os.str());
  }
  const double hi = dist.integration_max();
  if (lo >= hi) return 0.0;
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-13;
  opt.max_intervals = 8000;
  auto bp = dist.breakpoints();
  auto f = [&](double s) {
    const double p = dist.pdf(s);
    return p == 0.0 ? 0.0 : p * potential.v(s);
  };
  const auto r = quad::integrate(f, lo, hi, opt, bp);
  // Relative 1e-13 can be out of reach for near-singular integrands; accept
  // the result when the error estimate is still far below 1e-10.
  if (!r.converged && r.error > 1e-10 * std::abs(r.value)) {
    throw NonConvergence("pairwise_expectation: quadrature did not converge (achieved error " +
                             std::to_string(r.error) + ")",
                         r.error);
  }
  return r.value;
}

namespace {

std::string geometry_json(const BallGeometry& g) {
  nlohmann::ordered_json j;
  j["dim"] = g.dim;
  j["radius"] = g.radius;
  return j.dump();
}

std::string coulomb_inputs(const CoulombSystem& sys) {
  nlohmann::ordered_json j;
  j["charges"] = sys.charges;
  j["charge"] = sys.charge;
  j["geometry"] = nlohmann::ordered_json::parse(geometry_json(sys.geometry));
  return j.dump();
}

std::string neutrino_inputs(const NeutrinoSystem& sys, bool gaussian) {
  nlohmann::ordered_json j;
  j["neutrons"] = sys.neutrons;
  j["fermi_constant"] = sys.fermi_constant;
  j["couplings"] = {{"a_e", sys.a_e}, {"a_p", sys.a_p}, {"a_n", sys.a_n}};
  j["hard_core"] = sys.hard_core;
  if (gaussian) {
    j["sigma"] = sys.sigma;
  } else {
    j["geometry"] = nlohmann::ordered_json::parse(geometry_json(sys.geometry));
  }
  return j.dump();
}

void check_coulomb(const CoulombSystem& sys) {
  if (sys.charges < 2) throw DomainError("coulomb system needs Z >= 2");
  if (!std::isfinite(sys.charge)) throw DomainError("charge must be finite");
}

void check_neutrino(const NeutrinoSystem& sys) {
  if (sys.neutrons < 2) throw DomainError("neutrino system needs N >= 2");
  if (!(sys.hard_core > 0.0)) throw DomainError("hard-core radius must be positive");
  if (!std::isfinite(sys.fermi_constant)) throw DomainError("G_F must be finite");
}

double pair_count(long long n) { return 0.5 * static_cast<double>(n) * (n - 1); }

}  // namespace

std::string SelfEnergyResult::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["interaction"] = interaction;
  j["density"] = density;
  j["particles"] = particles;
  j["cutoff"] = cutoff;
  j["convention"] = convention;
  j["formula"] = formula;
  j["inputs"] = inputs_json.empty() ? nlohmann::ordered_json::object()
                                    : nlohmann::ordered_json::parse(inputs_json);
  return j.dump(2);
}

SelfEnergyResult coulomb_self_energy(const CoulombSystem& sys) {
  check_coulomb(sys);
  if (sys.geometry.dim < 2) {
    throw DivergentIntegral("1/s diverges at s -> 0 in one dimension (needs m >= -(n-1) = 0)");
  }
  SelfEnergyResult r;
  r.value = pair_count(sys.charges) * sys.charge * sys.charge *
            uniform_moment(sys.geometry, -1);
  r.interaction = "coulomb";
  r.density = "uniform";
  r.particles = sys.charges;
  r.convention = "exact pair count Z(Z-1)/2";
  r.formula = "Z(Z-1)/2 e^2 <1/s>";
  r.inputs_json = coulomb_inputs(sys);
  return r;
}

SelfEnergyResult coulomb_self_energy(const CoulombSystem& sys, const DistanceDistribution& dist) {
  check_coulomb(sys);
  SelfEnergyResult r;
  r.value = pair_count(sys.charges) * sys.charge * sys.charge *
            pairwise_expectation(dist, Potential::power_law(1.0, -1));
  r.interaction = "coulomb";
  r.density = dist.describe();
  r.particles = sys.charges;
  r.convention = "exact pair count Z(Z-1)/2";
  r.formula = "Z(Z-1)/2 e^2 int P(s)/s ds (quadrature)";
  r.inputs_json = coulomb_inputs(sys);
  return r;
}

SelfEnergyResult neutrino_self_energy_uniform(const NeutrinoSystem& sys,
                                              CutConvention convention) {
  check_neutrino(sys);
  if (sys.geometry.dim != 3) throw DomainError("neutrino-pair energy is defined for n = 3");
  const double radius = sys.geometry.radius;
  const double rc = sys.hard_core;
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  if (rc >= 2.0 * radius) throw DomainError("hard-core radius must be below 2R");
  const double bracket = 3.0 / (2.0 * rc * rc * std::pow(radius, 3)) -
                         9.0 / (4.0 * rc * std::pow(radius, 4)) + 9.0 / (8.0 * std::pow(radius, 5)) -
                         3.0 * rc / (16.0 * std::pow(radius, 6));
  const double gf2 = sys.fermi_constant * sys.fermi_constant;
  SelfEnergyResult r;
  r.value = pair_count(sys.neutrons) * bracket * gf2 / (4.0 * std::pow(std::numbers::pi, 3));
  r.interaction = "neutrino-pair";
  r.density = "uniform";
  r.particles = sys.neutrons;
  r.cutoff = rc;
  r.formula = "N(N-1)/2 (3/(2 rc^2 R^3) - 9/(4 rc R^4) + 9/(8 R^5) - 3 rc/(16 R^6)) G_F^2/(4 pi^3)";
  if (convention == CutConvention::Untruncated) {
    r.convention = "untruncated P_3 integrated from r_c";
  } else {
    // Dividing by the retained mass turns the cut integral into the integral
    // against the law renormalized on [r_c, 2R].
    r.value /= 1.0 - uniform_cdf(sys.geometry, rc);
    r.convention = "P_3 renormalized on [r_c, 2R]";
    r.formula += " / (1 - D_3(r_c))";
  }
  r.inputs_json = neutrino_inputs(sys, false);
  return r;
}

SelfEnergyResult neutrino_self_energy_gaussian(const NeutrinoSystem& sys) {
  check_neutrino(sys);
  if (!(sys.sigma > 0.0)) throw DomainError("sigma must be positive");
  const double rc = sys.hard_core;
  const double sigma = sys.sigma;
  const double x = rc * rc / (4.0 * sigma * sigma);
  const double bracket =
      std::exp(-x) / (rc * rc) - specfun::upper_incomplete_gamma(0.0, x) / (4.0 * sigma * sigma);
  const double n = static_cast<double>(sys.neutrons);
  SelfEnergyResult r;
  r.value = bracket * n * (n - 1) * sys.fermi_constant * sys.fermi_constant /
            (32.0 * std::pow(sigma, 3) * std::pow(std::numbers::pi, 3.5));
  r.interaction = "neutrino-pair";
  r.density = "gaussian";
  r.particles = sys.neutrons;
  r.cutoff = rc;
  r.convention = "gaussian P_3 integrated from r_c";
  r.formula = "[e^{-x}/rc^2 - Gamma(0,x)/(4 sigma^2)] N(N-1) G_F^2/(32 sigma^3 pi^{7/2})";
  r.inputs_json = neutrino_inputs(sys, true);
  return r;
}

SelfEnergyResult neutrino_self_energy(const NeutrinoSystem& sys,
                                      const DistanceDistribution& dist) {
  check_neutrino(sys);
  if (dist.dim() != 3) throw DomainError("neutrino-pair energy is defined for n = 3");
  const double gf2 = sys.fermi_constant * sys.fermi_constant;
  SelfEnergyResult r;
  r.value = pair_count(sys.neutrons) * gf2 / (4.0 * std::pow(std::numbers::pi, 3)) *
            pairwise_expectation(dist, Potential::power_law(1.0, -5), sys.hard_core);
  r.interaction = "neutrino-pair";
  r.density = dist.describe();
  r.particles = sys.neutrons;
  r.cutoff = sys.hard_core;
  r.convention = "pair law integrated from r_c";
  r.formula = "N(N-1)/2 G_F^2/(4 pi^3) int_{rc} P(s) s^-5 ds (quadrature)";
  r.inputs_json = neutrino_inputs(sys, false);
  return r;
}

}  // namespace nball

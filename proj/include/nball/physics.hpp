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

// Pairwise self-energies W = (pairs) * int P(s) V(s) ds.

#include <functional>
#include <string>

#include "nball/distributions.hpp"

namespace nball {

/// Pair potential V(s). `power_near_zero` is the exponent p of V ~ s^p as
/// s -> 0, used to detect divergence without a cutoff.
struct Potential {
  std::function<double(double)> v;
  double power_near_zero = 0.0;
  std::string label;

  /// coeff * s^m
  static Potential power_law(double coeff, int m);
};

/// int_{max(cut, support_min)}^{support_max} P(s) V(s) ds by adaptive
/// quadrature. With no effective cutoff, V ~ s^p needs p >= -(n-1), else
/// DivergentIntegral.
double pairwise_expectation(const DistanceDistribution& dist, const Potential& potential,
                            double lower_cut = 0.0);

struct CoulombSystem {
  int charges = 2;         // Z
  double charge = 1.0;     // e, any consistent units
  BallGeometry geometry{3, 1.0};
};

struct NeutrinoSystem {
  int neutrons = 2;        // N
  double fermi_constant = 1.0;
  // Vector couplings, echoed in results. The closed forms below carry G_F
  // only, so these do not scale the energy.
  double a_e = 0.964;
  double a_p = 0.036;
  double a_n = -0.5;
  double hard_core = 0.5;  // r_c
  BallGeometry geometry{3, 1.0};
  double sigma = 1.0;      // Gaussian width, for the Gaussian energy
};

/// Which pair law a hard-core energy integrates: the untruncated uniform law
/// cut at r_c (the default, matching the published bracket), or the law
/// renormalized on [r_c, 2R].
enum class CutConvention { Untruncated, Renormalized };

struct SelfEnergyResult {
  double value = 0.0;
  std::string interaction;  // "coulomb" | "neutrino-pair"
  std::string density;
  long long particles = 0;
  double cutoff = 0.0;
  std::string convention;
  std::string formula;
  std::string inputs_json;  // echo of the system

  std::string to_json() const;
};

/// Z(Z-1)/2 e^2 <1/s>; uniform closed form via the m = -1 moment (n >= 2).
SelfEnergyResult coulomb_self_energy(const CoulombSystem& sys);
/// Same for any pair law by quadrature.
SelfEnergyResult coulomb_self_energy(const CoulombSystem& sys, const DistanceDistribution& dist);

/// N(N-1)/2 (3/(2 r_c^2 R^3) - 9/(4 r_c R^4) + 9/(8 R^5) - 3 r_c/(16 R^6)) G_F^2 / 4 pi^3.
SelfEnergyResult neutrino_self_energy_uniform(const NeutrinoSystem& sys,
                                              CutConvention convention = CutConvention::Untruncated);

/// [e^{-x}/r_c^2 - Gamma(0, x)/(4 sigma^2)] N(N-1) G_F^2 / (32 sigma^3 pi^{7/2}),
/// x = r_c^2 / 4 sigma^2.
SelfEnergyResult neutrino_self_energy_gaussian(const NeutrinoSystem& sys);

/// N(N-1)/2 G_F^2/(4 pi^3) int_{r_c} P(s) s^-5 ds for any 3-d pair law.
SelfEnergyResult neutrino_self_energy(const NeutrinoSystem& sys, const DistanceDistribution& dist);

}  // namespace nball

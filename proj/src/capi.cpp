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

#include "nball/nball.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nball/distributions.hpp"
#include "nball/errors.hpp"
#include "nball/expr.hpp"
#include "nball/master.hpp"
#include "nball/physics.hpp"
#include "nball/rips.hpp"
#include "nball/rng.hpp"
#include "nball/sampling.hpp"

struct nball_engine {
  nball::rng::Engine engine;
};

struct nball_distribution {
  nball::DistanceDistribution dist;
  bool hard_core = false;
  double r_c = 0.0;
};

namespace {

thread_local std::string g_last_error;

nball_status fail(nball_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, mapping library exceptions onto status codes.
template <class F>
nball_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return NBALL_OK;
  } catch (const nball::DomainError& e) {
    return fail(NBALL_ERR_DOMAIN, e.what());
  } catch (const nball::ConfigError& e) {
    return fail(NBALL_ERR_CONFIG, e.what());
  } catch (const nball::NonConvergence& e) {
    return fail(NBALL_ERR_NONCONVERGENCE, e.what());
  } catch (const nball::DivergentIntegral& e) {
    return fail(NBALL_ERR_DIVERGENT, e.what());
  } catch (const nball::StreamDefect& e) {
    return fail(NBALL_ERR_STREAM_DEFECT, e.what());
  } catch (const nball::StreamExhausted& e) {
    return fail(NBALL_ERR_STREAM_EXHAUSTED, e.what());
  } catch (const nball::DegenerateDensity& e) {
    return fail(NBALL_ERR_DEGENERATE, e.what());
  } catch (const std::exception& e) {
    return fail(NBALL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NBALL_ERR_INTERNAL, "unknown exception");
  }
}

#define NBALL_REQUIRE(p)                                            \
  do {                                                              \
    if ((p) == nullptr) return fail(NBALL_ERR_NULL, #p " is NULL"); \
  } while (0)

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::string str(const char* s) { return s == nullptr ? std::string() : std::string(s); }

nball::BallGeometry geometry(int dim, double radius) {
  nball::BallGeometry g{dim, radius};
  g.validate();
  return g;
}

}  // namespace

extern "C" {

const char* nball_version(void) { return "1.0.0"; }

const char* nball_status_name(nball_status status) {
  switch (status) {
    case NBALL_OK: return "ok";
    case NBALL_ERR_DOMAIN: return "domain error";
    case NBALL_ERR_CONFIG: return "configuration error";
    case NBALL_ERR_NONCONVERGENCE: return "non-convergence";
    case NBALL_ERR_DIVERGENT: return "divergent integral";
    case NBALL_ERR_STREAM_DEFECT: return "stream defect";
    case NBALL_ERR_STREAM_EXHAUSTED: return "stream exhausted";
    case NBALL_ERR_DEGENERATE: return "degenerate density";
    case NBALL_ERR_NULL: return "null argument";
    case NBALL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nball_last_error(void) { return g_last_error.c_str(); }

void nball_free(char* p) { std::free(p); }

// ---- engines ----------------------------------------------------------------

nball_status nball_engine_create(const char* algorithm, uint64_t seed, double alpha,
                                 nball_engine** out) {
  NBALL_REQUIRE(algorithm);
  NBALL_REQUIRE(out);
  return guard([&] {
    const auto alg = nball::rng::parse_algorithm(algorithm);
    *out = new nball_engine{nball::rng::make_engine(alg, seed, alpha)};
  });
}

nball_status nball_engine_create_external(const char* path, nball_engine** out) {
  NBALL_REQUIRE(path);
  NBALL_REQUIRE(out);
  return guard([&] { *out = new nball_engine{nball::rng::make_external_engine(path)}; });
}

nball_status nball_engine_create_external_words(const uint64_t* words, size_t count,
                                                nball_engine** out) {
  NBALL_REQUIRE(out);
  if (count > 0) NBALL_REQUIRE(words);
  return guard([&] {
    std::vector<std::uint64_t> w(words, words + count);
    *out = new nball_engine{nball::rng::make_external_engine(std::move(w))};
  });
}

void nball_engine_destroy(nball_engine* engine) { delete engine; }

nball_status nball_engine_next_uniform(nball_engine* engine, double* out) {
  NBALL_REQUIRE(engine);
  NBALL_REQUIRE(out);
  return guard([&] { *out = engine->engine.next_uniform(); });
}

nball_status nball_engine_describe(const nball_engine* engine, char** out) {
  NBALL_REQUIRE(engine);
  NBALL_REQUIRE(out);
  return guard([&] { *out = dup(nball::rng::describe(engine->engine.info())); });
}

// ---- distributions ----------------------------------------------------------

nball_status nball_distribution_create(const char* density, int dim, double radius, double sigma,
                                       double hard_core, nball_distribution** out) {
  NBALL_REQUIRE(density);
  NBALL_REQUIRE(out);
  return guard([&] {
    using nball::DistanceDistribution;
    const std::string spec = density;
    if (!(hard_core >= 0.0)) throw nball::ConfigError("hard-core radius must be >= 0");
    if (spec == "gaussian") {
      if (hard_core > 0.0) throw nball::ConfigError("hard core applies to the uniform law only");
      *out = new nball_distribution{DistanceDistribution::gaussian(dim, sigma)};
      return;
    }
    const auto geom = geometry(dim, radius);
    if (spec == "uniform") {
      if (hard_core > 0.0) {
        *out = new nball_distribution{DistanceDistribution::hard_core(geom, hard_core), true,
                                      hard_core};
      } else {
        *out = new nball_distribution{DistanceDistribution::uniform(geom)};
      }
      return;
    }
    if (hard_core > 0.0) throw nball::ConfigError("hard core applies to the uniform law only");
    const auto model = nball::parse_density_spec(spec, geom, sigma, true);
    if (!nball::is_radial(model)) {
      throw nball::ConfigError("density '" + spec +
                               "' is not radially symmetric; use the Monte Carlo estimate");
    }
    if (const auto* s = std::get_if<nball::density::RadialShells>(&model);
        s != nullptr && dim == 3 && spec.rfind("two-shell", 0) == 0) {
      *out = new nball_distribution{
          DistanceDistribution::two_shell(radius, s->densities[0], s->densities[1])};
      return;
    }
    *out = new nball_distribution{DistanceDistribution(
        std::make_shared<nball::SymmetricDistanceModel>(geom, model))};
  });
}

void nball_distribution_destroy(nball_distribution* dist) { delete dist; }

nball_status nball_distribution_pdf(const nball_distribution* dist, double s, double* out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] { *out = dist->dist.pdf(s); });
}

nball_status nball_distribution_cdf(const nball_distribution* dist, double x, double* out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] { *out = dist->dist.cdf(x); });
}

nball_status nball_distribution_moment(const nball_distribution* dist, int m, double* out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] { *out = dist->dist.moment(m); });
}

nball_status nball_distribution_moment_json(const nball_distribution* dist, int m, char** out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] {
    nlohmann::ordered_json j;
    j["distribution"] = dist->dist.describe();
    j["m"] = m;
    if (dist->hard_core) {
      const auto r = nball::hardcore_moment_detailed(dist->dist.geometry(), dist->r_c, m);
      j["value"] = r.value;
      j["formula"] = r.formula;
      if (!r.warning.empty()) j["warning"] = r.warning;
    } else {
      j["value"] = dist->dist.moment(m);
      const auto& d = dist->dist;
      std::string formula = "quadrature of s^m P(s)";
      if (d.method() == nball::Method::ClosedForm) {
        if (d.describe().rfind("uniform", 0) == 0) {
          formula = "2^(n+m) (n/(n+m)) B(n/2+1/2, n/2+1/2+m/2) / B(n/2+1/2, 1/2) R^m";
        } else if (d.describe().rfind("gaussian", 0) == 0) {
          formula = "(2 sigma)^m Gamma((n+m)/2) / Gamma(n/2)";
        }
      }
      j["formula"] = m == 0 ? std::string("normalization") : formula;
    }
    *out = dup(j.dump(2));
  });
}

nball_status nball_distribution_support(const nball_distribution* dist, double* lo, double* hi,
                                        double* integration_hi) {
  NBALL_REQUIRE(dist);
  return guard([&] {
    if (lo) *lo = dist->dist.support_min();
    if (hi) *hi = dist->dist.support_max();
    if (integration_hi) *integration_hi = dist->dist.integration_max();
  });
}

nball_status nball_distribution_is_closed_form(const nball_distribution* dist, int* out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] { *out = dist->dist.method() == nball::Method::ClosedForm ? 1 : 0; });
}

nball_status nball_distribution_describe(const nball_distribution* dist, char** out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] { *out = dup(dist->dist.describe()); });
}

nball_status nball_pairwise_expectation_power(const nball_distribution* dist, double coeff,
                                              int m, double lower_cut, double* out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] {
    *out = nball::pairwise_expectation(dist->dist, nball::Potential::power_law(coeff, m),
                                       lower_cut);
  });
}

// ---- Monte Carlo master formula ---------------------------------------------

nball_status nball_general_pdf_mc(const char* density, int dim, double radius,
                                  const double* grid, size_t grid_size, uint64_t samples,
                                  nball_engine* engine, int jobs, double* values,
                                  double* stderrs) {
  NBALL_REQUIRE(density);
  NBALL_REQUIRE(grid);
  NBALL_REQUIRE(engine);
  NBALL_REQUIRE(values);
  NBALL_REQUIRE(stderrs);
  return guard([&] {
    const auto geom = geometry(dim, radius);
    const auto model = nball::parse_density_spec(density, geom, 1.0, true);
    const auto est = nball::general_pdf_mc(
        geom, model, std::span<const double>(grid, grid_size), samples, engine->engine, jobs);
    std::copy(est.values.begin(), est.values.end(), values);
    std::copy(est.stderrs.begin(), est.stderrs.end(), stderrs);
  });
}

// ---- RIPS -------------------------------------------------------------------

void nball_rips_options_init(nball_rips_options* opt) {
  if (opt == nullptr) return;
  opt->dim = 3;
  opt->density = "uniform";
  opt->radius = 1.0;
  opt->sigma = 1.0;
  opt->triples = 1000000;
  opt->mapping = nullptr;
  opt->z_threshold = 4.0;
  opt->shards = 1;
  opt->jobs = 1;
}

nball_status nball_rips_run(const nball_engine* engine, const nball_rips_options* opt,
                            const char* format, char** out, int* pass) {
  NBALL_REQUIRE(engine);
  NBALL_REQUIRE(opt);
  NBALL_REQUIRE(out);
  return guard([&] {
    nball::RipsConfig cfg;
    cfg.dim = opt->dim;
    const std::string density = opt->density ? opt->density : "uniform";
    if (density == "uniform") {
      cfg.density = nball::RipsDensity::Uniform;
    } else if (density == "gaussian") {
      cfg.density = nball::RipsDensity::Gaussian;
    } else {
      throw nball::ConfigError("RIPS density must be uniform or gaussian");
    }
    cfg.radius = opt->radius;
    cfg.sigma = opt->sigma;
    cfg.n_triples = opt->triples;
    if (opt->mapping) cfg.mapping = nball::parse_mapping(opt->mapping);
    cfg.z_threshold = opt->z_threshold > 0.0 ? opt->z_threshold : 4.0;
    cfg.shards = opt->shards;
    cfg.jobs = opt->jobs;
    const std::string fmt = str(format).empty() ? "json" : str(format);
    if (fmt != "json" && fmt != "csv") throw nball::ConfigError("format must be json or csv");
    const auto rep = nball::rips_run(cfg, engine->engine);
    if (pass) *pass = rep.pass ? 1 : 0;
    *out = dup(fmt == "json" ? rep.to_json()
                             : nball::RipsReport::csv_header() + "\n" + rep.csv_row() + "\n");
  });
}

nball_status nball_rips_table(const nball_engine* const* engines, size_t engine_count,
                              const int* dims, size_t dim_count, uint64_t triples,
                              const char* mapping, int jobs, double radius, const char* format,
                              char** out, int* all_pass) {
  NBALL_REQUIRE(engines);
  NBALL_REQUIRE(dims);
  NBALL_REQUIRE(out);
  return guard([&] {
    std::vector<nball::rng::Engine> es;
    for (size_t i = 0; i < engine_count; ++i) {
      if (engines[i] == nullptr) throw nball::ConfigError("engine list contains NULL");
      es.push_back(engines[i]->engine);
    }
    std::optional<nball::Mapping> m;
    if (mapping) m = nball::parse_mapping(mapping);
    const auto t = nball::table1_harness(es, std::vector<int>(dims, dims + dim_count), triples, m,
                                         jobs, radius);
    const std::string fmt = str(format).empty() ? "text" : str(format);
    if (fmt == "text") {
      *out = dup(t.format());
    } else if (fmt == "json") {
      *out = dup(t.to_json());
    } else if (fmt == "csv") {
      *out = dup(t.to_csv());
    } else {
      throw nball::ConfigError("format must be text, json or csv");
    }
    if (all_pass) *all_pass = t.all_pass() ? 1 : 0;
  });
}

double nball_rips_exact_uniform(int dim, double radius) {
  try {
    return nball::rips_exact_uniform(dim, radius);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double nball_rips_exact_gaussian(int dim, double sigma) {
  try {
    return nball::rips_exact_gaussian(dim, sigma);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

// ---- self-energies ----------------------------------------------------------

nball_status nball_selfenergy_coulomb(int charges, double charge, const nball_distribution* dist,
                                      char** out) {
  NBALL_REQUIRE(dist);
  NBALL_REQUIRE(out);
  return guard([&] {
    nball::CoulombSystem sys;
    sys.charges = charges;
    sys.charge = charge;
    sys.geometry = dist->dist.geometry();
    const bool closed = !dist->hard_core && dist->dist.method() == nball::Method::ClosedForm &&
                        dist->dist.describe().rfind("uniform", 0) == 0;
    const auto r = closed ? nball::coulomb_self_energy(sys)
                          : nball::coulomb_self_energy(sys, dist->dist);
    *out = dup(r.to_json());
  });
}

void nball_neutrino_options_init(nball_neutrino_options* opt) {
  if (opt == nullptr) return;
  nball::NeutrinoSystem d;
  opt->neutrons = d.neutrons;
  opt->fermi_constant = d.fermi_constant;
  opt->a_e = d.a_e;
  opt->a_p = d.a_p;
  opt->a_n = d.a_n;
  opt->hard_core = d.hard_core;
  opt->density = "uniform";
  opt->radius = 1.0;
  opt->sigma = 1.0;
  opt->renormalized = 0;
}

nball_status nball_selfenergy_neutrino(const nball_neutrino_options* opt, char** out) {
  NBALL_REQUIRE(opt);
  NBALL_REQUIRE(out);
  return guard([&] {
    nball::NeutrinoSystem sys;
    sys.neutrons = opt->neutrons;
    sys.fermi_constant = opt->fermi_constant;
    sys.a_e = opt->a_e;
    sys.a_p = opt->a_p;
    sys.a_n = opt->a_n;
    sys.hard_core = opt->hard_core;
    sys.sigma = opt->sigma;
    sys.geometry = nball::BallGeometry{3, opt->radius};
    if (!(opt->hard_core > 0.0)) {
      throw nball::DivergentIntegral(
          "neutrino-pair potential ~ s^-5 diverges at s -> 0 in 3 dimensions (moment rule "
          "needs m >= -(n-1) = -2); set a positive hard-core radius");
    }
    const std::string density = opt->density ? opt->density : "uniform";
    nball::SelfEnergyResult r;
    if (density == "uniform") {
      r = nball::neutrino_self_energy_uniform(sys, opt->renormalized
                                                       ? nball::CutConvention::Renormalized
                                                       : nball::CutConvention::Untruncated);
    } else if (density == "gaussian") {
      r = nball::neutrino_self_energy_gaussian(sys);
    } else {
      nball_distribution* d = nullptr;
      if (nball_distribution_create(density.c_str(), 3, opt->radius, opt->sigma, 0.0, &d) !=
          NBALL_OK) {
        throw nball::ConfigError(g_last_error);
      }
      std::unique_ptr<nball_distribution> owner(d);
      r = nball::neutrino_self_energy(sys, d->dist);
    }
    *out = dup(r.to_json());
  });
}

// ---- histograms -------------------------------------------------------------

nball_status nball_pair_histogram_csv(const char* density, int dim, double radius, double sigma,
                                      int truncate, const char* mapping, nball_engine* engine,
                                      uint64_t pairs, int bins, char** out, uint64_t* overflow) {
  NBALL_REQUIRE(density);
  NBALL_REQUIRE(engine);
  NBALL_REQUIRE(out);
  return guard([&] {
    const std::string spec = density;
    nball::BallGeometry geom{dim, radius};
    if (spec == "gaussian" && !truncate) geom.radius = std::numeric_limits<double>::infinity();
    if (dim < 1) throw nball::ConfigError("dimension must be >= 1");
    const auto model = nball::parse_density_spec(spec, geom, sigma, truncate != 0);
    const nball::Mapping m = mapping ? nball::parse_mapping(mapping) : nball::Mapping::Rejection;
    const nball::DensitySampler sampler(geom, model, m);
    const auto h = nball::pair_distance_histogram(sampler, pairs, bins, engine->engine);
    if (overflow) *overflow = h.overflow;
    *out = dup(h.to_csv());
  });
}

}  // extern "C"

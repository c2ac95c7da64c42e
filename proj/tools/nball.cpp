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

// nball-cli: pair-distance laws, moments, RIPS generator tests and
// self-energies from the command line. Talks to the library only through
// the C interface.
//
// Exit codes: 0 ok / all RIPS verdicts pass, 1 a RIPS verdict failed,
// 2 bad configuration (including divergent integrals), 3 runtime failure
// (non-convergence, stream errors outside RIPS, internal).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nball/nball.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunConfig {
  std::string command;
  int dim = 3;
  double radius = 1.0;
  double sigma = 1.0;
  double rc = 0.0;
  std::string density = "uniform";
  // pdf / hist
  int grid = 256;
  double smax = 0.0;
  std::string mc_samples;
  std::string pairs = "100000";
  int bins = 100;
  bool truncate = false;
  // moment
  int m = 1;
  // rng
  std::string rng = "ran0";
  std::uint64_t seed = 1;
  double alpha = 0.0;
  std::string stream;
  // rips
  std::string triples = "1e6";
  std::string mapping;
  double z_threshold = 4.0;
  int shards = 1;
  int jobs = 1;
  bool table = false;
  std::vector<std::string> rngs{"ran0", "r31", "nws"};
  std::vector<int> dims{3, 5, 10};
  // selfenergy
  std::string interaction = "coulomb";
  int particles = 2;
  double charge = 1.0;
  double fermi = 1.0;
  bool renormalized = false;
  // output
  std::string format;
  std::string output;
};

// Thrown for configuration problems found before or during dispatch.
struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(nball_status s, const std::string& what) {
  if (s == NBALL_OK) return;
  const std::string msg = what + ": " + nball_status_name(s) + ": " + nball_last_error();
  switch (s) {
    case NBALL_ERR_DOMAIN:
    case NBALL_ERR_CONFIG:
    case NBALL_ERR_DIVERGENT:
    case NBALL_ERR_DEGENERATE:
      throw ConfigFailure(msg);
    default:
      throw RuntimeFailure(msg);
  }
}

struct CString {
  char* p = nullptr;
  ~CString() { nball_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct EngineDeleter {
  void operator()(nball_engine* e) const { nball_engine_destroy(e); }
};
using EnginePtr = std::unique_ptr<nball_engine, EngineDeleter>;

struct DistDeleter {
  void operator()(nball_distribution* d) const { nball_distribution_destroy(d); }
};
using DistPtr = std::unique_ptr<nball_distribution, DistDeleter>;

// Counts accept "1000000" and "1e6".
std::uint64_t parse_count(const std::string& text, const char* name) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v >= 0.0) || v != std::floor(v) || v > 1e18) {
    throw ConfigFailure(std::string(name) + ": expected a nonnegative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

// FNV-1a over a canonical rendering of the configuration (output path excluded).
std::string config_hash(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << c.command << "|dim=" << c.dim << "|radius=" << c.radius << "|sigma=" << c.sigma
     << "|rc=" << c.rc << "|density=" << c.density << "|grid=" << c.grid << "|smax=" << c.smax
     << "|mc=" << c.mc_samples << "|pairs=" << c.pairs << "|bins=" << c.bins
     << "|truncate=" << c.truncate << "|m=" << c.m << "|rng=" << c.rng << "|seed=" << c.seed
     << "|alpha=" << c.alpha << "|stream=" << c.stream << "|triples=" << c.triples
     << "|mapping=" << c.mapping << "|z=" << c.z_threshold << "|shards=" << c.shards
     << "|table=" << c.table << "|interaction=" << c.interaction << "|particles=" << c.particles
     << "|charge=" << c.charge << "|gf=" << c.fermi << "|renorm=" << c.renormalized
     << "|format=" << c.format;
  if (c.table) {
    for (const auto& r : c.rngs) os << "|r:" << r;
    for (int d : c.dims) os << "|d:" << d;
  }
  // jobs is left out on purpose: results do not depend on it.
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_preamble(const RunConfig& c) {
  return "# nball-cli " + c.command + " config-hash " + config_hash(c) + "\n";
}

std::string with_hash(const RunConfig& c, const std::string& json) {
  auto j = nlohmann::ordered_json::parse(json);
  nlohmann::ordered_json out;
  out["command"] = c.command;
  out["config_hash"] = config_hash(c);
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value();
  return out.dump(2) + "\n";
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw ConfigFailure("cannot open output file '" + c.output + "'");
  f << text;
  if (!f) throw RuntimeFailure("write to '" + c.output + "' failed");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

EnginePtr make_engine(const RunConfig& c, const std::string& rng) {
  nball_engine* e = nullptr;
  if (rng == "external") {
    if (c.stream.empty()) throw ConfigFailure("--rng external needs --stream PATH (or - for stdin)");
    check(nball_engine_create_external(c.stream.c_str(), &e), "external stream");
  } else {
    check(nball_engine_create(rng.c_str(), c.seed, c.alpha, &e), "rng");
  }
  return EnginePtr(e);
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (c.format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ConfigFailure("--format for " + c.command + " must be one of: " + list);
}

bool is_general(const std::string& density) { return density.rfind("general:", 0) == 0; }

int cmd_pdf(RunConfig& c) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"csv", "json"});
  if (c.grid < 2) throw ConfigFailure("--grid must be >= 2");
  const bool mc = !c.mc_samples.empty() || is_general(c.density);
  std::vector<double> grid(static_cast<std::size_t>(c.grid));
  std::vector<double> pdf(grid.size());
  std::vector<double> err;

  double hi = c.smax;
  if (!(hi > 0.0)) {
    if (c.density == "gaussian" && !mc) {
      hi = std::sqrt(2.0 * (c.dim - 1)) * c.sigma + 12.0 * c.sigma;
    } else {
      hi = 2.0 * c.radius;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = hi * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  }

  std::string engine_desc;
  if (mc) {
    if (!(c.smax == 0.0 || c.smax <= 2.0 * c.radius)) {
      throw ConfigFailure("--smax must not exceed 2R for the Monte Carlo estimate");
    }
    const std::uint64_t samples =
        parse_count(c.mc_samples.empty() ? "100000" : c.mc_samples, "--mc-samples");
    auto engine = make_engine(c, c.rng);
    CString d;
    check(nball_engine_describe(engine.get(), &d.p), "rng");
    engine_desc = d.str();
    err.resize(grid.size());
    check(nball_general_pdf_mc(c.density.c_str(), c.dim, c.radius, grid.data(), grid.size(),
                               samples, engine.get(), c.jobs, pdf.data(), err.data()),
          "pdf");
  } else {
    nball_distribution* raw = nullptr;
    check(nball_distribution_create(c.density.c_str(), c.dim, c.radius, c.sigma, c.rc, &raw),
          "density");
    DistPtr dist(raw);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      check(nball_distribution_pdf(dist.get(), grid[i], &pdf[i]), "pdf");
    }
  }

  if (c.format == "csv") {
    std::string out = csv_preamble(c);
    out += mc ? "s,pdf,stderr\n" : "s,pdf\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out += num(grid[i]) + "," + num(pdf[i]);
      if (mc) out += "," + num(err[i]);
      out += "\n";
    }
    emit(c, out);
  } else {
    nlohmann::ordered_json j;
    j["density"] = c.density;
    j["dim"] = c.dim;
    j["method"] = mc ? "monte-carlo" : "deterministic";
    if (mc) j["rng"] = engine_desc;
    j["s"] = grid;
    j["pdf"] = pdf;
    if (mc) j["stderr"] = err;
    emit(c, with_hash(c, j.dump()));
  }
  return kExitPass;
}

int cmd_moment(RunConfig& c) {
  if (c.format.empty()) c.format = "json";
  require_format(c, {"csv", "json"});
  nball_distribution* raw = nullptr;
  check(nball_distribution_create(c.density.c_str(), c.dim, c.radius, c.sigma, c.rc, &raw),
        "density");
  DistPtr dist(raw);
  CString js;
  check(nball_distribution_moment_json(dist.get(), c.m, &js.p), "moment");
  if (c.format == "json") {
    emit(c, with_hash(c, js.str()));
  } else {
    const auto j = nlohmann::ordered_json::parse(js.str());
    std::string out = csv_preamble(c) + "density,dim,m,value\n";
    out += c.density + "," + std::to_string(c.dim) + "," + std::to_string(c.m) + "," +
           num(j["value"].get<double>()) + "\n";
    emit(c, out);
  }
  return kExitPass;
}

int cmd_rips_table(RunConfig& c) {
  if (c.format.empty()) c.format = "text";
  require_format(c, {"text", "csv", "json"});
  std::vector<EnginePtr> owned;
  std::vector<const nball_engine*> engines;
  for (const auto& r : c.rngs) {
    owned.push_back(make_engine(c, r));
    engines.push_back(owned.back().get());
  }
  const std::uint64_t triples = parse_count(c.triples, "--triples");
  CString out;
  int all_pass = 0;
  check(nball_rips_table(engines.data(), engines.size(), c.dims.data(), c.dims.size(), triples,
                         c.mapping.empty() ? nullptr : c.mapping.c_str(), c.jobs, c.radius,
                         c.format.c_str(), &out.p, &all_pass),
        "rips");
  if (c.format == "json") {
    emit(c, with_hash(c, out.str()));
  } else if (c.format == "csv") {
    emit(c, csv_preamble(c) + out.str());
  } else {
    emit(c, out.str());
  }
  return all_pass ? kExitPass : kExitFail;
}

int cmd_rips(RunConfig& c) {
  if (c.table) return cmd_rips_table(c);
  if (c.format.empty()) c.format = "json";
  require_format(c, {"csv", "json"});
  auto engine = make_engine(c, c.rng);
  nball_rips_options opt;
  nball_rips_options_init(&opt);
  opt.dim = c.dim;
  opt.density = c.density.c_str();
  opt.radius = c.radius;
  opt.sigma = c.sigma;
  opt.triples = parse_count(c.triples, "--triples");
  opt.mapping = c.mapping.empty() ? nullptr : c.mapping.c_str();
  opt.z_threshold = c.z_threshold;
  opt.shards = c.shards;
  opt.jobs = c.jobs;
  CString out;
  int pass = 0;
  check(nball_rips_run(engine.get(), &opt, c.format.c_str(), &out.p, &pass), "rips");
  const std::string text = out.str();
  if (c.format == "json") {
    const auto j = nlohmann::ordered_json::parse(text);
    if (j.contains("error_kind") && j["error_kind"] == "stream_exhausted") {
      std::cerr << "rips: external stream exhausted: " << j["error"].get<std::string>() << "\n";
    }
    emit(c, with_hash(c, text));
  } else {
    if (text.find(",stream_exhausted") != std::string::npos) {
      std::cerr << "rips: external stream exhausted before " << opt.triples
                << " triples were drawn\n";
    }
    emit(c, csv_preamble(c) + text);
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_selfenergy(RunConfig& c) {
  if (c.format.empty()) c.format = "json";
  require_format(c, {"csv", "json"});
  CString out;
  if (c.interaction == "coulomb") {
    nball_distribution* raw = nullptr;
    check(nball_distribution_create(c.density.c_str(), c.dim, c.radius, c.sigma, c.rc, &raw),
          "density");
    DistPtr dist(raw);
    check(nball_selfenergy_coulomb(c.particles, c.charge, dist.get(), &out.p), "selfenergy");
  } else if (c.interaction == "neutrino" || c.interaction == "nunubar") {
    if (c.dim != 3) throw ConfigFailure("neutrino-pair energy is defined for --dim 3");
    nball_neutrino_options opt;
    nball_neutrino_options_init(&opt);
    opt.neutrons = c.particles;
    opt.fermi_constant = c.fermi;
    opt.hard_core = c.rc;
    opt.density = c.density.c_str();
    opt.radius = c.radius;
    opt.sigma = c.sigma;
    opt.renormalized = c.renormalized ? 1 : 0;
    check(nball_selfenergy_neutrino(&opt, &out.p), "selfenergy");
  } else {
    throw ConfigFailure("--interaction must be coulomb or neutrino");
  }
  if (c.format == "json") {
    emit(c, with_hash(c, out.str()));
  } else {
    const auto j = nlohmann::ordered_json::parse(out.str());
    std::string csv = csv_preamble(c) + "interaction,density,particles,cutoff,value\n";
    csv += j["interaction"].get<std::string>() + "," + j["density"].get<std::string>() + "," +
           std::to_string(j["particles"].get<long long>()) + "," +
           num(j["cutoff"].get<double>()) + "," + num(j["value"].get<double>()) + "\n";
    emit(c, csv);
  }
  return kExitPass;
}

int cmd_hist(RunConfig& c) {
  if (c.format.empty()) c.format = "csv";
  require_format(c, {"csv"});
  auto engine = make_engine(c, c.rng);
  CString out;
  std::uint64_t overflow = 0;
  check(nball_pair_histogram_csv(c.density.c_str(), c.dim, c.radius, c.sigma, c.truncate ? 1 : 0,
                                 c.mapping.empty() ? nullptr : c.mapping.c_str(), engine.get(),
                                 parse_count(c.pairs, "--pairs"), c.bins, &out.p, &overflow),
        "hist");
  std::string text = csv_preamble(c);
  if (overflow > 0) text += "# overflow " + std::to_string(overflow) + "\n";
  emit(c, text + out.str());
  return kExitPass;
}

void add_geometry(CLI::App* sub, RunConfig& c) {
  sub->add_option("--dim,-n", c.dim, "Dimension n")->check(CLI::Range(1, 4096));
  sub->add_option("--radius,-R", c.radius, "Ball radius R");
  sub->add_option("--sigma", c.sigma, "Gaussian width");
  sub->add_option("--density", c.density,
                  "uniform | gaussian | two-shell:R1:R2 | shells:B=D,... | radial:EXPR | "
                  "general:x4y4 | general:EXPR");
}

void add_rng(CLI::App* sub, RunConfig& c) {
  sub->add_option("--rng", c.rng, "ran0 | r31 | nws | external");
  sub->add_option("--seed", c.seed, "Seed (NWS: counter offset)");
  sub->add_option("--alpha", c.alpha, "NWS constant (default sqrt(2)-1)");
  sub->add_option("--stream", c.stream, "Raw little-endian 64-bit words, - for stdin");
}

void add_output(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "csv | json (rips --table also: text)");
  sub->add_option("--output,-o", c.output, "Output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Pair-distance distributions in n-balls, RIPS generator test, self-energies"};
  app.set_version_flag("--version", std::string(nball_version()));
  app.require_subcommand(1);

  auto* pdf = app.add_subcommand("pdf", "Pair-distance pdf on a grid");
  add_geometry(pdf, c);
  pdf->add_option("--rc", c.rc, "Hard-core radius (uniform)");
  pdf->add_option("--grid", c.grid, "Number of grid points");
  pdf->add_option("--smax", c.smax, "Grid upper end (default 2R)");
  pdf->add_option("--mc-samples", c.mc_samples,
                  "Monte Carlo samples per grid point (forces the estimate)");
  pdf->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_rng(pdf, c);
  add_output(pdf, c);

  auto* moment = app.add_subcommand("moment", "Moment <s^m> with the formula used");
  add_geometry(moment, c);
  moment->add_option("--rc", c.rc, "Hard-core radius (uniform)");
  moment->add_option("--m,-m", c.m, "Moment order")->required();
  add_output(moment, c);

  auto* rips = app.add_subcommand("rips", "RIPS test of a random number generator");
  rips->add_option("--dim,-n", c.dim, "Dimension n")->check(CLI::Range(1, 4096));
  rips->add_option("--radius,-R", c.radius, "Ball radius R");
  rips->add_option("--sigma", c.sigma, "Gaussian width");
  rips->add_option("--density", c.density, "uniform | gaussian");
  rips->add_option("--triples", c.triples, "Number of triples N");
  rips->add_option("--mapping", c.mapping, "rejection | polar (default: rejection, polar n >= 8)");
  rips->add_option("--z-threshold", c.z_threshold, "Pass if |z| below this");
  rips->add_option("--shards", c.shards, "Independent substreams")->check(CLI::PositiveNumber);
  rips->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  rips->add_flag("--table", c.table, "Comparison table over --rngs x --dims");
  rips->add_option("--rngs", c.rngs, "Engines for --table")->delimiter(',');
  rips->add_option("--dims", c.dims, "Dimensions for --table")->delimiter(',');
  add_rng(rips, c);
  add_output(rips, c);

  auto* self = app.add_subcommand("selfenergy", "Pairwise self-energy");
  add_geometry(self, c);
  self->add_option("--interaction", c.interaction, "coulomb | neutrino");
  self->add_option("--particles,-Z,-N", c.particles, "Particle count Z or N");
  self->add_option("--charge,-e", c.charge, "Charge e (coulomb)");
  self->add_option("--gf", c.fermi, "Fermi constant G_F (neutrino)");
  self->add_option("--rc", c.rc, "Hard-core radius r_c");
  self->add_flag("--renormalized", c.renormalized,
                 "Neutrino, uniform: integrate the law renormalized on [r_c, 2R]");
  add_output(self, c);

  auto* hist = app.add_subcommand("hist", "Sampled pair-distance histogram");
  add_geometry(hist, c);
  hist->add_option("--pairs", c.pairs, "Number of pairs");
  hist->add_option("--bins", c.bins, "Number of bins");
  hist->add_option("--mapping", c.mapping, "rejection | polar");
  hist->add_flag("--truncate", c.truncate, "Truncate the Gaussian at R");
  add_rng(hist, c);
  add_output(hist, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (c.command == "pdf") return cmd_pdf(c);
    if (c.command == "moment") return cmd_moment(c);
    if (c.command == "rips") return cmd_rips(c);
    if (c.command == "selfenergy") return cmd_selfenergy(c);
    if (c.command == "hist") return cmd_hist(c);
  } catch (const ConfigFailure& e) {
    std::cerr << "nball-cli: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RuntimeFailure& e) {
    std::cerr << "nball-cli: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "nball-cli: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

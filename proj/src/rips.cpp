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

#include "nball/rips.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nball/errors.hpp"

namespace nball {

double rips_exact_uniform(int dim, double radius) {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  return -static_cast<double>(dim) * radius * radius / (dim + 2.0);
}

double rips_exact_gaussian(int dim, double sigma) {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  return -static_cast<double>(dim) * sigma * sigma;
}

Mapping default_mapping(int dim) { return dim >= 8 ? Mapping::Polar : Mapping::Rejection; }

namespace {

// Running mean and sum of squared deviations.
struct Welford {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }
  void merge(const Welford& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / total;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }
};

struct ShardResult {
  Welford acc;
  std::uint64_t variates = 0;
  std::string error;
  std::string kind;
};

void run_shard(const DensitySampler& sampler, std::uint64_t triples, rng::Engine& engine,
               ShardResult& out) {
  const int n = sampler.geometry().dim;
  std::vector<double> p1(n), p2(n), p3(n);
  try {
    for (std::uint64_t t = 0; t < triples; ++t) {
      sampler(engine, p1);
      sampler(engine, p2);
      sampler(engine, p3);
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += (p2[i] - p1[i]) * (p3[i] - p2[i]);
      out.acc.add(dot);
    }
  } catch (const StreamExhausted& e) {
    out.error = e.what();
    out.kind = "stream_exhausted";
  } catch (const StreamDefect& e) {
    out.error = e.what();
    out.kind = "stream_defect";
  } catch (const Error& e) {
    out.error = e.what();
    out.kind = "error";
  }
  out.variates = engine.variates_consumed();
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

RipsReport rips_run(const RipsConfig& cfg, const rng::Engine& engine) {
  if (cfg.dim < 1) throw ConfigError("dimension must be >= 1");
  if (cfg.n_triples < 1000) throw ConfigError("RIPS needs at least 1000 triples");
  if (!(cfg.z_threshold > 0.0)) throw ConfigError("z threshold must be positive");
  if (cfg.shards < 1 || cfg.jobs < 1) throw ConfigError("shards and jobs must be >= 1");
  if (cfg.shards > 1 && engine.algorithm() == rng::Algorithm::External) {
    throw ConfigError("external streams cannot be sharded");
  }
  if (static_cast<std::uint64_t>(cfg.shards) > cfg.n_triples) {
    throw ConfigError("more shards than triples");
  }

  RipsReport rep;
  rep.dim = cfg.dim;
  rep.n_triples = cfg.n_triples;
  rep.z_threshold = cfg.z_threshold;
  rep.shards = cfg.shards;
  rep.rng = rng::describe(engine.info());
  rep.algorithm = rng::algorithm_name(engine.algorithm());
  rep.seed = engine.info().seed;
  rep.alpha = engine.info().alpha;

  BallGeometry geom{cfg.dim, cfg.radius};
  DensityModel density = density::Uniform{};
  Mapping mapping = cfg.mapping.value_or(default_mapping(cfg.dim));
  if (cfg.density == RipsDensity::Uniform) {
    if (!(cfg.radius > 0.0) || !std::isfinite(cfg.radius)) {
      throw ConfigError("radius must be positive and finite");
    }
    rep.exact_value = rips_exact_uniform(cfg.dim, cfg.radius);
    rep.geometry = "uniform R=" + number(cfg.radius);
    rep.mapping = mapping_name(mapping);
  } else {
    if (!(cfg.sigma > 0.0)) throw ConfigError("sigma must be positive");
    geom.radius = std::numeric_limits<double>::infinity();
    density = density::Gaussian{cfg.sigma, false};
    rep.exact_value = rips_exact_gaussian(cfg.dim, cfg.sigma);
    rep.geometry = "gaussian sigma=" + number(cfg.sigma);
    rep.mapping = "box-muller";
  }
  const DensitySampler sampler(geom, density, mapping);

  std::vector<ShardResult> shards(cfg.shards);
  std::vector<std::uint64_t> sizes(cfg.shards, cfg.n_triples / cfg.shards);
  for (std::uint64_t k = 0; k < cfg.n_triples % cfg.shards; ++k) ++sizes[k];

  if (cfg.shards == 1) {
    rng::Engine e = engine;
    run_shard(sampler, sizes[0], e, shards[0]);
  } else {
    const int workers = std::min(cfg.jobs, cfg.shards);
    auto work = [&](int w) {
      for (int k = w; k < cfg.shards; k += workers) {
        rng::Engine e = engine.substream(static_cast<std::uint64_t>(k) + 1);
        run_shard(sampler, sizes[k], e, shards[k]);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
  }

  Welford total;
  for (const auto& s : shards) {
    total.merge(s.acc);
    rep.variates_consumed += s.variates;
    if (rep.error.empty() && !s.error.empty()) {
      rep.error = s.error;
      rep.error_kind = s.kind;
    }
  }
  rep.empirical_mean = total.mean;
  if (total.count >= 2) {
    const double var = total.m2 / static_cast<double>(total.count - 1);
    rep.stderr_mean = std::sqrt(var / static_cast<double>(total.count));
  }
  if (rep.stderr_mean > 0.0) {
    rep.z_score = (rep.empirical_mean - rep.exact_value) / rep.stderr_mean;
  }
  rep.pass = rep.error.empty() && rep.stderr_mean > 0.0 &&
             std::abs(rep.z_score) <= cfg.z_threshold;
  if (!rep.error.empty()) rep.n_triples = total.count;
  return rep;
}

// ---- export ----------------------------------------------------------------

namespace {

nlohmann::ordered_json report_json(const RipsReport& r) {
  nlohmann::ordered_json j;
  j["dim"] = r.dim;
  j["geometry"] = r.geometry;
  j["n_triples"] = r.n_triples;
  j["empirical_mean"] = r.empirical_mean;
  j["stderr"] = r.stderr_mean;
  j["exact_value"] = r.exact_value;
  j["z_score"] = r.z_score;
  j["z_threshold"] = r.z_threshold;
  j["verdict"] = r.verdict();
  j["rng"] = {{"algorithm", r.algorithm},
              {"descriptor", r.rng},
              {"seed", r.seed},
              {"alpha", r.alpha},
              {"mapping", r.mapping},
              {"shards", r.shards}};
  j["variates_consumed"] = r.variates_consumed;
  if (!r.error.empty()) {
    j["error"] = r.error;
    j["error_kind"] = r.error_kind;
  }
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string RipsReport::to_json() const { return report_json(*this).dump(2); }

std::string RipsReport::csv_header() {
  return "rng,dim,n_triples,mean,stderr,exact,z,verdict,mapping,seed,alpha,shards,error,error_kind";
}

std::string RipsReport::csv_row() const {
  std::ostringstream os;
  os << csv_field(algorithm) << "," << dim << "," << n_triples << ","
     << format_table_value(empirical_mean) << "," << format_table_value(stderr_mean) << ","
     << format_table_value(exact_value) << "," << number(z_score) << "," << verdict() << ","
     << mapping << "," << seed << "," << number(alpha) << "," << shards << ","
     << csv_field(error) << "," << error_kind;
  return os.str();
}

std::string format_table_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  std::string s = buf;
  if (s.rfind("-0.", 0) == 0) return "-" + s.substr(2);
  if (s.rfind("0.", 0) == 0) return s.substr(1);
  return s;
}

bool RipsTable::all_pass() const {
  for (const auto& row : cells) {
    for (const auto& c : row) {
      if (!c.pass) return false;
    }
  }
  return true;
}

std::string RipsTable::format() const {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s", "RNG");
  os << buf;
  for (int d : dims) {
    std::snprintf(buf, sizeof buf, "| %-18s %-6s ", ("n=" + std::to_string(d)).c_str(), "Result");
    os << buf;
  }
  os << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%-10s", rows[r].c_str());
    os << buf;
    for (const auto& c : cells[r]) {
      const std::string value = c.error.empty() ? format_table_value(c.empirical_mean) + " +- " +
                                                      format_table_value(c.stderr_mean)
                                                : "error";
      std::snprintf(buf, sizeof buf, "| %-18s %-6s ", value.c_str(), c.pass ? "Pass" : "Fail");
      os << buf;
    }
    os << "\n";
  }
  std::snprintf(buf, sizeof buf, "%-10s", "Exact");
  os << buf;
  for (int d : dims) {
    std::snprintf(buf, sizeof buf, "| %-18s %-6s ",
                  format_table_value(rips_exact_uniform(d, radius)).c_str(), "");
    os << buf;
  }
  os << "\n";
  return os.str();
}

std::string RipsTable::to_json() const {
  nlohmann::ordered_json j;
  j["dims"] = dims;
  j["radius"] = radius;
  nlohmann::ordered_json exact = nlohmann::ordered_json::array();
  for (int d : dims) exact.push_back(rips_exact_uniform(d, radius));
  j["exact"] = exact;
  nlohmann::ordered_json rs = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    nlohmann::ordered_json row;
    row["rng"] = rows[r];
    row["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : cells[r]) row["cells"].push_back(report_json(c));
    rs.push_back(row);
  }
  j["rows"] = rs;
  return j.dump(2);
}

std::string RipsTable::to_csv() const {
  std::ostringstream os;
  os << RipsReport::csv_header() << "\n";
  for (const auto& row : cells) {
    for (const auto& c : row) os << c.csv_row() << "\n";
  }
  for (int d : dims) {
    os << "Exact," << d << ",,," << "," << format_table_value(rips_exact_uniform(d, radius))
       << ",,,,,,,\n";
  }
  return os.str();
}

RipsTable table1_harness(const std::vector<rng::Engine>& engines, const std::vector<int>& dims,
                         std::uint64_t n_triples, std::optional<Mapping> mapping, int jobs,
                         double radius) {
  if (engines.empty()) throw ConfigError("table harness needs at least one engine");
  if (dims.empty()) throw ConfigError("table harness needs at least one dimension");
  RipsTable t;
  t.dims = dims;
  t.radius = radius;
  for (const auto& e : engines) {
    t.rows.push_back(rng::algorithm_name(e.algorithm()));
    std::vector<RipsReport> row;
    for (int d : dims) {
      RipsConfig cfg;
      cfg.dim = d;
      cfg.radius = radius;
      cfg.n_triples = n_triples;
      cfg.mapping = mapping;
      cfg.jobs = jobs;
      try {
        row.push_back(rips_run(cfg, e));
      } catch (const Error& err) {
        RipsReport rep;
        rep.dim = d;
        rep.algorithm = rng::algorithm_name(e.algorithm());
        rep.rng = rng::describe(e.info());
        rep.exact_value = rips_exact_uniform(d, radius);
        rep.error = err.what();
        rep.error_kind = "config";
        row.push_back(rep);
      }
    }
    t.cells.push_back(std::move(row));
  }
  return t;
}

}  // namespace nball

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

#include "nball/rng.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nball/errors.hpp"

namespace nball::rng {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Ran0: return "RAN0";
    case Algorithm::R31: return "R31";
    case Algorithm::Nws: return "NWS";
    case Algorithm::External: return "External";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "ran0") return Algorithm::Ran0;
  if (lower == "r31") return Algorithm::R31;
  if (lower == "nws") return Algorithm::Nws;
  if (lower == "external") return Algorithm::External;
  throw ConfigError("unknown rng algorithm '" + name + "' (expected ran0, r31, nws, external)");
}

// ---- RAN0 ------------------------------------------------------------------

Ran0::Ran0(std::uint32_t seed) : state_(seed) {
  if (seed == 0 || seed >= kModulus) {
    throw ConfigError("RAN0 seed must lie in [1, 2^31 - 2]");
  }
}

std::uint32_t Ran0::jump(std::uint32_t state, std::uint64_t steps) {
  std::uint64_t result = 1;
  std::uint64_t base = kMultiplier;
  while (steps > 0) {
    if (steps & 1u) result = result * base % kModulus;
    base = base * base % kModulus;
    steps >>= 1;
  }
  return static_cast<std::uint32_t>(result * state % kModulus);
}

// ---- R31 -------------------------------------------------------------------

R31::R31(const std::array<std::uint32_t, kLong>& table) : table_(table) {
  std::uint32_t any = 0;
  bool identical = true;
  for (auto w : table_) {
    any |= w;
    identical = identical && w == table_[0];
  }
  if (any == 0) throw ConfigError("R31 lag table must not be all zero");
  degenerate_ = identical || any != ~0u;
}

R31 R31::from_seed(std::uint32_t seed) {
  Ran0 fill(seed);
  std::array<std::uint32_t, kLong> table{};
  for (auto& w : table) {
    const std::uint32_t hi = fill.step() >> 15;
    const std::uint32_t lo = fill.step() >> 15;
    w = (hi << 16) | lo;
  }
  return R31(table);
}

// ---- NWS -------------------------------------------------------------------

Nws::Nws(u128 alpha, std::uint64_t offset) : alpha_(alpha), counter_(offset) {
  if (alpha_ == 0) throw ConfigError("NWS alpha must have a nonzero fractional part");
}

u128 Nws::alpha_from_double(double alpha) {
  if (!std::isfinite(alpha)) throw ConfigError("NWS alpha must be finite");
  const double frac = alpha - std::floor(alpha);
  const double hi = std::floor(std::ldexp(frac, 64));
  const double lo = std::ldexp(std::ldexp(frac, 64) - hi, 64);
  return (static_cast<u128>(static_cast<std::uint64_t>(hi)) << 64) |
         static_cast<std::uint64_t>(lo);
}

// ---- External --------------------------------------------------------------

struct ExternalStream::Source {
  std::unique_ptr<std::ifstream> file;
  std::istream* in = nullptr;
  std::vector<std::uint64_t> words;
  std::size_t pos = 0;
  bool memory = false;
};

ExternalStream::ExternalStream(const std::string& path) : src_(std::make_shared<Source>()) {
  if (path == "-") {
    src_->in = &std::cin;
    source_ = "stdin";
  } else {
    src_->file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*src_->file) throw ConfigError("cannot open external stream '" + path + "'");
    src_->in = src_->file.get();
    source_ = path;
  }
}

ExternalStream::ExternalStream(std::vector<std::uint64_t> words)
    : src_(std::make_shared<Source>()), source_("memory") {
  src_->words = std::move(words);
  src_->memory = true;
}

std::uint64_t ExternalStream::next_word() {
  if (src_->memory) {
    if (src_->pos >= src_->words.size()) {
      throw StreamExhausted("external stream exhausted after " +
                            std::to_string(words_read_) + " words");
    }
    ++words_read_;
    return src_->words[src_->pos++];
  }
  unsigned char buf[8];
  if (!src_->in->read(reinterpret_cast<char*>(buf), 8)) {
    throw StreamExhausted("external stream '" + source_ + "' exhausted after " +
                          std::to_string(words_read_) + " words");
  }
  std::uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = (w << 8) | buf[i];
  ++words_read_;
  return w;
}

// ---- Engine ----------------------------------------------------------------

std::string describe(const EngineInfo& info) {
  std::ostringstream os;
  os << algorithm_name(info.algorithm);
  switch (info.algorithm) {
    case Algorithm::Ran0:
    case Algorithm::R31: os << " seed=" << info.seed; break;
    case Algorithm::Nws:
      os.precision(17);
      os << " alpha=" << info.alpha << " offset=" << info.offset;
      break;
    case Algorithm::External: os << " source=" << info.source; break;
  }
  if (info.substream != 0) os << " substream=" << info.substream;
  return os.str();
}

namespace {

constexpr std::uint64_t kRan0Stride = std::uint64_t{1} << 25;
constexpr std::uint64_t kNwsStride = std::uint64_t{1} << 40;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

Engine Engine::substream(std::uint64_t k) const {
  EngineInfo info = info_;
  info.substream = k;
  switch (info_.algorithm) {
    case Algorithm::Ran0: {
      const auto s = static_cast<std::uint32_t>(info_.seed);
      return Engine(Ran0(Ran0::jump(s, k * kRan0Stride)), info);
    }
    case Algorithm::R31: {
      std::uint64_t mixed = splitmix64(info_.seed * 0x100000001b3ull + k);
      auto s = static_cast<std::uint32_t>(mixed % (Ran0::kModulus - 1)) + 1;
      return Engine(R31::from_seed(s), info);
    }
    case Algorithm::Nws: {
      const auto& nws = std::get<Nws>(state_);
      info.offset = info_.offset + k * kNwsStride;
      return Engine(Nws(nws.alpha(), info.offset), info);
    }
    case Algorithm::External:
      break;
  }
  throw ConfigError("external streams cannot be split into substreams");
}

Engine make_engine(Algorithm algorithm, std::uint64_t seed, double alpha) {
  EngineInfo info;
  info.algorithm = algorithm;
  info.seed = seed;
  switch (algorithm) {
    case Algorithm::Ran0:
      if (seed == 0 || seed >= Ran0::kModulus) {
        throw ConfigError("RAN0 seed must lie in [1, 2147483646]");
      }
      return Engine(Ran0(static_cast<std::uint32_t>(seed)), info);
    case Algorithm::R31:
      if (seed == 0 || seed >= Ran0::kModulus) {
        throw ConfigError("R31 seed must lie in [1, 2147483646] (it seeds the RAN0 table fill)");
      }
      return Engine(R31::from_seed(static_cast<std::uint32_t>(seed)), info);
    case Algorithm::Nws: {
      info.offset = seed;
      if (alpha <= 0.0) {
        info.alpha = std::sqrt(2.0) - 1.0;
        return Engine(Nws(Nws::kSqrt2Minus1, seed), info);
      }
      info.alpha = alpha;
      return Engine(Nws(Nws::alpha_from_double(alpha), seed), info);
    }
    case Algorithm::External:
      break;
  }
  throw ConfigError("external engines are built with make_external_engine");
}

Engine make_external_engine(const std::string& path) {
  EngineInfo info;
  info.algorithm = Algorithm::External;
  ExternalStream s(path);
  info.source = s.source();
  return Engine(std::move(s), info);
}

Engine make_external_engine(std::vector<std::uint64_t> words) {
  EngineInfo info;
  info.algorithm = Algorithm::External;
  info.source = "memory";
  return Engine(ExternalStream(std::move(words)), info);
}

}  // namespace nball::rng

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

// Uniform-variate generators: RAN0 (Lehmer), R31 (GFSR, lags 31/3), the
// nested Weyl sequence, and an adapter over raw 64-bit words.

#include <array>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace nball::rng {

__extension__ typedef unsigned __int128 u128;

enum class Algorithm { Ran0, R31, Nws, External };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);  // throws ConfigError

/// Park-Miller minimal standard: I' = 16807 I mod (2^31 - 1), Schrage's
/// decomposition. Uniforms are I'/m and so never hit 0.
class Ran0 {
 public:
  static constexpr std::uint32_t kModulus = 2147483647u;
  static constexpr std::uint32_t kMultiplier = 16807u;

  explicit Ran0(std::uint32_t seed);

  std::uint32_t step() {
    constexpr std::int32_t q = 127773;  // m / a
    constexpr std::int32_t r = 2836;    // m % a
    const auto s = static_cast<std::int32_t>(state_);
    const std::int32_t hi = s / q;
    const std::int32_t lo = s % q;
    std::int32_t t = static_cast<std::int32_t>(kMultiplier) * lo - r * hi;
    if (t <= 0) t += static_cast<std::int32_t>(kModulus);
    state_ = static_cast<std::uint32_t>(t);
    return state_;
  }
  double next_uniform() { return step() * (1.0 / kModulus); }
  std::uint32_t state() const { return state_; }

  /// State reached after `steps` further steps (16807^steps by squaring).
  static std::uint32_t jump(std::uint32_t state, std::uint64_t steps);

 private:
  std::uint32_t state_;
};

/// GFSR x_n = x_{n-31} XOR x_{n-3} over 32-bit words; uniform = word / 2^32.
class R31 {
 public:
  static constexpr int kLong = 31;
  static constexpr int kShort = 3;

  /// Rejects an all-zero table.
  explicit R31(const std::array<std::uint32_t, kLong>& table);

  /// Table words from pairs of RAN0 draws seeded with `seed` (top 16 bits of
  /// each draw, 62 draws in total).
  static R31 from_seed(std::uint32_t seed);

  std::uint32_t step() {
    const int other = idx_ + (kLong - kShort);
    const std::uint32_t w =
        table_[idx_] ^ table_[other >= kLong ? other - kLong : other];
    table_[idx_] = w;
    if (++idx_ == kLong) idx_ = 0;
    return w;
  }
  double next_uniform() { return step() * 0x1p-32; }

  /// True when every word is identical or a bit position is zero in every
  /// word; such tables give strongly correlated or stuck output bits.
  bool degenerate_seed() const { return degenerate_; }
  const std::array<std::uint32_t, kLong>& table() const { return table_; }

 private:
  std::array<std::uint32_t, kLong> table_;
  int idx_ = 0;  // position of x_{n-31}
  bool degenerate_ = false;
};

/// Nested Weyl sequence Y_n = {n {n alpha}} in 0.128 fixed point.
class Nws {
 public:
  /// floor((sqrt(2) - 1) * 2^128)
  static constexpr u128 kSqrt2Minus1 =
      (static_cast<u128>(0x6a09e667f3bcc908ull) << 64) | 0xb2fb1366ea957d3eull;

  explicit Nws(u128 alpha = kSqrt2Minus1, std::uint64_t offset = 0);

  /// Fractional part of a double, exactly, in 0.128 fixed point.
  static u128 alpha_from_double(double alpha);
  static double fixed_to_double(u128 f) {
    return static_cast<double>(static_cast<std::uint64_t>(f >> 75)) * 0x1p-53;
  }

  /// Advances the counter and returns Y_n as a 0.128 fraction.
  u128 step_fixed() {
    if (++counter_ == 0) wrapped_ = true;
    const u128 n = counter_;
    const u128 inner = n * alpha_;  // {n alpha}, wraps mod 2^128
    return n * inner;               // {n {n alpha}}
  }
  double next_uniform() { return fixed_to_double(step_fixed()); }

  std::uint64_t counter() const { return counter_; }
  u128 alpha() const { return alpha_; }
  bool wrapped() const { return wrapped_; }

 private:
  u128 alpha_;
  std::uint64_t counter_;
  bool wrapped_ = false;
};

/// Little-endian 64-bit words from a file or stdin; uniform = top 53 bits / 2^53.
class ExternalStream {
 public:
  /// `path` "-" reads standard input.
  explicit ExternalStream(const std::string& path);
  /// In-memory words (tests, C API callers).
  explicit ExternalStream(std::vector<std::uint64_t> words);

  std::uint64_t next_word();
  double next_uniform() { return static_cast<double>(next_word() >> 11) * 0x1p-53; }
  std::uint64_t words_read() const { return words_read_; }
  const std::string& source() const { return source_; }

 private:
  struct Source;
  std::shared_ptr<Source> src_;
  std::string source_;
  std::uint64_t words_read_ = 0;
};

/// Seed record carried into reports.
struct EngineInfo {
  Algorithm algorithm = Algorithm::Ran0;
  std::uint64_t seed = 0;
  double alpha = 0.0;          // NWS only
  std::uint64_t offset = 0;    // NWS counter offset
  std::string source;          // External only
  std::uint64_t substream = 0; // 0 for a root engine
};

std::string describe(const EngineInfo& info);

/// One uniform stream behind a single interface.
class Engine {
 public:
  using State = std::variant<Ran0, R31, Nws, ExternalStream>;

  Engine(State state, EngineInfo info) : state_(std::move(state)), info_(std::move(info)) {}

  double next_uniform() {
    double u;
    switch (state_.index()) {
      case 0: u = std::get_if<Ran0>(&state_)->next_uniform(); break;
      case 1: u = std::get_if<R31>(&state_)->next_uniform(); break;
      case 2: u = std::get_if<Nws>(&state_)->next_uniform(); break;
      default: u = std::get_if<ExternalStream>(&state_)->next_uniform(); break;
    }
    ++consumed_;  // only delivered variates count
    return u;
  }

  Algorithm algorithm() const { return info_.algorithm; }
  const EngineInfo& info() const { return info_; }
  std::uint64_t variates_consumed() const { return consumed_; }
  const State& state() const { return state_; }

  /// Independent engine for worker/shard k (k >= 1):
  /// RAN0 jumps k * 2^25 steps ahead, R31 reseeds from a mixed seed, NWS
  /// shifts its counter by k * 2^40. External streams cannot be split.
  Engine substream(std::uint64_t k) const;

 private:
  State state_;
  EngineInfo info_;
  std::uint64_t consumed_ = 0;
};

/// Seed conventions:
///   RAN0  seed in [1, 2^31 - 2]
///   R31   seed in [1, 2^31 - 2] drives the RAN0 table fill
///   NWS   seed is the counter offset (offset 0 -> first draw uses n = 1);
///         alpha <= 0 selects the default sqrt(2) - 1
Engine make_engine(Algorithm algorithm, std::uint64_t seed, double alpha = 0.0);
Engine make_external_engine(const std::string& path);
Engine make_external_engine(std::vector<std::uint64_t> words);

}  // namespace nball::rng

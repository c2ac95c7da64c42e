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

#include <gmp.h>
#include <mpfr.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "doctest.h"
#include "nball/errors.hpp"

namespace rng = nball::rng;
using rng::u128;

namespace {

// u128 <-> mpz through two 64-bit limbs.
void set_u128(mpz_t z, u128 v) {
  mpz_set_ui(z, static_cast<unsigned long>(v >> 64));
  mpz_mul_2exp(z, z, 64);
  mpz_add_ui(z, z, static_cast<unsigned long>(v & 0xffffffffffffffffull));
}

u128 get_u128(const mpz_t z) {
  mpz_t hi, lo;
  mpz_init(hi);
  mpz_init(lo);
  mpz_fdiv_q_2exp(hi, z, 64);
  mpz_fdiv_r_2exp(lo, z, 64);
  const u128 v = (static_cast<u128>(mpz_get_ui(hi)) << 64) | mpz_get_ui(lo);
  mpz_clear(hi);
  mpz_clear(lo);
  return v;
}

// floor(frac(alpha) * 2^128) from a 512-bit MPFR value.
u128 fixed_alpha_sqrt2_minus_1() {
  mpfr_t a;
  mpfr_init2(a, 512);
  mpfr_sqrt_ui(a, 2, MPFR_RNDN);
  mpfr_sub_ui(a, a, 1, MPFR_RNDN);
  mpfr_mul_2ui(a, a, 128, MPFR_RNDN);
  mpz_t z;
  mpz_init(z);
  mpfr_get_z(z, a, MPFR_RNDD);
  const u128 v = get_u128(z);
  mpz_clear(z);
  mpfr_clear(a);
  return v;
}

// Park-Miller reference: 16807^k * seed mod (2^31 - 1) with big integers.
unsigned long ran0_big(unsigned long seed, unsigned long steps) {
  mpz_t m, r;
  mpz_init_set_ui(m, 2147483647ul);
  mpz_init(r);
  mpz_set_ui(r, 16807);
  mpz_powm_ui(r, r, steps, m);
  mpz_mul_ui(r, r, seed);
  mpz_mod(r, r, m);
  const unsigned long v = mpz_get_ui(r);
  mpz_clear(m);
  mpz_clear(r);
  return v;
}

}  // namespace

TEST_CASE("algorithm names") {
  CHECK(rng::parse_algorithm("ran0") == rng::Algorithm::Ran0);
  CHECK(rng::parse_algorithm("R31") == rng::Algorithm::R31);
  CHECK(rng::parse_algorithm("nws") == rng::Algorithm::Nws);
  CHECK(rng::parse_algorithm("external") == rng::Algorithm::External);
  CHECK_THROWS_AS(rng::parse_algorithm("mt"), nball::ConfigError);
}

TEST_CASE("RAN0 against a big-integer oracle") {
  rng::Ran0 g(1);
  for (int i = 1; i <= 10000; ++i) {
    const std::uint32_t v = g.step();
    if (i % 1000 == 0) CHECK(v == ran0_big(1, i));
  }
  // Park and Miller's published check value.
  CHECK(g.state() == 1043618065u);
  for (unsigned long seed : {2ul, 123456789ul, 2147483646ul}) {
    rng::Ran0 h(static_cast<std::uint32_t>(seed));
    for (int i = 0; i < 777; ++i) h.step();
    CHECK(h.state() == ran0_big(seed, 777));
    CHECK(rng::Ran0::jump(static_cast<std::uint32_t>(seed), 1ull << 40) ==
          ran0_big(seed, 1ul << 40));
  }
  CHECK_THROWS_AS(rng::Ran0(0), nball::ConfigError);
  CHECK_THROWS_AS(rng::Ran0(2147483647u), nball::ConfigError);
  rng::Ran0 u(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.next_uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("R31 against a direct XOR recurrence") {
  // Table fill re-derived independently: 62 Park-Miller draws, top 16 of 31 bits.
  std::vector<std::uint32_t> x;
  unsigned long state = 4711;
  for (int i = 0; i < 31; ++i) {
    state = state * 16807ul % 2147483647ul;
    const auto hi = static_cast<std::uint32_t>(state >> 15);
    state = state * 16807ul % 2147483647ul;
    const auto lo = static_cast<std::uint32_t>(state >> 15);
    x.push_back((hi << 16) | lo);
  }
  auto g = rng::R31::from_seed(4711);
  for (int i = 0; i < 31; ++i) CHECK(g.table()[i] == x[i]);
  for (int n = 31; n < 31 + 10000; ++n) x.push_back(x[n - 31] ^ x[n - 3]);
  bool all = true;
  for (int n = 31; n < 31 + 10000; ++n) all = all && g.step() == x[n];
  CHECK(all);

  std::array<std::uint32_t, 31> zero{};
  CHECK_THROWS_AS(rng::R31{zero}, nball::ConfigError);
  std::array<std::uint32_t, 31> same;
  same.fill(0x12345678u);
  CHECK(rng::R31(same).degenerate_seed());
  CHECK_FALSE(rng::R31::from_seed(1).degenerate_seed());
}

TEST_CASE("NWS against 128-bit fixed point computed with GMP") {
  const u128 alpha = fixed_alpha_sqrt2_minus_1();
  CHECK(alpha == rng::Nws::kSqrt2Minus1);

  mpz_t a, n, inner, y, mod;
  mpz_inits(a, n, inner, y, mod, nullptr);
  set_u128(a, alpha);
  mpz_set_ui(mod, 1);
  mpz_mul_2exp(mod, mod, 128);
  rng::Nws g;
  bool all = true;
  for (unsigned long k = 1; k <= 10000; ++k) {
    mpz_set_ui(n, k);
    mpz_mul(inner, n, a);
    mpz_mod(inner, inner, mod);
    mpz_mul(y, n, inner);
    mpz_mod(y, y, mod);
    all = all && g.step_fixed() == get_u128(y);
  }
  CHECK(all);
  CHECK(g.counter() == 10000);

  // Offset: first draw of Nws(alpha, 500) is Y_501.
  rng::Nws off(alpha, 500);
  rng::Nws base(alpha, 0);
  for (int i = 0; i < 500; ++i) base.step_fixed();
  CHECK(off.step_fixed() == base.step_fixed());
  mpz_clears(a, n, inner, y, mod, nullptr);

  CHECK(rng::Nws::alpha_from_double(0.25) == (static_cast<u128>(1) << 126));
  CHECK(rng::Nws::alpha_from_double(3.5) == (static_cast<u128>(1) << 127));
  CHECK_THROWS_AS(rng::Nws(0), nball::ConfigError);
  CHECK(rng::Nws::fixed_to_double(~static_cast<u128>(0)) < 1.0);
}

TEST_CASE("engines and substreams") {
  auto e = rng::make_engine(rng::Algorithm::Ran0, 1);
  for (int i = 0; i < 10; ++i) e.next_uniform();
  CHECK(e.variates_consumed() == 10);
  CHECK(rng::describe(e.info()).find("RAN0") != std::string::npos);

  // RAN0 substream k starts k * 2^25 steps ahead of the root.
  const auto root = rng::make_engine(rng::Algorithm::Ran0, 1);
  auto s2 = root.substream(2);
  const auto expect = ran0_big(1, 2ul * (1ul << 25) + 1);
  CHECK(s2.next_uniform() == static_cast<double>(expect) / 2147483647.0);

  // Distinct substreams give distinct draws; the same index repeats.
  for (auto alg : {rng::Algorithm::Ran0, rng::Algorithm::R31, rng::Algorithm::Nws}) {
    const auto r = rng::make_engine(alg, 7);
    std::set<double> firsts;
    for (std::uint64_t k = 1; k <= 8; ++k) firsts.insert(r.substream(k).next_uniform());
    CHECK(firsts.size() == 8);
    auto a1 = r.substream(3);
    auto a2 = r.substream(3);
    for (int i = 0; i < 100; ++i) CHECK(a1.next_uniform() == a2.next_uniform());
  }
  auto nws = rng::make_engine(rng::Algorithm::Nws, 0, 0.0);
  CHECK(nws.info().alpha == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("external streams") {
  std::vector<std::uint64_t> words{0, 1ull << 63, ~0ull};
  auto e = rng::make_external_engine(words);
  CHECK(e.next_uniform() == 0.0);
  CHECK(e.next_uniform() == 0.5);
  CHECK(e.next_uniform() == 1.0 - 0x1p-53);
  CHECK_THROWS_AS(e.next_uniform(), nball::StreamExhausted);
  CHECK(e.variates_consumed() == 3);
  CHECK_THROWS_AS(e.substream(1), nball::ConfigError);

  const std::string path = "rng_test_words.bin";
  {
    std::ofstream f(path, std::ios::binary);
    const unsigned char bytes[16] = {0, 0, 0, 0, 0, 0, 0, 0x80, 0, 0, 0, 0, 0, 0, 0, 0x40};
    f.write(reinterpret_cast<const char*>(bytes), 16);
  }
  auto fe = rng::make_external_engine(path);
  CHECK(fe.next_uniform() == 0.5);
  CHECK(fe.next_uniform() == 0.25);
  CHECK_THROWS_AS(fe.next_uniform(), nball::StreamExhausted);
  std::remove(path.c_str());
  CHECK_THROWS_AS(rng::make_external_engine("/nonexistent/words.bin"), nball::ConfigError);
}

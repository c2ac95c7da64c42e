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

#include "nball/distributions.hpp"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "nball/errors.hpp"
#include "oracles.hpp"

using nball::BallGeometry;
using nball::DistanceDistribution;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("uniform pdf matches the regularized-beta oracle") {
  for (int n = 1; n <= 12; ++n) {
    for (double radius : {0.5, 1.0, 3.0}) {
      const BallGeometry g{n, radius};
      for (int k = 1; k < 50; ++k) {
        const double s = 2.0 * radius * k / 50.0;
        CHECK(rel(nball::uniform_pdf(g, s), oracle::uniform_pdf(n, radius, s)) < 1e-11);
      }
    }
  }
}

TEST_CASE("uniform pdf: low dimensional polynomials") {
  const BallGeometry g{3, 1.0};
  // 3 s^2 - 9/4 s^3 + 3/16 s^5 for R = 1
  for (double s : {0.1, 0.5, 1.0, 1.7}) {
    const double ref = 3 * s * s - 2.25 * s * s * s + 3.0 / 16.0 * std::pow(s, 5);
    CHECK(nball::uniform_pdf(g, s) == doctest::Approx(ref).epsilon(1e-13));
  }
  // n = 1: (1 - s/2R)/R
  CHECK(nball::uniform_pdf({1, 2.0}, 1.0) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(nball::uniform_pdf(g, 2.0) == 0.0);
  CHECK(nball::uniform_pdf(g, 0.0) == 0.0);
  CHECK_THROWS_AS(nball::uniform_pdf(g, 2.5), nball::DomainError);
  CHECK_THROWS_AS(nball::uniform_pdf(g, -0.1), nball::DomainError);
  CHECK_THROWS_AS(nball::uniform_pdf({0, 1.0}, 0.5), nball::DomainError);
}

TEST_CASE("uniform pdf representations agree") {
  for (int n = 1; n <= 10; ++n) {
    const double radius = 1.3;
    const BallGeometry g{n, radius};
    // The 2F1 form is R F(1) - (s/2) F(s^2/4R^2); near s = 2R the two terms
    // cancel, so it can only be held to a few ulps of the terms themselves.
    const double b = 0.5 - 0.5 * n;
    const double f1 = boost::math::tgamma(1.5) * boost::math::tgamma(1.0 - b) /
                      (boost::math::tgamma(1.0) * boost::math::tgamma(1.5 - b));
    for (int k = 1; k <= 64; ++k) {
      const double s = 2.0 * radius * k / 65.0;
      const double closed = nball::uniform_pdf(g, s);
      CHECK(rel(nball::uniform_pdf_integral_rep(g, s), closed) < 1e-9);
      const double terms = 2.0 * n / boost::math::beta(0.5 * (n + 1), 0.5) * radius * f1 *
                           std::pow(s, n - 1) / std::pow(radius, n + 1);
      const double slack =
          std::max(1e-9 * closed, 64.0 * std::numeric_limits<double>::epsilon() * terms);
      CHECK(std::abs(nball::uniform_pdf_hypergeometric_rep(g, s) - closed) <= slack);
      if (n <= 8) CHECK(rel(nball::uniform_pdf_hypergeometric_rep(g, s), closed) < 1e-8);
    }
  }
}

TEST_CASE("uniform cdf, endpoints and derivative") {
  for (int n = 1; n <= 9; ++n) {
    const BallGeometry g{n, 1.0};
    CHECK(nball::uniform_cdf(g, 0.0) == 0.0);
    CHECK(nball::uniform_cdf(g, 2.0) == 1.0);
    CHECK(std::abs(nball::uniform_cdf_formula(g, 2.0) - 1.0) < 1e-14);
    for (double x : {0.2, 0.7, 1.0, 1.5, 1.95}) {
      CHECK(std::abs(nball::uniform_cdf(g, x) - oracle::uniform_cdf(n, 1.0, x)) < 1e-12);
      const double h = 1e-5;
      const double d = (nball::uniform_cdf(g, x + h) - nball::uniform_cdf(g, x - h)) / (2 * h);
      CHECK(std::abs(d - nball::uniform_pdf(g, x)) < 1e-6);
    }
  }
}

TEST_CASE("uniform moments against quadrature") {
  const BallGeometry g{3, 1.0};
  CHECK(nball::uniform_moment(g, 1) == doctest::Approx(36.0 / 35.0).epsilon(1e-14));
  CHECK(nball::uniform_moment({3, 2.5}, 1) == doctest::Approx(2.5 * 36.0 / 35.0).epsilon(1e-14));
  CHECK(nball::uniform_moment(g, -1) == doctest::Approx(1.2).epsilon(1e-14));
  for (int n = 1; n <= 8; ++n) {
    const BallGeometry gn{n, 1.4};
    CHECK(nball::uniform_moment(gn, 0) == 1.0);
    for (int m = -(n - 1); m <= 6; ++m) {
      const double ref = oracle::integrate(
          [&](double s) { return std::pow(s, m) * oracle::uniform_pdf(n, 1.4, s); }, 0.0, 2.8);
      CHECK(rel(nball::uniform_moment(gn, m), ref) < 1e-9);
    }
    CHECK_THROWS_AS(nball::uniform_moment(gn, -n), nball::DomainError);
  }
}

TEST_CASE("gaussian law against the chi oracle") {
  for (int n = 1; n <= 10; ++n) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      for (double s : {0.1, 0.5, 1.0, 2.0, 4.0, 9.0}) {
        const double x = s * sigma;
        CHECK(std::abs(nball::gaussian_pdf(n, sigma, x) - oracle::gaussian_pdf(n, sigma, x)) <
              1e-13 / sigma);
        CHECK(std::abs(nball::gaussian_cdf(n, sigma, x) - oracle::gaussian_cdf(n, sigma, x)) <
              1e-13);
      }
      CHECK(rel(nball::gaussian_moment(n, sigma, 2), 2.0 * n * sigma * sigma) < 1e-13);
      CHECK(nball::gaussian_mode(n, sigma) ==
            doctest::Approx(std::sqrt(2.0 * (n - 1)) * sigma).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(nball::gaussian_pdf(3, 0.0, 1.0), nball::DomainError);
}

TEST_CASE("hard-core law") {
  const BallGeometry g{3, 1.0};
  const double rc = 0.5;
  const double mass = 1.0 - oracle::uniform_cdf(3, 1.0, rc);
  for (double s : {0.5, 0.6, 1.0, 1.5, 1.99}) {
    CHECK(rel(nball::hardcore_pdf(g, rc, s), oracle::uniform_pdf(3, 1.0, s) / mass) < 1e-11);
  }
  CHECK_THROWS_AS(nball::hardcore_pdf(g, rc, 0.3), nball::DomainError);
  CHECK(nball::hardcore_cdf(g, rc, rc) == 0.0);
  CHECK(nball::hardcore_cdf(g, rc, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (int n = 2; n <= 7; ++n) {
    const BallGeometry gn{n, 1.2};
    for (double r : {0.1, 0.8, 2.0}) {
      const double mn = 1.0 - oracle::uniform_cdf(n, 1.2, r);
      for (int m = -6; m <= 4; ++m) {
        const double ref = oracle::integrate(
                               [&](double s) { return std::pow(s, m) * oracle::uniform_pdf(n, 1.2, s); },
                               r, 2.4) /
                           mn;
        CHECK(rel(nball::hardcore_moment(gn, r, m), ref) < 1e-8);
      }
    }
  }
  const auto detail = nball::hardcore_moment_detailed(g, rc, -5);
  CHECK(!detail.warning.empty());
  CHECK(nball::hardcore_moment(g, rc, -2) == doctest::Approx(1.1304347826086956).epsilon(1e-11));
  CHECK_THROWS_AS(nball::hardcore_pdf(g, 0.0, 1.0), nball::DomainError);
  CHECK_THROWS_AS(nball::hardcore_pdf(g, 2.0, 1.0), nball::DomainError);
}

TEST_CASE("two-shell law against the lens-volume oracle") {
  for (auto [r1, r2] : {std::pair{1.0, 2.0}, std::pair{3.0, 0.5}, std::pair{1.0, 0.0}}) {
    for (double radius : {1.0, 2.0}) {
      for (int k = 1; k < 40; ++k) {
        const double s = 2.0 * radius * k / 40.0;
        CHECK(std::abs(nball::two_shell_pdf(radius, r1, r2, s) -
                       oracle::two_shell_pdf(radius, r1, r2, s)) < 1e-12 / radius);
      }
    }
  }
  // Continuity at the region joins.
  for (double s : {0.5, 1.0, 1.5}) {
    const double lo = nball::two_shell_pdf(1.0, 1.0, 2.0, std::nextafter(s, 0.0));
    const double hi = nball::two_shell_pdf(1.0, 1.0, 2.0, std::nextafter(s, 2.0));
    CHECK(std::abs(lo - hi) < 1e-12);
  }
  // Equal densities collapse to the uniform law.
  for (double s : {0.3, 0.9, 1.2, 1.8}) {
    CHECK(std::abs(nball::two_shell_pdf(1.0, 2.0, 2.0, s) - nball::uniform_pdf({3, 1.0}, s)) <
          1e-12);
  }
  CHECK(nball::two_shell_cdf(1.0, 1.0, 2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(nball::two_shell_cdf(1.0, 1.0, 2.0, 0.8) -
                 oracle::integrate([](double s) { return oracle::two_shell_pdf(1.0, 1.0, 2.0, s); },
                                   0.0, 0.8, {0.5})) < 1e-12);
  CHECK_THROWS_AS(nball::two_shell_pdf(1.0, 0.0, 0.0, 1.0), nball::DomainError);
  CHECK_THROWS_AS(nball::two_shell_pdf(1.0, -1.0, 1.0, 1.0), nball::DomainError);
}

TEST_CASE("DistanceDistribution handles") {
  const auto u = DistanceDistribution::uniform({4, 1.5});
  CHECK(u.method() == nball::Method::ClosedForm);
  CHECK(u.support_min() == 0.0);
  CHECK(u.support_max() == 3.0);
  CHECK(u.dim() == 4);
  CHECK(u.pdf(1.0) == nball::uniform_pdf({4, 1.5}, 1.0));
  CHECK(u.moment(2) == doctest::Approx(nball::uniform_moment({4, 1.5}, 2)));

  const auto gauss = DistanceDistribution::gaussian(5, 1.0);
  CHECK(std::isinf(gauss.support_max()));
  CHECK(gauss.integration_max() == doctest::Approx(40.0));
  CHECK(gauss.moment(2) == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(gauss.cdf(3.0) == doctest::Approx(oracle::gaussian_cdf(5, 1.0, 3.0)).epsilon(1e-12));

  const auto hc = DistanceDistribution::hard_core({3, 1.0}, 0.5);
  CHECK(hc.support_min() == 0.5);
  CHECK(hc.moment(0) == doctest::Approx(1.0).epsilon(1e-12));

  const auto ts = DistanceDistribution::two_shell(1.0, 1.0, 2.0);
  CHECK(ts.dim() == 3);
  CHECK(ts.breakpoints().size() >= 3);
  CHECK(ts.moment(1) == doctest::Approx(oracle::integrate(
                                            [](double s) {
                                              return s * oracle::two_shell_pdf(1.0, 1.0, 2.0, s);
                                            },
                                            0.0, 2.0, {0.5, 1.0, 1.5}))
                           .epsilon(1e-10));
}

TEST_CASE("every closed-form pdf integrates to one") {
  for (int n = 1; n <= 10; ++n) {
    const double u = oracle::integrate([&](double s) { return nball::uniform_pdf({n, 1.0}, s); },
                                       0.0, 2.0);
    CHECK(std::abs(u - 1.0) < 1e-10);
    const double gsum = oracle::integrate(
        [&](double s) { return nball::gaussian_pdf(n, 0.7, s); }, 0.0, 40.0, {5.0, 10.0});
    CHECK(std::abs(gsum - 1.0) < 1e-10);
  }
  const double hc = oracle::integrate(
      [](double s) { return nball::hardcore_pdf({3, 1.0}, 0.5, s); }, 0.5, 2.0);
  CHECK(std::abs(hc - 1.0) < 1e-10);
  const double ts = oracle::integrate(
      [](double s) { return nball::two_shell_pdf(1.0, 1.0, 2.0, s); }, 0.0, 2.0, {0.5, 1.0, 1.5});
  CHECK(std::abs(ts - 1.0) < 1e-10);
}

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

// Globally adaptive 21-point Gauss-Kronrod quadrature.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "nball/errors.hpp"

namespace nball::quad {

struct Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrod = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600283071144, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights attach to kNodes[1], [3], [5], [7], [9].
inline constexpr std::array<double, 5> kGauss = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651328};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk21(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  const double fc = f(center);
  double kron = kKronrod[10] * fc;
  double gauss = 0.0;
  double absk = std::abs(kron);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kron += kKronrod[j] * (f1 + f2);
    absk += kKronrod[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGauss[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kron;
  double asc = kKronrod[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kKronrod[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }
  const double result = kron * half;
  asc *= std::abs(half);
  absk *= std::abs(half);
  double err = std::abs((kron - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (absk > std::numeric_limits<double>::min() / (50 * eps)) {
    err = std::max(50 * eps * absk, err);
  }
  return {a, b, result, err};
}

}  // namespace detail

/// Integrates f over [a, b]. Optional interior breakpoints seed the initial
/// partition (kinks, density shell radii). Never throws on non-convergence;
/// check Result::converged.
template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {},
                 std::span<const double> breakpoints = {}) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double sign = b < a ? -1.0 : 1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  std::vector<double> knots{lo};
  for (double p : breakpoints) {
    if (p > lo && p < hi) knots.push_back(p);
  }
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::priority_queue<detail::Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    auto seg = detail::gk21(f, knots[i], knots[i + 1]);
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }
  int intervals = static_cast<int>(heap.size());
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
         intervals < opt.max_intervals) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;  // interval can no longer be bisected in double precision
    }
    auto left = detail::gk21(f, worst.a, mid);
    auto right = detail::gk21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = sign * total;
  out.error = total_err;
  out.intervals = intervals;
  out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  return out;
}

/// Integrates f over [a, inf) with the map x = a + t / (1 - t).
template <class F>
Result integrate_to_infinity(const F& f, double a, const Options& opt = {}) {
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  return integrate(g, 0.0, 1.0, opt);
}

/// integrate() that raises NonConvergence instead of returning a flag.
template <class F>
double integrate_checked(const F& f, double a, double b, const Options& opt = {},
                         std::span<const double> breakpoints = {},
                         const char* what = "quadrature") {
  const Result r = integrate(f, a, b, opt, breakpoints);
  if (!r.converged) {
    throw NonConvergence(std::string(what) + ": adaptive quadrature did not converge "
                             "(achieved error " + std::to_string(r.error) + ")",
                         r.error);
  }
  return r.value;
}

}  // namespace nball::quad

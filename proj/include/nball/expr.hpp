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

// Tiny polynomial expression language for user-supplied densities, and the
// textual density specs accepted by the CLI and the C API.
//
// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := number | variable | '(' expr ')'
// Variables: x1..xn, x y z (= x1 x2 x3), r (= |x|).

#include <memory>
#include <span>
#include <string>

#include "nball/density.hpp"

namespace nball {

class Expression {
 public:
  /// Throws ConfigError with the offending position on bad input or on a
  /// variable index above `dim`.
  static Expression parse(const std::string& text, int dim);

  double operator()(std::span<const double> x) const;
  const std::string& text() const { return text_; }
  bool uses_only_radius() const { return radial_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool radial_ = true;
};

/// Density specs:
///   uniform
///   gaussian                 (sigma from the caller; truncated when `truncate`)
///   two-shell:RHO1:RHO2      shells [0, R/2], (R/2, R]
///   shells:B1=D1,B2=D2,...   last B equals R
///   general:x4y4             rho = x^4 y^4 (n >= 2)
///   general:EXPR             polynomial in x1..xn; negative values are errors
///   radial:EXPR              polynomial in r
DensityModel parse_density_spec(const std::string& spec, const BallGeometry& geom,
                                double sigma = 1.0, bool truncate = false);

}  // namespace nball

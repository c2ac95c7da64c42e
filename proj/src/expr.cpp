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

#include "nball/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

#include "nball/errors.hpp"

namespace nball {

struct Expression::Node {
  enum Kind { Const, Var, Radius, Neg, Add, Sub, Mul, Pow } kind = Const;
  double value = 0.0;
  int index = 0;  // Var: 0-based coordinate; Pow: exponent
  std::shared_ptr<const Node> lhs, rhs;

  double eval(std::span<const double> x) const {
    switch (kind) {
      case Const: return value;
      case Var: return x[index];
      case Radius: {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return std::sqrt(r2);
      }
      case Neg: return -lhs->eval(x);
      case Add: return lhs->eval(x) + rhs->eval(x);
      case Sub: return lhs->eval(x) - rhs->eval(x);
      case Mul: return lhs->eval(x) * rhs->eval(x);
      case Pow: {
        const double b = lhs->eval(x);
        double out = 1.0;
        for (int i = 0; i < index; ++i) out *= b;
        return out;
      }
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

class Parser {
 public:
  Parser(const std::string& text, int dim) : s_(text), dim_(dim) {}

  NodePtr run() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }
  bool radial() const { return radial_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression '" + s_ + "' at position " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static NodePtr make(Node::Kind k, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expr() {
    auto left = term();
    for (;;) {
      if (eat('+')) {
        left = make(Node::Add, left, term());
      } else if (eat('-')) {
        left = make(Node::Sub, left, term());
      } else {
        return left;
      }
    }
  }
  NodePtr term() {
    auto left = unary();
    while (eat('*')) left = make(Node::Mul, left, unary());
    return left;
  }
  NodePtr unary() {
    if (eat('-')) return make(Node::Neg, unary());
    return power();
  }
  NodePtr power() {
    auto base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a nonnegative integer literal");
    const long e = std::strtol(s_.substr(start, pos_ - start).c_str(), nullptr, 10);
    if (e > 64) fail("exponent above 64");
    auto n = std::make_shared<Node>();
    n->kind = Node::Pow;
    n->index = static_cast<int>(e);
    n->lhs = std::move(base);
    return n;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      auto e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Node>();
      n->value = v;
      return n;
    }
    if (c == 'r') {
      ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Node::Radius;
      return n;
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      int idx = c == 'y' ? 1 : c == 'z' ? 2 : 0;
      if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        idx = std::atoi(s_.substr(start, pos_ - start).c_str()) - 1;
        if (idx < 0) fail("coordinates are numbered from x1");
      }
      if (idx >= dim_) fail("coordinate index exceeds dimension " + std::to_string(dim_));
      radial_ = false;
      auto n = std::make_shared<Node>();
      n->kind = Node::Var;
      n->index = idx;
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  int dim_;
  std::size_t pos_ = 0;
  bool radial_ = true;
};

}  // namespace

Expression Expression::parse(const std::string& text, int dim) {
  if (dim < 1) throw ConfigError("expression dimension must be >= 1");
  Parser p(text, dim);
  Expression e;
  e.root_ = p.run();
  e.text_ = text;
  e.radial_ = p.radial();
  return e;
}

double Expression::operator()(std::span<const double> x) const { return root_->eval(x); }

namespace {

double parse_number(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError("bad number '" + s + "' in " + what);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

density::General general_from(const Expression& e, const std::string& label) {
  density::General g;
  g.label = label;
  g.rho = [e, label](std::span<const double> x) {
    const double v = e(x);
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("density '" + label + "' is negative or not finite inside the ball");
    }
    return v;
  };
  return g;
}

}  // namespace

DensityModel parse_density_spec(const std::string& spec, const BallGeometry& geom, double sigma,
                                bool truncate) {
  if (spec == "uniform") return density::Uniform{};
  if (spec == "gaussian") {
    if (!(sigma > 0.0)) throw ConfigError("gaussian density needs sigma > 0");
    return density::Gaussian{sigma, truncate};
  }
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "two-shell") {
    const auto parts = split(body, ':');
    if (parts.size() != 2) throw ConfigError("two-shell needs two densities: two-shell:RHO1:RHO2");
    DensityModel m =
        two_shell(geom.radius, parse_number(parts[0], spec), parse_number(parts[1], spec));
    validate(m, geom);
    return m;
  }
  if (head == "shells") {
    density::RadialShells s;
    for (const auto& item : split(body, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("shells entries are RADIUS=DENSITY");
      s.breakpoints.push_back(parse_number(item.substr(0, eq), spec));
      s.densities.push_back(parse_number(item.substr(eq + 1), spec));
    }
    DensityModel m = std::move(s);
    validate(m, geom);
    return m;
  }
  if (head == "general") {
    if (body == "x4y4") {
      if (geom.dim < 2) throw ConfigError("general:x4y4 needs n >= 2");
      density::General g;
      g.label = "general:x4y4";
      g.rho = [](std::span<const double> x) {
        const double a = x[0] * x[0], b = x[1] * x[1];
        return a * a * b * b;
      };
      // max of x^4 y^4 on the ball is R^8 / 16 at x^2 = y^2 = R^2 / 2
      g.bound = std::pow(geom.radius, 8) / 16.0;
      return g;
    }
    if (body.empty()) throw ConfigError("general density needs an expression");
    return general_from(Expression::parse(body, geom.dim), spec);
  }
  if (head == "radial") {
    const auto e = Expression::parse(body, geom.dim);
    if (!e.uses_only_radius()) throw ConfigError("radial density may only use r");
    density::RadialProfile p;
    p.label = spec;
    const int n = geom.dim;
    p.rho = [e, n, spec](double r) {
      std::vector<double> x(n, 0.0);
      x[0] = r;
      const double v = e(x);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ConfigError("density '" + spec + "' is negative or not finite inside the ball");
      }
      return v;
    };
    return p;
  }
  throw ConfigError("unknown density '" + spec +
                    "' (expected uniform, gaussian, two-shell:, shells:, general:, radial:)");
}

}  // namespace nball

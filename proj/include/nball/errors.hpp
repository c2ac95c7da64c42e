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

#include <stdexcept>
#include <string>

namespace nball {

/// Base of every error raised by the library. The C API maps each subclass
/// onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent configuration (density specs, bounds, seeds).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An iterative method or quadrature did not reach its tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// A pairwise integral diverges at s -> 0 (moment rule m >= -(n-1) violated).
class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

/// A uniform stream misbehaved (rejection cap hit, degenerate seed).
class StreamDefect : public Error {
 public:
  using Error::Error;
};

/// An external stream ran out of words.
class StreamExhausted : public Error {
 public:
  using Error::Error;
};

/// Density vanishes (almost) everywhere; nothing to normalize.
class DegenerateDensity : public Error {
 public:
  using Error::Error;
};

}  // namespace nball

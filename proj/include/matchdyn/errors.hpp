// Copyright 2026 The matchdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATCHDYN_ERRORS_HPP_
#define MATCHDYN_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace matchdyn {

// Base class of every error raised by the library. Subclasses name the
// violated precondition; the CLI maps them to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: dangling references, bad weights, infeasible sets.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotBlocking : public Error {
 public:
  using Error::Error;
};

class InconsistentSpec : public Error {
 public:
  using Error::Error;
};

class InfeasibleStart : public Error {
 public:
  using Error::Error;
};

class InvalidTrace : public Error {
 public:
  InvalidTrace(std::size_t step, const std::string& what)
      : Error("trace step " + std::to_string(step) + ": " + what),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class UnsupportedEmbedding : public Error {
 public:
  using Error::Error;
};

class WrongVariant : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace matchdyn

#endif  // MATCHDYN_ERRORS_HPP_

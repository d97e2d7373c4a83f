// Copyright 2026 The torwalk Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace torwalk {

// Base of all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

// Malformed input or violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

// The request is well formed but cannot be carried out: a resource cap is
// exceeded or a parameter makes the pipeline vacuous (e.g. M < 1).
class InfeasibleError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// A mathematical guarantee failed to hold numerically. Either a bug or
// a floating-point boundary effect; never silently ignored.
class ConsistencyError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace torwalk

// Copyright 2026 The ClusterLP Authors.
//
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

#ifndef CLUSTERLP_ERROR_HPP_
#define CLUSTERLP_ERROR_HPP_

#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clusterlp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (edge lists, pair files, saved models).
class DataError : public Error {
 public:
  using Error::Error;
};

// Malformed edge-list line. Carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Invalid arguments or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerical failure inside a computation (degenerate embeddings, zero rows).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Warning sink. Defaults to std::clog; tests and the CLI may redirect it.
using WarningSink = std::function<void(std::string_view)>;

inline WarningSink& warning_sink() {
  static WarningSink sink = [](std::string_view msg) {
    std::clog << "warning: " << msg << '\n';
  };
  return sink;
}

inline void warn(std::string_view msg) {
  if (warning_sink()) warning_sink()(msg);
}

}  // namespace clusterlp

#endif  // CLUSTERLP_ERROR_HPP_

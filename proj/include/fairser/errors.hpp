// Copyright (c) 2026 The fairser authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRSER_ERRORS_HPP
#define FAIRSER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairser {

// Exit codes used by the CLI: 1 usage, 2 data/contract, 3 numerical.

/// Bad flags, malformed invocation.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed files, violated invariants, contract misuse.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite values, diverged training, numerical breakdown.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fairser

#endif  // FAIRSER_ERRORS_HPP

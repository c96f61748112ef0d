// Copyright 2026 The spoofprint Authors.
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

#ifndef SPOOFPRINT_ERRORS_H_
#define SPOOFPRINT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace spoofprint {

// Base of every error the library raises. The subclasses map one-to-one onto
// the CLI exit codes (1 user/config, 2 data, 3 numerical).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad argument, bad configuration, violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Unreadable or malformed input files, infeasible splits, too-short audio.
class DataError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf, unstable filters, invalid autocorrelation sequences.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace spoofprint

#endif  // SPOOFPRINT_ERRORS_H_

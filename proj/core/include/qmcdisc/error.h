// Copyright 2026 The qmcdisc Authors
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

#ifndef QMCDISC_ERROR_H_
#define QMCDISC_ERROR_H_

#include <stdexcept>
#include <string>

namespace qmcdisc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad base system, out-of-range
// digit, dimension mismatch, invalid p, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An integer modulus would exceed the supported 63-bit width.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A configured work budget (pair count, grid size, frequency count) would be
// exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace qmcdisc

#endif  // QMCDISC_ERROR_H_

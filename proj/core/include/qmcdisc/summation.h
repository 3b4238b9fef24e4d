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

#ifndef QMCDISC_SUMMATION_H_
#define QMCDISC_SUMMATION_H_

#include <cmath>

namespace qmcdisc {

// Neumaier's variant of Kahan summation, accumulated in long double.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      compensation_ += (sum_ - t) + v;
    } else {
      compensation_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(long double v) {
    add(v);
    return *this;
  }
  long double value() const { return sum_ + compensation_; }

 private:
  long double sum_ = 0;
  long double compensation_ = 0;
};

}  // namespace qmcdisc

#endif  // QMCDISC_SUMMATION_H_

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

#ifndef QMCDISC_PARALLEL_H_
#define QMCDISC_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace qmcdisc {

// Upper bound on worker threads used by the data-parallel loops. 0 means
// "use std::thread::hardware_concurrency()". Results never depend on it:
// every parallel loop writes per-index outputs that are reduced serially.
void set_thread_limit(unsigned threads);
unsigned thread_limit();

// Calls body(begin, end) on disjoint subranges covering [0, count). Ranges are
// handed out in fixed-size chunks; body must only write state owned by the
// indices it receives.
void parallel_for(std::size_t count, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace qmcdisc

#endif  // QMCDISC_PARALLEL_H_

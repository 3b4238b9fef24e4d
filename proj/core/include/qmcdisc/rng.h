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

#ifndef QMCDISC_RNG_H_
#define QMCDISC_RNG_H_

#include <cstdint>

namespace qmcdisc {

// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: the generator for sample j under seed s is fully
// determined by (s, j), so a sample can be regenerated independently of how
// the index range was split across threads.
//
// The state is a Weyl sequence started at mix64(mix64(seed) ^ index) and each
// draw is mix64 of the advanced state (i.e. SplitMix64 per substream).
class SampleStream {
 public:
  SampleStream(uint64_t seed, uint64_t index)
      : state_(mix64(mix64(seed + kGamma) ^ (index * kGamma2))) {}

  uint64_t next_u64() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform on the half-open interval (0, 1], 53 random bits.
  double next_open_closed() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1), 53 random bits.
  double next_closed_open() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound >= 1 (Lemire's rejection method).
  uint64_t next_below(uint64_t bound);

 private:
  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr uint64_t kGamma2 = 0xd1b54a32d192ed03ULL;
  uint64_t state_;
};

inline uint64_t SampleStream::next_below(uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
  auto low = static_cast<uint64_t>(m);
  if (low < bound) {
    const uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_u64()) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

}  // namespace qmcdisc

#endif  // QMCDISC_RNG_H_

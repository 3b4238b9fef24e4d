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

#ifndef QMCDISC_POINTSETS_H_
#define QMCDISC_POINTSETS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmcdisc/radix.h"

namespace qmcdisc {

enum class Variant {
  kHalton,
  kHammersley,
  kHammersleySym,     // indices -N < n < N, last coordinate |n|/N
  kHammersleySymDot,  // sign-bit reflections, 2^s N points
  kGeneralizedHalton,
  kExternal,          // loaded from a file without a known generator
};

std::string_view variant_name(Variant v);
// Accepts the names produced by variant_name(); throws ValidationError.
Variant parse_variant(std::string_view name);

struct Provenance {
  Variant variant = Variant::kExternal;
  std::vector<int> bases;
  int64_t start = 0;        // Q for Halton segments
  uint64_t count_param = 0; // N as passed to the generator
  std::optional<std::string> permutation_id;
  std::optional<uint64_t> seed;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Immutable list of points in the closed unit cube, stored row-major.
class PointSet {
 public:
  PointSet() = default;
  // Throws ValidationError if coords.size() is not a multiple of dim or a
  // coordinate lies outside [0, 1].
  PointSet(int dim, std::vector<double> coords, Provenance provenance);

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t k) const {
    return std::span<const double>(coords_).subspan(k * dim_, dim_);
  }
  double at(std::size_t k, int i) const { return coords_[k * dim_ + i]; }
  std::span<const double> coords() const { return coords_; }
  const Provenance& provenance() const { return provenance_; }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
  Provenance provenance_;
};

// Per-base, per-digit-position bijections of {0, ..., p_i - 1}. Positions
// beyond the supplied tables act as the identity.
class DigitPermutationFamily {
 public:
  // tables[i][j] is the map applied to digit position j+1 of coordinate i.
  // Throws ValidationError unless every table is a bijection of [0, p_i).
  DigitPermutationFamily(const BaseSystem& system,
                         std::vector<std::vector<std::vector<int>>> tables,
                         std::string id);

  static DigitPermutationFamily identity(const BaseSystem& system);
  // Independent uniform permutations for every base and position up to the
  // base's working depth.
  static DigitPermutationFamily random(const BaseSystem& system,
                                       uint64_t seed);

  int apply(int coordinate, int position, int digit) const;
  const std::string& id() const { return id_; }
  const BaseSystem& system() const { return system_; }

 private:
  BaseSystem system_;
  std::vector<std::vector<std::vector<int>>> tables_;
  std::string id_;
};

// H_s(n) for n = start, ..., start + count - 1; negative indices use p-adic
// radical inverses at the default depth.
PointSet halton(const BaseSystem& system, int64_t start, std::size_t count);

// (H_s(n), n/N) for 0 <= n < N. N >= 1.
PointSet hammersley(const BaseSystem& system, std::size_t n);

// (H_s(n), |n|/N) for -N < n < N, in ascending n. N >= 1.
PointSet hammersley_sym(const BaseSystem& system, std::size_t n);

// For 0 <= n < 2^s N write n = m_1 + 2 m_2 + ... + 2^{s-1} m_s + 2^s m;
// coordinate i is phi_i(m), reflected to 1 - phi_i(m) when m_i = 1; the last
// coordinate is n / (2^s N). The reflection of phi_i(0) is exactly 1.0, so
// this set lives in the closed cube.
PointSet hammersley_sym_dot(const BaseSystem& system, std::size_t n);

// Halton with every digit passed through the family before reflection.
PointSet generalized_halton(const BaseSystem& system,
                            const DigitPermutationFamily& perms, int64_t start,
                            std::size_t count);

// Yields the same values as halton(system, start, ...) one point at a time,
// for segments too long to materialize.
class HaltonStream {
 public:
  HaltonStream(BaseSystem system, int64_t start);

  int dim() const { return system_.dim(); }
  int64_t index() const { return next_; }
  // Writes H_s(index()) into out and advances.
  void next(std::span<double> out);

 private:
  BaseSystem system_;
  int64_t next_;
};

}  // namespace qmcdisc

#endif  // QMCDISC_POINTSETS_H_

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

#include "qmcdisc/pointsets.h"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "qmcdisc/error.h"
#include "qmcdisc/rng.h"

namespace qmcdisc {
namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 6> kVariantNames{{
    {Variant::kHalton, "halton"},
    {Variant::kHammersley, "hammersley"},
    {Variant::kHammersleySym, "hammersley-sym"},
    {Variant::kHammersleySymDot, "hammersley-sym-dot"},
    {Variant::kGeneralizedHalton, "generalized-halton"},
    {Variant::kExternal, "external"},
}};

std::vector<int> bases_of(const BaseSystem& system) {
  return {system.bases().begin(), system.bases().end()};
}

void check_count(std::size_t n) {
  if (n < 1) throw ValidationError("N must be >= 1");
  if (n > static_cast<std::size_t>(std::numeric_limits<int64_t>::max() / 4)) {
    throw ValidationError("N too large");
  }
}

void fill_halton_point(const BaseSystem& system, int64_t index,
                       double* out) {
  for (int i = 0; i < system.dim(); ++i) {
    out[i] = radical_inverse(index, system.base(i), system.depth(i));
  }
}

}  // namespace

std::string_view variant_name(Variant v) {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  return "external";
}

Variant parse_variant(std::string_view name) {
  for (const auto& [variant, n] : kVariantNames) {
    if (n == name) return variant;
  }
  throw ValidationError("unknown variant '" + std::string(name) + "'");
}

PointSet::PointSet(int dim, std::vector<double> coords, Provenance provenance)
    : dim_(dim), coords_(std::move(coords)), provenance_(std::move(provenance)) {
  if (dim < 1) throw ValidationError("point dimension must be >= 1");
  if (coords_.size() % static_cast<std::size_t>(dim) != 0) {
    throw ValidationError("coordinate count is not a multiple of dimension");
  }
  for (double c : coords_) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw ValidationError("coordinate outside the unit cube");
    }
  }
}

DigitPermutationFamily::DigitPermutationFamily(
    const BaseSystem& system, std::vector<std::vector<std::vector<int>>> tables,
    std::string id)
    : system_(system), tables_(std::move(tables)), id_(std::move(id)) {
  if (static_cast<int>(tables_.size()) != system.dim()) {
    throw ValidationError("permutation family needs one table list per base");
  }
  for (int i = 0; i < system.dim(); ++i) {
    const int p = system.base(i);
    for (const auto& perm : tables_[static_cast<std::size_t>(i)]) {
      if (static_cast<int>(perm.size()) != p) {
        throw ValidationError("permutation size differs from base");
      }
      std::vector<bool> seen(static_cast<std::size_t>(p), false);
      for (int v : perm) {
        if (v < 0 || v >= p || seen[static_cast<std::size_t>(v)]) {
          throw ValidationError("digit permutation is not a bijection");
        }
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
  }
}

DigitPermutationFamily DigitPermutationFamily::identity(
    const BaseSystem& system) {
  return DigitPermutationFamily(
      system, std::vector<std::vector<std::vector<int>>>(
                  static_cast<std::size_t>(system.dim())),
      "identity");
}

DigitPermutationFamily DigitPermutationFamily::random(const BaseSystem& system,
                                                      uint64_t seed) {
  std::vector<std::vector<std::vector<int>>> tables;
  for (int i = 0; i < system.dim(); ++i) {
    const int p = system.base(i);
    std::vector<std::vector<int>> per_position;
    for (int j = 0; j < system.depth(i); ++j) {
      std::vector<int> perm(static_cast<std::size_t>(p));
      std::iota(perm.begin(), perm.end(), 0);
      SampleStream rng(seed, static_cast<uint64_t>(i) << 32 |
                                 static_cast<uint64_t>(j));
      for (int k = p - 1; k > 0; --k) {
        const auto swap_with =
            static_cast<std::size_t>(rng.next_below(static_cast<uint64_t>(k) + 1));
        std::swap(perm[static_cast<std::size_t>(k)], perm[swap_with]);
      }
      per_position.push_back(std::move(perm));
    }
    tables.push_back(std::move(per_position));
  }
  return DigitPermutationFamily(system, std::move(tables),
                                "random:" + std::to_string(seed));
}

int DigitPermutationFamily::apply(int coordinate, int position,
                                  int digit) const {
  const auto& per_position = tables_[static_cast<std::size_t>(coordinate)];
  if (position < 0 || position >= static_cast<int>(per_position.size())) {
    return digit;
  }
  return per_position[static_cast<std::size_t>(position)]
                     [static_cast<std::size_t>(digit)];
}

PointSet halton(const BaseSystem& system, int64_t start, std::size_t count) {
  const int s = system.dim();
  std::vector<double> coords(count * static_cast<std::size_t>(s));
  for (std::size_t k = 0; k < count; ++k) {
    fill_halton_point(system, start + static_cast<int64_t>(k),
                      coords.data() + k * s);
  }
  return PointSet(s, std::move(coords),
                  {Variant::kHalton, bases_of(system), start, count, {}, {}});
}

PointSet hammersley(const BaseSystem& system, std::size_t n) {
  check_count(n);
  const int s = system.dim();
  const int d = s + 1;
  std::vector<double> coords(n * static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < n; ++k) {
    double* row = coords.data() + k * d;
    fill_halton_point(system, static_cast<int64_t>(k), row);
    row[s] = static_cast<double>(k) / static_cast<double>(n);
  }
  return PointSet(d, std::move(coords),
                  {Variant::kHammersley, bases_of(system), 0, n, {}, {}});
}

PointSet hammersley_sym(const BaseSystem& system, std::size_t n) {
  check_count(n);
  const int s = system.dim();
  const int d = s + 1;
  const std::size_t total = 2 * n - 1;
  const auto top = static_cast<int64_t>(n) - 1;
  std::vector<double> coords(total * static_cast<std::size_t>(d));
  std::size_t k = 0;
  for (int64_t idx = -top; idx <= top; ++idx, ++k) {
    double* row = coords.data() + k * d;
    fill_halton_point(system, idx, row);
    row[s] = static_cast<double>(idx < 0 ? -idx : idx) / static_cast<double>(n);
  }
  return PointSet(d, std::move(coords),
                  {Variant::kHammersleySym, bases_of(system), 0, n, {}, {}});
}

PointSet hammersley_sym_dot(const BaseSystem& system, std::size_t n) {
  check_count(n);
  const int s = system.dim();
  if (s > 40) throw ValidationError("2^s N too large for reflected variant");
  const int d = s + 1;
  const std::size_t blocks = std::size_t{1} << s;
  if (n > std::numeric_limits<std::size_t>::max() / blocks / d) {
    throw ValidationError("2^s N too large for reflected variant");
  }
  const std::size_t total = blocks * n;
  std::vector<double> coords(total * static_cast<std::size_t>(d));
  std::vector<double> base_point(static_cast<std::size_t>(s));
  for (std::size_t m = 0; m < n; ++m) {
    fill_halton_point(system, static_cast<int64_t>(m), base_point.data());
    for (std::size_t signs = 0; signs < blocks; ++signs) {
      const std::size_t idx = m * blocks + signs;
      double* row = coords.data() + idx * d;
      for (int i = 0; i < s; ++i) {
        const double phi = base_point[static_cast<std::size_t>(i)];
        row[i] = (signs >> i) & 1 ? 1.0 - phi : phi;
      }
      row[s] = static_cast<double>(idx) / static_cast<double>(total);
    }
  }
  return PointSet(d, std::move(coords),
                  {Variant::kHammersleySymDot, bases_of(system), 0, n, {}, {}});
}

PointSet generalized_halton(const BaseSystem& system,
                            const DigitPermutationFamily& perms, int64_t start,
                            std::size_t count) {
  if (!(perms.system() == system)) {
    throw ValidationError("permutation family built for a different system");
  }
  const int s = system.dim();
  std::vector<double> coords(count * static_cast<std::size_t>(s));
  for (std::size_t k = 0; k < count; ++k) {
    const int64_t idx = start + static_cast<int64_t>(k);
    for (int i = 0; i < s; ++i) {
      DigitVector e = digits(idx, system.base(i),
                             std::min(system.depth(i),
                                      max_value_depth(system.base(i))));
      for (int j = 0; j < e.depth(); ++j) {
        auto& digit = e.digits[static_cast<std::size_t>(j)];
        digit = perms.apply(i, j, digit);
      }
      coords[k * s + i] = digits_value(e.digits, system.base(i));
    }
  }
  return PointSet(s, std::move(coords),
                  {Variant::kGeneralizedHalton, bases_of(system), start, count,
                   perms.id(), {}});
}

HaltonStream::HaltonStream(BaseSystem system, int64_t start)
    : system_(std::move(system)), next_(start) {}

void HaltonStream::next(std::span<double> out) {
  if (static_cast<int>(out.size()) != system_.dim()) {
    throw ValidationError("output span has wrong dimension");
  }
  fill_halton_point(system_, next_, out.data());
  ++next_;
}

}  // namespace qmcdisc

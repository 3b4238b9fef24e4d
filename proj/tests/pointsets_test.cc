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
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "qmcdisc/error.h"
#include "qmcdisc/pointset_io.h"

namespace qmcdisc {
namespace {

// Digit-by-digit reference for the radical inverse: reversed digits summed
// from the least significant end in long double.
double reference_phi(int64_t n, int p) {
  const DigitVector e = digits(n, p, default_depth(p));
  long double v = 0.0L;
  for (auto it = e.digits.rbegin(); it != e.digits.rend(); ++it) {
    v = (v + *it) / p;
  }
  const double out = static_cast<double>(v);
  return out < 1.0 ? out : std::nextafter(1.0, 0.0);
}

bool bit_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

TEST(HaltonTest, SpecExamples) {
  const PointSet a = halton(BaseSystem({2, 3}), 0, 2);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.at(0, 0), 0.0);
  EXPECT_EQ(a.at(0, 1), 0.0);
  EXPECT_EQ(a.at(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(a.at(1, 1), 1.0 / 3.0);

  const PointSet b = halton(BaseSystem({2}), 1, 3);
  EXPECT_EQ(b.at(0, 0), 0.5);
  EXPECT_EQ(b.at(1, 0), 0.25);
  EXPECT_EQ(b.at(2, 0), 0.75);

  const PointSet c = halton(BaseSystem({2, 3}), -1, 1);
  EXPECT_EQ(c.at(0, 0), 1.0 - std::ldexp(1.0, -53));
  EXPECT_NEAR(c.at(0, 1), reference_phi(-1, 3), 1e-16);
  EXPECT_LT(c.at(0, 1), 1.0);

  EXPECT_EQ(halton(BaseSystem({2}), 5, 0).size(), 0u);
}

TEST(HaltonTest, MatchesDigitReference) {
  const BaseSystem s({2, 3, 5, 7});
  const PointSet pts = halton(s, -300, 700);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (int i = 0; i < s.dim(); ++i) {
      EXPECT_NEAR(pts.at(k, i), reference_phi(-300 + static_cast<int64_t>(k), s.base(i)),
                  2e-16);
    }
  }
}

TEST(HaltonTest, StreamMatchesEager) {
  const BaseSystem s({2, 3, 5});
  const PointSet pts = halton(s, -17, 500);
  HaltonStream stream(s, -17);
  std::vector<double> out(3);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    EXPECT_EQ(stream.index(), -17 + static_cast<int64_t>(k));
    stream.next(out);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(bit_equal(out[i], pts.at(k, i)));
  }
}

// Among P_r consecutive indices every elementary box of that shape holds
// exactly one point. Points of short nonnegative indices sit at least 3^-9
// above their box's lower edge, hence the nudge before floor(). Negative starts are covered in base 2 below; for odd
// bases their values sit within an ulp of box edges.
TEST(HaltonTest, ElementaryBoxEquidistribution) {
  const BaseSystem s({2, 3});
  for (int r1 = 0; r1 <= 12; ++r1) {
    for (int r2 = 0; r2 <= 7; ++r2) {
      const uint64_t q1 = checked_pow(2, r1), q2 = checked_pow(3, r2);
      if (q1 * q2 > 5000) continue;
      for (int64_t start : {int64_t{0}, int64_t{777}, int64_t{12345}}) {
        const PointSet pts = halton(s, start, q1 * q2);
        std::vector<int> hits(q1 * q2, 0);
        for (std::size_t k = 0; k < pts.size(); ++k) {
          const auto a1 = static_cast<uint64_t>(std::floor(pts.at(k, 0) * q1 + 1e-9));
          const auto a2 = static_cast<uint64_t>(std::floor(pts.at(k, 1) * q2 + 1e-9));
          ++hits[a1 * q2 + a2];
        }
        EXPECT_TRUE(std::all_of(hits.begin(), hits.end(),
                                [](int h) { return h == 1; }))
            << "r=(" << r1 << "," << r2 << ") Q=" << start;
      }
    }
  }
}

TEST(HaltonTest, ElementaryIntervalsNegativeStartBaseTwo) {
  const BaseSystem s({2});
  for (int r = 0; r <= 12; ++r) {
    const uint64_t q = checked_pow(2, r);
    for (int64_t start : {int64_t{-1}, int64_t{-777}, int64_t{-4096}}) {
      const PointSet pts = halton(s, start, q);
      std::vector<int> hits(q, 0);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        ++hits[static_cast<uint64_t>(std::floor(pts.at(k, 0) * q))];
      }
      EXPECT_TRUE(std::all_of(hits.begin(), hits.end(),
                              [](int h) { return h == 1; }));
    }
  }
}

TEST(HammersleyTest, SpecExamples) {
  const PointSet a = hammersley(BaseSystem({2}), 2);
  ASSERT_EQ(a.dim(), 2);
  EXPECT_EQ(a.at(0, 0), 0.0);
  EXPECT_EQ(a.at(0, 1), 0.0);
  EXPECT_EQ(a.at(1, 0), 0.5);
  EXPECT_EQ(a.at(1, 1), 0.5);

  const PointSet b = hammersley(BaseSystem({2, 3}), 1);
  ASSERT_EQ(b.size(), 1u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(b.at(0, i), 0.0);

  const PointSet c = hammersley(BaseSystem({2, 3}), 4);
  EXPECT_EQ(c.at(3, 0), 0.75);
  EXPECT_DOUBLE_EQ(c.at(3, 1), 1.0 / 9.0);
  EXPECT_EQ(c.at(3, 2), 0.75);
  EXPECT_THROW(hammersley(BaseSystem({2}), 0), ValidationError);
}

TEST(HammersleyTest, LastCoordinateIncreasesAndPrefixIsHalton) {
  const BaseSystem s({2, 3});
  const PointSet h = hammersley(s, 300);
  const PointSet seg = halton(s, 0, 300);
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (k > 0) EXPECT_LT(h.at(k - 1, 2), h.at(k, 2));
    EXPECT_EQ(h.at(k, 2), static_cast<double>(k) / 300.0);
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(bit_equal(h.at(k, i), seg.at(k, i)));
    for (int i = 0; i < 3; ++i) {
      EXPECT_GE(h.at(k, i), 0.0);
      EXPECT_LT(h.at(k, i), 1.0);
    }
  }
}

TEST(HammersleySymTest, SpecExamples) {
  const PointSet one = hammersley_sym(BaseSystem({2, 3}), 1);
  ASSERT_EQ(one.size(), 1u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(one.at(0, i), 0.0);

  const PointSet two = hammersley_sym(BaseSystem({2}), 2);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two.at(0, 0), reference_phi(-1, 2));
  EXPECT_EQ(two.at(0, 1), 0.5);
  EXPECT_EQ(two.at(1, 0), 0.0);
  EXPECT_EQ(two.at(1, 1), 0.0);
  EXPECT_EQ(two.at(2, 0), 0.5);
  EXPECT_EQ(two.at(2, 1), 0.5);

  EXPECT_EQ(hammersley_sym(BaseSystem({2, 3}), 5).size(), 9u);
  EXPECT_EQ(hammersley_sym(BaseSystem({2, 3}), 5).provenance().variant,
            Variant::kHammersleySym);
}

TEST(HammersleySymTest, CoordinatesAreHaltonOfSignedIndex) {
  const BaseSystem s({3, 5});
  const std::size_t n = 40;
  const PointSet pts = hammersley_sym(s, n);
  const PointSet seg = halton(s, -static_cast<int64_t>(n) + 1, 2 * n - 1);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const int64_t idx = static_cast<int64_t>(k) - static_cast<int64_t>(n) + 1;
    EXPECT_EQ(pts.at(k, 2), static_cast<double>(std::llabs(idx)) / n);
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(bit_equal(pts.at(k, i), seg.at(k, i)));
  }
}

TEST(HammersleySymDotTest, SpecExamples) {
  const PointSet a = hammersley_sym_dot(BaseSystem({2}), 1);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.at(0, 0), 0.0);
  EXPECT_EQ(a.at(0, 1), 0.0);
  EXPECT_EQ(a.at(1, 0), 1.0);
  EXPECT_EQ(a.at(1, 1), 0.5);

  EXPECT_EQ(hammersley_sym_dot(BaseSystem({2, 3}), 3).size(), 12u);
}

TEST(HammersleySymDotTest, SignBitsReflect) {
  const BaseSystem s({2, 3});
  const std::size_t n = 16;
  const PointSet pts = hammersley_sym_dot(s, n);
  for (std::size_t idx = 0; idx < pts.size(); ++idx) {
    const int64_t m = static_cast<int64_t>(idx >> 2);
    for (int i = 0; i < 2; ++i) {
      const double phi = radical_inverse(m, s.base(i));
      const bool flip = (idx >> i) & 1u;
      EXPECT_EQ(pts.at(idx, i), flip ? 1.0 - phi : phi);
      EXPECT_GE(pts.at(idx, i), 0.0);
      EXPECT_LE(pts.at(idx, i), 1.0);
    }
    EXPECT_EQ(pts.at(idx, 2), static_cast<double>(idx) / (4.0 * n));
  }
  // Identity signs reproduce the Halton coordinates.
  const PointSet seg = halton(s, 0, n);
  for (std::size_t m = 0; m < n; ++m) {
    EXPECT_EQ(pts.at(4 * m, 0), seg.at(m, 0));
    EXPECT_EQ(pts.at(4 * m, 1), seg.at(m, 1));
  }
}

TEST(GeneralizedHaltonTest, IdentityEqualsHalton) {
  const BaseSystem s({2, 3, 5});
  const auto perms = DigitPermutationFamily::identity(s);
  const PointSet g = generalized_halton(s, perms, -50, 400);
  const PointSet h = halton(s, -50, 400);
  ASSERT_EQ(g.coords().size(), h.coords().size());
  for (std::size_t j = 0; j < g.coords().size(); ++j) {
    EXPECT_TRUE(bit_equal(g.coords()[j], h.coords()[j]));
  }
}

TEST(GeneralizedHaltonTest, SingleSwapDropsLeadingHalf) {
  const BaseSystem s({2});
  std::vector<std::vector<std::vector<int>>> tables{{{1, 0}}};
  const DigitPermutationFamily swap(s, tables, "swap");
  const PointSet g = generalized_halton(s, swap, 1, 1);
  // n = 1 has first digit 1, mapped to 0; all other digits 0 stay 0.
  EXPECT_EQ(g.at(0, 0), 0.0);
  const PointSet g0 = generalized_halton(s, swap, 0, 1);
  EXPECT_EQ(g0.at(0, 0), 0.5);
}

TEST(GeneralizedHaltonTest, RejectsNonBijection) {
  const BaseSystem s({3});
  EXPECT_THROW(DigitPermutationFamily(s, {{{0, 0, 1}}}, "bad"), ValidationError);
  EXPECT_THROW(DigitPermutationFamily(s, {{{0, 1}}}, "short"), ValidationError);
  EXPECT_THROW(DigitPermutationFamily(s, {{{0, 1, 3}}}, "range"), ValidationError);
}

TEST(GeneralizedHaltonTest, FirstDigitsArePermutation) {
  const BaseSystem s({2, 3, 5, 7});
  const auto perms = DigitPermutationFamily::random(s, 99);
  EXPECT_EQ(perms.id(), "random:99");
  for (int64_t start : {int64_t{0}, int64_t{13}, int64_t{-40}}) {
    const PointSet g = generalized_halton(s, perms, start, 210);
    for (int i = 0; i < s.dim(); ++i) {
      const int p = s.base(i);
      for (std::size_t k0 = 0; k0 + p <= g.size(); k0 += p) {
        std::vector<int> seen(p, 0);
        for (int j = 0; j < p; ++j) {
          ++seen[static_cast<int>(std::floor(g.at(k0 + j, i) * p))];
        }
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(),
                                [](int c) { return c == 1; }));
      }
    }
  }
  EXPECT_EQ(generalized_halton(s, perms, 0, 10).provenance().permutation_id,
            "random:99");
}

TEST(PointSetTest, Validation) {
  EXPECT_THROW(PointSet(2, {0.1, 0.2, 0.3}, {}), ValidationError);
  EXPECT_THROW(PointSet(1, {1.5}, {}), ValidationError);
  EXPECT_THROW(PointSet(1, {-0.1}, {}), ValidationError);
  EXPECT_NO_THROW(PointSet(1, {1.0}, {}));
}

TEST(VariantTest, NamesRoundTrip) {
  for (Variant v : {Variant::kHalton, Variant::kHammersley,
                    Variant::kHammersleySym, Variant::kHammersleySymDot,
                    Variant::kGeneralizedHalton, Variant::kExternal}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("sobol"), ValidationError);
}

TEST(PointSetIoTest, CsvRoundTripIsBitExact) {
  const BaseSystem s({2, 3, 5});
  const PointSet pts = hammersley_sym(s, 100);
  std::stringstream ss;
  write_csv(ss, pts);
  const PointSet back = read_csv(ss, pts.provenance());
  ASSERT_EQ(back.dim(), pts.dim());
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t j = 0; j < pts.coords().size(); ++j) {
    EXPECT_TRUE(bit_equal(back.coords()[j], pts.coords()[j]));
  }
}

TEST(PointSetIoTest, ManifestRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "qmcdisc_io_test";
  std::filesystem::create_directories(dir);
  const BaseSystem s({2, 3});
  const PointSet pts =
      generalized_halton(s, DigitPermutationFamily::random(s, 5), -9, 64);
  const auto manifest = write_point_set(dir / "set.csv", pts);
  EXPECT_EQ(manifest.extension(), ".json");
  const PointSet back = read_point_set(manifest);
  EXPECT_EQ(back.provenance(), pts.provenance());
  ASSERT_EQ(back.coords().size(), pts.coords().size());
  for (std::size_t j = 0; j < pts.coords().size(); ++j) {
    EXPECT_TRUE(bit_equal(back.coords()[j], pts.coords()[j]));
  }

  // Tampered count is rejected.
  nlohmann::json j;
  {
    std::ifstream in(manifest);
    in >> j;
  }
  j["count"] = 63;
  {
    std::ofstream out(manifest);
    out << j.dump();
  }
  EXPECT_THROW(read_point_set(manifest), ValidationError);
  std::filesystem::remove_all(dir);
}

TEST(PointSetIoTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, std::nextafter(1.0, 0.0), 5e-324, 0.0}) {
    EXPECT_TRUE(bit_equal(std::strtod(format_double(v).c_str(), nullptr), v));
  }
}

}  // namespace
}  // namespace qmcdisc

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

// Digit expansions in coprime bases and the Chinese-remainder arithmetic that
// ties Halton points to residue classes of their index.
//
// Every fraction the library produces from a digit string goes through
// digits_value(), so two digit strings that agree up to trailing zeros map to
// bit-identical doubles, and fraction_digits() inverts digits_value() exactly.
// This keeps float box tests and integer residue counting in agreement.

#ifndef QMCDISC_RADIX_H_
#define QMCDISC_RADIX_H_

#include <cstdint>
#include <span>
#include <vector>

namespace qmcdisc {

// Moduli P_r are guarded at 2^63.
inline constexpr uint64_t kModulusLimit = uint64_t{1} << 63;
// Largest accepted base. Keeps p^K below 2^64 at the default depth.
inline constexpr int kMaxBase = 2048;

// Pairwise-coprime bases p_1..p_s together with p_0 = p_1 * ... * p_s.
class BaseSystem {
 public:
  // Throws ValidationError for an empty list, a base outside [2, kMaxBase],
  // or a non-coprime pair; OverflowError if p_0 does not fit.
  explicit BaseSystem(std::vector<int> bases);

  // The first s primes, 2, 3, 5, ...
  static BaseSystem first_primes(int s);

  int dim() const { return static_cast<int>(bases_.size()); }
  int base(int i) const { return bases_[static_cast<std::size_t>(i)]; }
  std::span<const int> bases() const { return bases_; }
  uint64_t product() const { return product_; }
  // Working digit depth K_i for coordinate i (see default_depth()).
  int depth(int i) const { return depths_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const BaseSystem&, const BaseSystem&) = default;

 private:
  std::vector<int> bases_;
  std::vector<int> depths_;
  uint64_t product_ = 1;
};

// Base-p digits e_1..e_K of n, least significant first, so that
// sum_j e_j p^(j-1) == n (mod p^K). Negative n gets its p-adic expansion.
struct DigitVector {
  int base = 2;
  std::vector<int> digits;

  int depth() const { return static_cast<int>(digits.size()); }
};

DigitVector digits(int64_t n, int p, int depth);

// Smallest K with p^K >= 2^53, i.e. ceil(53 / log2 p).
int default_depth(int p);

// Largest r with p^r < 2^64. Digits past this depth are below double
// resolution and are ignored by digits_value().
int max_value_depth(int p);

// p^r, throwing OverflowError when the result reaches kModulusLimit.
uint64_t checked_pow(int p, int r);

// The canonical double for the fraction 0.a_1 a_2 ... a_r in base p
// (a_1 most significant). Evaluated as the rational A / p^r rounded once
// through extended precision; the result is clamped below 1.
double digits_value(std::span<const int> fraction_digits, int p);

// phi_p(n) = sum_j e_j(n) p^(-j) over the first `depth` digits.
double radical_inverse(int64_t n, int p, int depth);
inline double radical_inverse(int64_t n, int p) {
  return radical_inverse(n, p, default_depth(p));
}

// Leading r digits x_1..x_r of x in base p (most significant first): the
// largest digit string whose digits_value() does not exceed x. For x produced
// by digits_value() / radical_inverse() this recovers the generating digits.
// x must lie in [0, 1]; x == 1 yields all digits p-1.
std::vector<int> fraction_digits(double x, int p, int r);

// [x]_r: digits_value(fraction_digits(x, p, r), p). Returns 0 for r == 0.
double truncate_fraction(double x, int p, int r);

// Inverse of a modulo m (gcd(a, m) must be 1, m >= 1), in [0, m).
uint64_t mod_inverse(uint64_t a, uint64_t m);

// Depth vector r with its modulus P_r = prod p_i^{r_i} and CRT weights
// M_i = (P_r / p_i^{r_i})^{-1} mod p_i^{r_i} (M_i = 0 when r_i = 0).
struct MultiRadix {
  BaseSystem system;
  std::vector<int> depths;
  uint64_t modulus = 1;
  std::vector<uint64_t> component_moduli;  // p_i^{r_i}
  std::vector<uint64_t> weights;           // M_i

  int dim() const { return system.dim(); }
  // Residue of the index k modulo P_r whose low r_i base-p_i digits are the
  // given residues a_i in [0, p_i^{r_i}).
  uint64_t combine(std::span<const uint64_t> residues) const;
};

MultiRadix crt_weights(const BaseSystem& system, std::span<const int> depths);

// x_hat_r: the residue k mod P_r such that the Halton point H_s(k) and x agree
// on the first r_i base-p_i digits in every coordinate.
uint64_t localize(std::span<const double> x, const MultiRadix& mr);

// As localize(), with the r_i-th digit of coordinate i replaced by b_i.
// Requires every r_i >= 1 and b_i in [0, p_i).
uint64_t localize_with_digits(std::span<const double> x, const MultiRadix& mr,
                              std::span<const int> b);

// Digit-level form of localize_with_digits(): coordinate i contributes
// sum_{j < r_i} x_digits[i][j-1] p_i^{j-1} + b_i p_i^{r_i - 1}. x_digits[i]
// must hold at least r_i - 1 leading digits.
uint64_t localize_digits(const MultiRadix& mr,
                         std::span<const std::vector<int>> x_digits,
                         std::span<const int> b);

}  // namespace qmcdisc

#endif  // QMCDISC_RADIX_H_

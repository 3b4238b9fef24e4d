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

// Exponential-sum form of the truncated Halton discrepancy.
//
// For a depth vector r (all r_i >= 1) the truncated box [0, [x]_n) splits
// into elementary boxes whose r_i-th digit is below x_{i,r_i}. Each such box
// is a residue class mod P_r of the index k, so the contribution
//
//   block(Q, N, r, x) = sum_{b_i < x_{i,r_i}} sum_{k=Q}^{Q+N-1}
//                         ( [k == x_hat_{r,b} mod P_r] - 1/P_r )
//
// can be counted directly (block_direct) or expanded over the nonzero
// frequencies m of Z/P_r (block_fourier):
//
//   block = sum_{m in I*_{P_r}} varphi(m) psi(m) e(-m x_hat_r / P_r).
//
// Summing blocks over r in [1, n]^s reproduces D([x]_n, H_s segment).

#ifndef QMCDISC_FOURIER_H_
#define QMCDISC_FOURIER_H_

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmcdisc/discrepancy.h"
#include "qmcdisc/radix.h"

namespace qmcdisc {

using Complex = std::complex<double>;

// The integers lo..hi with lo = -floor((M-1)/2), hi = floor(M/2): a complete
// residue system mod M, optionally without 0.
struct IndexRange {
  uint64_t modulus = 1;
  int64_t lo = 0;
  int64_t hi = 0;
  bool star = false;

  uint64_t size() const {
    return static_cast<uint64_t>(hi - lo + 1) - (star ? 1 : 0);
  }
  bool contains(int64_t m) const {
    return m >= lo && m <= hi && !(star && m == 0);
  }
};

IndexRange index_range(uint64_t modulus, bool star = false);

// e(x) = exp(2 pi i x), with x reduced mod 1 before scaling.
Complex unit_phase(double x);
// e(a / M) for integers, reducing a mod M exactly first.
Complex unit_phase(int64_t a, uint64_t modulus);

// min({a}, 1 - {a}).
double nearest_int_distance(double a);

// (1/M) sum_{k in I_M} e(a k / M); equals 1 when M | a and 0 otherwise.
Complex delta_fourier(int64_t a, uint64_t modulus);

// (e(m(Q+N)/P) - e(mQ/P)) / (P (e(m/P) - 1)), i.e. (1/P) sum_{k=Q}^{Q+N-1}
// e(mk/P). Throws ValidationError when m == 0 mod P.
Complex varphi(const MultiRadix& mr, int64_t start, uint64_t count, int64_t m);

// prod_i psi_i with m'_i = (-m M_i) mod p_i and d_i = x_{i,r_i}:
// psi_i = d_i when m'_i == 0, else (1 - e(-m'_i d_i / p_i)) / (e(m'_i/p_i) - 1).
// top_digits holds d_1..d_s.
Complex psi(const MultiRadix& mr, int64_t m, std::span<const int> top_digits);
// Same, with d_i read from x at depth r_i.
Complex psi(const MultiRadix& mr, int64_t m, std::span<const double> x);

// One term of the block decomposition. x_digits[i] holds the leading r_i
// base-p_i digits of x_i.
struct FourierBlock {
  MultiRadix mr;
  int64_t start = 0;
  uint64_t count = 0;
  std::vector<std::vector<int>> x_digits;

  // Throws ValidationError unless every r_i >= 1; OverflowError past 2^63.
  static FourierBlock make(const BaseSystem& system, int64_t start,
                           uint64_t count, std::span<const int> depths,
                           std::span<const double> x);

  std::vector<int> top_digits() const;
  // x_hat_r.
  uint64_t residue() const;
};

// Integer residue counting; the only rounding is the final division by P_r.
double block_direct(const FourierBlock& fb);

// Frequency expansion over I*_{P_r}. Throws BudgetExceeded when P_r exceeds
// budgets.fourier_frequencies.
Complex block_fourier(const FourierBlock& fb, const Budgets& budgets = {});

enum class BlockMethod { kDirect, kFourier };

// sum over r in [1, depth]^s of the block values; equals
// truncated_local_discrepancy(system, start, count, x, depth).
double truncated_discrepancy_via_blocks(const BaseSystem& system,
                                        int64_t start, uint64_t count,
                                        std::span<const double> x, int depth,
                                        BlockMethod method = BlockMethod::kDirect,
                                        const Budgets& budgets = {});

struct FourierSelfCheck {
  uint64_t seed = 0;
  int block_cases = 0;
  double max_block_error = 0.0;      // |block_fourier - block_direct|
  double max_imaginary = 0.0;        // |Im block_fourier|
  int reconstruction_cases = 0;
  double max_reconstruction_error = 0.0;  // blocks vs truncated discrepancy
  double block_tolerance = 1e-9;
  double reconstruction_tolerance = 1e-8;
  bool passed = false;
};

// Seeded random battery: block_cases (Q, N, r, x) with P_r <= max_modulus
// over bases (2,3) and (2,3,5), plus reconstruction_cases block sums on
// short base-(2,3) Halton segments (Q >= 0), each checked with both block
// methods.
FourierSelfCheck fourier_self_check(uint64_t seed, int block_cases = 200,
                                    int reconstruction_cases = 50,
                                    uint64_t max_modulus = 4096);

nlohmann::json to_json(const FourierSelfCheck& report);

}  // namespace qmcdisc

#endif  // QMCDISC_FOURIER_H_

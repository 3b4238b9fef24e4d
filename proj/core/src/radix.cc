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
#include "qmcdisc/radix.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qmcdisc/error.h"

namespace qmcdisc {
namespace {

using u128 = unsigned __int128;

constexpr double kBelowOne = 1.0 - 0x1.0p-53;

void check_base(int p) {
  if (p < 2 || p > kMaxBase) {
    throw ValidationError("base " + std::to_string(p) + " outside [2, " +
                          std::to_string(kMaxBase) + "]");
  }
}

// p^r as an exact unsigned 64-bit integer; r must not exceed max_value_depth.
uint64_t pow_u64(int p, int r) {
  uint64_t v = 1;
  for (int j = 0; j < r; ++j) v *= static_cast<uint64_t>(p);
  return v;
}

// A / p^r rounded once via long double, clamped to [0, 1).
double ratio_value(uint64_t numerator, uint64_t denominator) {
  const long double q = static_cast<long double>(numerator) /
                        static_cast<long double>(denominator);
  const double v = static_cast<double>(q);
  return v < 1.0 ? v : kBelowOne;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

}  // namespace

BaseSystem::BaseSystem(std::vector<int> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw ValidationError("base system must be non-empty");
  for (int p : bases_) check_base(p);
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    for (std::size_t j = i + 1; j < bases_.size(); ++j) {
      if (std::gcd(bases_[i], bases_[j]) != 1) {
        throw ValidationError("bases " + std::to_string(bases_[i]) + " and " +
                              std::to_string(bases_[j]) +
                              " are not coprime");
      }
    }
  }
  u128 product = 1;
  for (int p : bases_) {
    product *= static_cast<u128>(p);
    if (product >= kModulusLimit) {
      throw OverflowError("product of bases exceeds 2^63");
    }
    depths_.push_back(default_depth(p));
  }
  product_ = static_cast<uint64_t>(product);
}

BaseSystem BaseSystem::first_primes(int s) {
  if (s < 1) throw ValidationError("dimension must be >= 1");
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < s; ++c) {
    bool prime = true;
    for (int q : primes) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return BaseSystem(std::move(primes));
}

DigitVector digits(int64_t n, int p, int depth) {
  check_base(p);
  if (depth < 0) throw ValidationError("digit depth must be >= 0");
  DigitVector out{p, std::vector<int>(static_cast<std::size_t>(depth), 0)};
  // -1 - m has digits (p-1) - e_j(m) for m >= 0.
  const bool negative = n < 0;
  uint64_t m = negative ? static_cast<uint64_t>(-(n + 1))
                        : static_cast<uint64_t>(n);
  const auto base = static_cast<uint64_t>(p);
  for (int j = 0; j < depth; ++j) {
    const int e = static_cast<int>(m % base);
    m /= base;
    out.digits[static_cast<std::size_t>(j)] = negative ? p - 1 - e : e;
  }
  return out;
}

int default_depth(int p) {
  check_base(p);
  int k = 0;
  u128 v = 1;
  while (v < (u128{1} << 53)) {
    v *= static_cast<u128>(p);
    ++k;
  }
  return k;
}

int max_value_depth(int p) {
  check_base(p);
  int r = 0;
  u128 v = p;
  while (v <= std::numeric_limits<uint64_t>::max()) {
    v *= static_cast<u128>(p);
    ++r;
  }
  return r;
}

uint64_t checked_pow(int p, int r) {
  check_base(p);
  if (r < 0) throw ValidationError("exponent must be >= 0");
  u128 v = 1;
  for (int j = 0; j < r; ++j) {
    v *= static_cast<u128>(p);
    if (v >= kModulusLimit) {
      throw OverflowError(std::to_string(p) + "^" + std::to_string(r) +
                          " exceeds 2^63");
    }
  }
  return static_cast<uint64_t>(v);
}

double digits_value(std::span<const int> fraction_digits, int p) {
  check_base(p);
  const int r = std::min(static_cast<int>(fraction_digits.size()),
                         max_value_depth(p));
  uint64_t numerator = 0;
  for (int j = 0; j < r; ++j) {
    const int a = fraction_digits[static_cast<std::size_t>(j)];
    if (a < 0 || a >= p) throw ValidationError("digit out of range");
    numerator = numerator * static_cast<uint64_t>(p) + static_cast<uint64_t>(a);
  }
  return ratio_value(numerator, pow_u64(p, r));
}

double radical_inverse(int64_t n, int p, int depth) {
  if (depth < 1) throw ValidationError("radical inverse depth must be >= 1");
  const DigitVector e = digits(n, p, std::min(depth, max_value_depth(p)));
  // e is least significant first, which is exactly the fraction order.
  return digits_value(e.digits, p);
}

std::vector<int> fraction_digits(double x, int p, int r) {
  check_base(p);
  if (r < 0) throw ValidationError("truncation depth must be >= 0");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError("fraction must lie in [0, 1]");
  }
  const int depth = std::min(r, max_value_depth(p));
  std::vector<int> out(static_cast<std::size_t>(r), 0);
  if (depth == 0) return out;
  const uint64_t scale = pow_u64(p, depth);
  uint64_t a;
  if (x == 1.0) {
    a = scale - 1;
  } else {
    // Exact floor(x * p^depth): x = mant * 2^(exp - 53) with exp <= 0.
    int exp = 0;
    const double frac = std::frexp(x, &exp);
    const auto mant = static_cast<uint64_t>(std::ldexp(frac, 53));
    const int shift = 53 - exp;
    const u128 prod = static_cast<u128>(mant) * scale;
    a = shift >= 128 ? 0 : static_cast<uint64_t>(prod >> shift);
    // Rounding in digits_value can make a few larger strings map to <= x.
    uint64_t step = 1;
    while (a < scale - 1) {
      const uint64_t cand = a + std::min(step, scale - 1 - a);
      if (ratio_value(cand, scale) <= x) {
        a = cand;
        step *= 2;
      } else if (step > 1) {
        step /= 2;
      } else {
        break;
      }
    }
  }
  for (int j = depth - 1; j >= 0; --j) {
    out[static_cast<std::size_t>(j)] = static_cast<int>(a % static_cast<uint64_t>(p));
    a /= static_cast<uint64_t>(p);
  }
  return out;
}

double truncate_fraction(double x, int p, int r) {
  if (r == 0) {
    check_base(p);
    return 0.0;
  }
  return digits_value(fraction_digits(x, p, r), p);
}

uint64_t mod_inverse(uint64_t a, uint64_t m) {
  if (m == 0) throw ValidationError("modulus must be >= 1");
  if (m == 1) return 0;
  // Extended Euclid on signed 128-bit to avoid intermediate overflow.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw ValidationError("value is not invertible modulo m");
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<uint64_t>(inv);
}

uint64_t MultiRadix::combine(std::span<const uint64_t> residues) const {
  uint64_t acc = 0;
  for (int i = 0; i < dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (depths[iu] == 0) continue;
    const uint64_t cofactor = modulus / component_moduli[iu];
    const uint64_t term =
        mulmod(mulmod(weights[iu], cofactor, modulus), residues[iu], modulus);
    acc = (acc + term) % modulus;
  }
  return acc;
}

MultiRadix crt_weights(const BaseSystem& system, std::span<const int> depths) {
  if (static_cast<int>(depths.size()) != system.dim()) {
    throw ValidationError("depth vector length does not match base system");
  }
  MultiRadix mr{system, {depths.begin(), depths.end()}, 1, {}, {}};
  u128 modulus = 1;
  for (int i = 0; i < system.dim(); ++i) {
    const int r = depths[static_cast<std::size_t>(i)];
    if (r < 0) throw ValidationError("depths must be >= 0");
    const uint64_t q = checked_pow(system.base(i), r);
    mr.component_moduli.push_back(q);
    modulus *= q;
    if (modulus >= kModulusLimit) {
      throw OverflowError("modulus P_r exceeds 2^63");
    }
  }
  mr.modulus = static_cast<uint64_t>(modulus);
  for (int i = 0; i < system.dim(); ++i) {
    const uint64_t q = mr.component_moduli[static_cast<std::size_t>(i)];
    if (depths[static_cast<std::size_t>(i)] == 0) {
      mr.weights.push_back(0);
    } else {
      mr.weights.push_back(mod_inverse((mr.modulus / q) % q, q));
    }
  }
  return mr;
}

uint64_t localize_digits(const MultiRadix& mr,
                         std::span<const std::vector<int>> x_digits,
                         std::span<const int> b) {
  std::vector<uint64_t> residues(static_cast<std::size_t>(mr.dim()), 0);
  for (int i = 0; i < mr.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const int r = mr.depths[iu];
    if (r == 0) continue;
    const int p = mr.system.base(i);
    if (b[iu] < 0 || b[iu] >= p) {
      throw ValidationError("digit override out of range for base " +
                            std::to_string(p));
    }
    uint64_t acc = static_cast<uint64_t>(b[iu]);
    for (int j = r - 1; j >= 1; --j) {
      acc = acc * static_cast<uint64_t>(p) +
            static_cast<uint64_t>(x_digits[iu][static_cast<std::size_t>(j - 1)]);
    }
    residues[iu] = acc;
  }
  return mr.combine(residues);
}

uint64_t localize(std::span<const double> x, const MultiRadix& mr) {
  if (static_cast<int>(x.size()) != mr.dim()) {
    throw ValidationError("point dimension does not match base system");
  }
  std::vector<std::vector<int>> xd;
  std::vector<int> b(static_cast<std::size_t>(mr.dim()), 0);
  for (int i = 0; i < mr.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (x[iu] >= 1.0) throw ValidationError("coordinate must lie in [0, 1)");
    xd.push_back(fraction_digits(x[iu], mr.system.base(i), mr.depths[iu]));
    if (mr.depths[iu] > 0) {
      b[iu] = xd.back()[static_cast<std::size_t>(mr.depths[iu] - 1)];
    }
  }
  return localize_digits(mr, xd, b);
}

uint64_t localize_with_digits(std::span<const double> x, const MultiRadix& mr,
                              std::span<const int> b) {
  if (static_cast<int>(x.size()) != mr.dim() ||
      static_cast<int>(b.size()) != mr.dim()) {
    throw ValidationError("point dimension does not match base system");
  }
  std::vector<std::vector<int>> xd;
  for (int i = 0; i < mr.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (mr.depths[iu] < 1) {
      throw ValidationError("digit overrides require every depth >= 1");
    }
    if (x[iu] >= 1.0) throw ValidationError("coordinate must lie in [0, 1)");
    xd.push_back(fraction_digits(x[iu], mr.system.base(i), mr.depths[iu]));
  }
  return localize_digits(mr, xd, b);
}

}  // namespace qmcdisc

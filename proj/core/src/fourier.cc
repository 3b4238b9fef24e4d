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

#include "qmcdisc/fourier.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "qmcdisc/error.h"
#include "qmcdisc/rng.h"
#include "qmcdisc/summation.h"

namespace qmcdisc {
namespace {

using i128 = __int128;

// a mod m in [0, m).
uint64_t reduce(i128 a, uint64_t m) {
  i128 r = a % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<uint64_t>(r);
}

// floor(a / b) for b > 0.
i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

// Number of k in [start, start + count) with k == a (mod modulus).
i128 count_in_class(int64_t start, uint64_t count, uint64_t a,
                    uint64_t modulus) {
  if (count == 0) return 0;
  const i128 last = static_cast<i128>(start) + count - 1;
  const i128 m = modulus;
  return floor_div(last - a, m) - floor_div(static_cast<i128>(start) - 1 - a, m);
}

Complex phase_of(i128 a, uint64_t modulus) {
  return unit_phase(static_cast<int64_t>(reduce(a, modulus)), modulus);
}

Complex psi_factor(int p, uint64_t reduced_frequency, int digit) {
  if (reduced_frequency == 0) return {static_cast<double>(digit), 0.0};
  const auto mp = static_cast<int64_t>(reduced_frequency);
  const auto pu = static_cast<uint64_t>(p);
  return (Complex(1.0, 0.0) - unit_phase(-mp * digit, pu)) /
         (unit_phase(mp, pu) - Complex(1.0, 0.0));
}

void check_block_depths(std::span<const int> depths) {
  for (int r : depths) {
    if (r < 1) throw ValidationError("block depths must all be >= 1");
  }
}

// Advances r through [1, n]^s in odometer order; false after the last.
bool next_depths(std::vector<int>& r, int n) {
  for (auto& ri : r) {
    if (ri < n) {
      ++ri;
      return true;
    }
    ri = 1;
  }
  return false;
}

}  // namespace

IndexRange index_range(uint64_t modulus, bool star) {
  if (modulus < 1) throw ValidationError("modulus must be >= 1");
  return {modulus, -static_cast<int64_t>((modulus - 1) / 2),
          static_cast<int64_t>(modulus / 2), star};
}

Complex unit_phase(double x) {
  double r = x - std::floor(x);
  if (r > 0.5) r -= 1.0;
  const double angle = 2.0 * std::numbers::pi * r;
  return {std::cos(angle), std::sin(angle)};
}

Complex unit_phase(int64_t a, uint64_t modulus) {
  if (modulus < 1) throw ValidationError("modulus must be >= 1");
  const uint64_t r = reduce(a, modulus);
  // Map to (-M/2, M/2] so the angle stays small.
  const double centered = r > modulus / 2
                              ? -static_cast<double>(modulus - r)
                              : static_cast<double>(r);
  const double angle =
      2.0 * std::numbers::pi * (centered / static_cast<double>(modulus));
  return {std::cos(angle), std::sin(angle)};
}

double nearest_int_distance(double a) {
  const double frac = a - std::floor(a);
  return std::min(frac, 1.0 - frac);
}

Complex delta_fourier(int64_t a, uint64_t modulus) {
  const IndexRange range = index_range(modulus);
  CompensatedSum re, im;
  for (int64_t k = range.lo; k <= range.hi; ++k) {
    const Complex z = phase_of(static_cast<i128>(a) * k, modulus);
    re += z.real();
    im += z.imag();
  }
  const double m = static_cast<double>(modulus);
  return {static_cast<double>(re.value()) / m,
          static_cast<double>(im.value()) / m};
}

Complex varphi(const MultiRadix& mr, int64_t start, uint64_t count,
               int64_t m) {
  const uint64_t modulus = mr.modulus;
  if (reduce(m, modulus) == 0) {
    throw ValidationError("varphi: frequency is 0 modulo P_r");
  }
  const Complex upper =
      phase_of(static_cast<i128>(m) * (static_cast<i128>(start) + count),
               modulus);
  const Complex lower = phase_of(static_cast<i128>(m) * start, modulus);
  const Complex step = phase_of(m, modulus) - Complex(1.0, 0.0);
  return (upper - lower) / (static_cast<double>(modulus) * step);
}

Complex psi(const MultiRadix& mr, int64_t m, std::span<const int> top_digits) {
  if (static_cast<int>(top_digits.size()) != mr.dim()) {
    throw ValidationError("psi: digit vector has wrong dimension");
  }
  Complex acc(1.0, 0.0);
  for (int i = 0; i < mr.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const int p = mr.system.base(i);
    const uint64_t reduced = reduce(
        -static_cast<i128>(m) * static_cast<i128>(mr.weights[iu]),
        static_cast<uint64_t>(p));
    acc *= psi_factor(p, reduced, top_digits[iu]);
  }
  return acc;
}

Complex psi(const MultiRadix& mr, int64_t m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != mr.dim()) {
    throw ValidationError("psi: point has wrong dimension");
  }
  check_block_depths(mr.depths);
  std::vector<int> top(x.size());
  for (int i = 0; i < mr.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const auto d = fraction_digits(x[iu], mr.system.base(i), mr.depths[iu]);
    top[iu] = d.back();
  }
  return psi(mr, m, top);
}

FourierBlock FourierBlock::make(const BaseSystem& system, int64_t start,
                                uint64_t count, std::span<const int> depths,
                                std::span<const double> x) {
  if (static_cast<int>(x.size()) != system.dim()) {
    throw ValidationError("block point has wrong dimension");
  }
  check_block_depths(depths);
  FourierBlock fb{crt_weights(system, depths), start, count, {}};
  for (int i = 0; i < system.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (!(x[iu] >= 0.0 && x[iu] < 1.0)) {
      throw ValidationError("block point must lie in [0, 1)^s");
    }
    fb.x_digits.push_back(fraction_digits(x[iu], system.base(i), depths[iu]));
  }
  return fb;
}

std::vector<int> FourierBlock::top_digits() const {
  std::vector<int> top;
  for (std::size_t i = 0; i < x_digits.size(); ++i) {
    top.push_back(x_digits[i][static_cast<std::size_t>(mr.depths[i] - 1)]);
  }
  return top;
}

uint64_t FourierBlock::residue() const {
  return localize_digits(mr, x_digits, top_digits());
}

double block_direct(const FourierBlock& fb) {
  const std::vector<int> top = fb.top_digits();
  i128 boxes = 1;
  for (int d : top) boxes *= d;
  if (boxes == 0) return 0.0;
  // Odometer over b in prod [0, top_i).
  std::vector<int> b(top.size(), 0);
  i128 hits = 0;
  for (;;) {
    hits += count_in_class(fb.start, fb.count,
                           localize_digits(fb.mr, fb.x_digits, b),
                           fb.mr.modulus);
    std::size_t i = 0;
    while (i < b.size() && ++b[i] == top[i]) b[i++] = 0;
    if (i == b.size()) break;
  }
  const i128 modulus = fb.mr.modulus;
  const i128 numerator = hits * modulus - static_cast<i128>(fb.count) * boxes;
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(modulus));
}

Complex block_fourier(const FourierBlock& fb, const Budgets& budgets) {
  const uint64_t modulus = fb.mr.modulus;
  if (modulus > budgets.fourier_frequencies) {
    throw BudgetExceeded("block_fourier: P_r = " + std::to_string(modulus) +
                         " exceeds the frequency budget of " +
                         std::to_string(budgets.fourier_frequencies));
  }
  const std::vector<int> top = fb.top_digits();
  if (std::find(top.begin(), top.end(), 0) != top.end()) return {0.0, 0.0};
  const uint64_t xhat = fb.residue();

  // psi depends on m only through m mod p_0.
  const uint64_t p0 = fb.mr.system.product();
  std::vector<std::optional<Complex>> psi_cache(
      p0 <= (uint64_t{1} << 20) ? p0 : 0);

  const IndexRange range = index_range(modulus, /*star=*/true);
  CompensatedSum re, im;
  for (int64_t m = range.lo; m <= range.hi; ++m) {
    if (m == 0) continue;
    Complex weight;
    if (!psi_cache.empty()) {
      auto& slot = psi_cache[reduce(m, p0)];
      if (!slot) slot = psi(fb.mr, m, top);
      weight = *slot;
    } else {
      weight = psi(fb.mr, m, top);
    }
    const Complex term =
        varphi(fb.mr, fb.start, fb.count, m) * weight *
        phase_of(-static_cast<i128>(m) * static_cast<i128>(xhat), modulus);
    re += term.real();
    im += term.imag();
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

double truncated_discrepancy_via_blocks(const BaseSystem& system,
                                        int64_t start, uint64_t count,
                                        std::span<const double> x, int depth,
                                        BlockMethod method,
                                        const Budgets& budgets) {
  if (depth < 1) throw ValidationError("truncation depth must be >= 1");
  if (static_cast<int>(x.size()) != system.dim()) {
    throw ValidationError("point has wrong dimension");
  }
  if (std::pow(static_cast<double>(depth), system.dim()) >
      static_cast<double>(budgets.block_count)) {
    throw BudgetExceeded("block decomposition: depth^s exceeds block budget");
  }
  if (count == 0) return 0.0;
  std::vector<std::vector<int>> full_digits;
  for (int i = 0; i < system.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (!(x[iu] >= 0.0 && x[iu] < 1.0)) {
      throw ValidationError("point must lie in [0, 1)^s");
    }
    full_digits.push_back(fraction_digits(x[iu], system.base(i), depth));
  }
  std::vector<int> r(static_cast<std::size_t>(system.dim()), 1);
  CompensatedSum total;
  do {
    FourierBlock fb{crt_weights(system, r), start, count, {}};
    for (std::size_t i = 0; i < r.size(); ++i) {
      fb.x_digits.emplace_back(
          full_digits[i].begin(),
          full_digits[i].begin() + static_cast<std::ptrdiff_t>(r[i]));
    }
    total += method == BlockMethod::kDirect
                 ? block_direct(fb)
                 : block_fourier(fb, budgets).real();
  } while (next_depths(r, depth));
  return static_cast<double>(total.value());
}

FourierSelfCheck fourier_self_check(uint64_t seed, int block_cases,
                                    int reconstruction_cases,
                                    uint64_t max_modulus) {
  FourierSelfCheck report;
  report.seed = seed;
  report.block_cases = block_cases;
  report.reconstruction_cases = reconstruction_cases;
  const BaseSystem two_three({2, 3});
  const BaseSystem two_three_five({2, 3, 5});

  for (int c = 0; c < block_cases; ++c) {
    SampleStream rng(seed, static_cast<uint64_t>(c));
    const BaseSystem& system = c % 2 == 0 ? two_three : two_three_five;
    std::vector<int> r(static_cast<std::size_t>(system.dim()));
    uint64_t modulus;
    do {
      modulus = 1;
      for (int i = 0; i < system.dim(); ++i) {
        int max_depth = 0;
        for (uint64_t v = system.base(i); v <= max_modulus; v *= system.base(i)) {
          ++max_depth;
        }
        r[static_cast<std::size_t>(i)] =
            1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_depth)));
        modulus *= checked_pow(system.base(i), r[static_cast<std::size_t>(i)]);
      }
    } while (modulus > max_modulus);
    const int64_t start = static_cast<int64_t>(rng.next_below(20001)) - 10000;
    const uint64_t count = rng.next_below(3 * modulus + 1);
    std::vector<double> x(static_cast<std::size_t>(system.dim()));
    for (auto& v : x) v = rng.next_closed_open();

    const FourierBlock fb = FourierBlock::make(system, start, count, r, x);
    const double direct = block_direct(fb);
    const Complex series = block_fourier(fb);
    report.max_block_error =
        std::max(report.max_block_error, std::fabs(series.real() - direct));
    report.max_imaginary =
        std::max(report.max_imaginary, std::fabs(series.imag()));
  }

  for (int c = 0; c < reconstruction_cases; ++c) {
    SampleStream rng(seed ^ 0x5eed5eed5eed5eedULL, static_cast<uint64_t>(c));
    const int64_t start = static_cast<int64_t>(rng.next_below(1001));
    const uint64_t count = 1 + rng.next_below(32);
    const std::vector<double> x{rng.next_closed_open(), rng.next_closed_open()};
    const int depth = default_truncation_depth(count);
    const double reference =
        truncated_local_discrepancy(two_three, start, count, x, depth);
    for (BlockMethod method : {BlockMethod::kDirect, BlockMethod::kFourier}) {
      const double via = truncated_discrepancy_via_blocks(two_three, start,
                                                          count, x, depth, method);
      report.max_reconstruction_error =
          std::max(report.max_reconstruction_error, std::fabs(via - reference));
    }
  }
  report.passed = report.max_block_error < report.block_tolerance &&
                  report.max_imaginary < report.block_tolerance &&
                  report.max_reconstruction_error < report.reconstruction_tolerance;
  return report;
}

nlohmann::json to_json(const FourierSelfCheck& report) {
  return {{"seed", report.seed},
          {"block_cases", report.block_cases},
          {"max_block_error", report.max_block_error},
          {"max_imaginary", report.max_imaginary},
          {"reconstruction_cases", report.reconstruction_cases},
          {"max_reconstruction_error", report.max_reconstruction_error},
          {"block_tolerance", report.block_tolerance},
          {"reconstruction_tolerance", report.reconstruction_tolerance},
          {"passed", report.passed}};
}

}  // namespace qmcdisc

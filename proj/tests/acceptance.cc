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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Tolerances are fixed here, not tuned per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qmcdisc/discrepancy.h"
#include "qmcdisc/fourier.h"
#include "qmcdisc/pointsets.h"
#include "qmcdisc/radix.h"
#include "qmcdisc/rng.h"
#include "qmcdisc/stats.h"

namespace qmcdisc {
namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

// 1. localize(H(k)) == k mod P_r for bases (2,3), every r with P_r <= 5000.
Verdict crt_exactness() {
  const BaseSystem s({2, 3});
  uint64_t vectors = 0, indices = 0, bad = 0;
  for (int r1 = 0; checked_pow(2, r1) <= 5000; ++r1) {
    for (int r2 = 0; checked_pow(2, r1) * checked_pow(3, r2) <= 5000; ++r2) {
      const std::vector<int> r{r1, r2};
      const MultiRadix mr = crt_weights(s, r);
      for (uint64_t k = 0; k < mr.modulus; ++k) {
        const double h[] = {radical_inverse(static_cast<int64_t>(k), 2),
                            radical_inverse(static_cast<int64_t>(k), 3)};
        bad += localize(h, mr) != k;
        ++indices;
      }
      ++vectors;
    }
  }
  return {bad == 0, std::to_string(vectors) + " depth vectors, " +
                        std::to_string(indices) + " indices, " +
                        std::to_string(bad) + " mismatches"};
}

// 2. 200 block cases |fourier - direct| < 1e-9; 50 reconstructions <= 1e-8.
Verdict block_equivalence() {
  const FourierSelfCheck r = fourier_self_check(20260101, 200, 50, 4096);
  const bool ok = r.block_cases == 200 && r.reconstruction_cases == 50 &&
                  r.max_block_error < 1e-9 && r.max_imaginary < 1e-9 &&
                  r.max_reconstruction_error <= 1e-8;
  return {ok, fmt("max block error %.3g, ", r.max_block_error) +
                  fmt("max |imag| %.3g, ", r.max_imaginary) +
                  fmt("max reconstruction error %.3g", r.max_reconstruction_error)};
}

// 3. |D([x]_n) - D(x)| <= 2 for N = 2^5..2^12, 100 random x each.
Verdict truncation_bound() {
  const BaseSystem s({2, 3});
  SampleStream rng(3, 0);
  double worst = 0;
  for (int e = 5; e <= 12; ++e) {
    const std::size_t n = std::size_t{1} << e;
    const PointSet pts = halton(s, 0, n);
    for (int t = 0; t < 100; ++t) {
      const double x[] = {rng.next_open_closed(), rng.next_open_closed()};
      worst = std::max(worst, std::fabs(truncated_local_discrepancy(s, 0, n, x) -
                                        local_discrepancy(pts, x)));
    }
  }
  return {worst <= 2.0, fmt("max gap %.6g over 800 cases (bound 2)", worst)};
}

// 4. l2_exact({0}) = 3^{-1/2}; 20 Halton sets vs 10^6-sample Monte Carlo.
Verdict l2_engine() {
  const double single =
      l2_exact(PointSet(1, {0.0}, Provenance{})).raw - 1.0 / std::sqrt(3.0);
  bool ok = std::fabs(single) <= 1e-12;
  const BaseSystem s({2, 3});
  SampleStream rng(4, 0);
  double worst_z = 0;
  for (int j = 0; j < 20; ++j) {
    const std::size_t n = 64 + rng.next_below(4096 - 64 + 1);
    const auto q = static_cast<int64_t>(rng.next_below(100000));
    const PointSet pts = halton(s, q, n);
    const double exact = l2_exact(pts).raw;
    const DiscrepancyValue mc = lp_mc(pts, 2.0, 1000000, 1000 + j);
    const double z = std::fabs(mc.raw - exact) / *mc.stderr_raw;
    worst_z = std::max(worst_z, z);
    ok = ok && z <= 4.0;
  }
  return {ok, fmt("|l2({0}) - 3^-1/2| = %.3g, worst |MC - exact| = %.3f stderr "
                  "(limit 4)",
                  std::fabs(single), worst_z)};
}

// 5. kappa(2) = 1, kappa(4) = 3 exactly; kappa(1) = 0.7978845608 +- 1e-8.
Verdict kappa_targets() {
  const double k1 = kappa(1.0);
  const bool ok = kappa(2.0) == 1.0 && kappa(4.0) == 3.0 &&
                  std::fabs(k1 - 0.7978845608) <= 1e-8;
  return {ok, fmt("kappa(2) = %.17g, kappa(4) = %.17g, ", kappa(2.0), kappa(4.0)) +
                  fmt("kappa(1) = %.12f", k1)};
}

// 6. ||D||_2 / (ln N)^{s/2} at N = 2^16 <= 2 x median over N = 2^4..2^16.
Verdict scaling_trend() {
  std::vector<uint64_t> ns;
  for (int e = 4; e <= 16; ++e) ns.push_back(uint64_t{1} << e);
  const auto rows = scaling_table(BaseSystem({2, 3}), 2.0, ns);
  std::vector<double> stats;
  for (const auto& r : rows) stats.push_back(r.statistic);
  std::vector<double> sorted = stats;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double last = stats.back();
  std::string detail = fmt("statistic at 2^16 = %.4f, median = %.4f; series:",
                           last, median);
  for (double v : stats) detail += fmt(" %.3f", v);
  const bool exact = std::all_of(rows.begin(), rows.end(), [](const auto& r) {
    return r.value.method == Method::kExact;
  });
  detail += exact ? " (all exact)" : " (Monte Carlo fallback used)";
  return {last <= 2.0 * median, detail};
}

// 7. CLT shape at N = 2^14, M = 4000 and the KS trend against N = 2^8.
Verdict clt_shape() {
  const BaseSystem s({2, 3, 5});
  const SampleSet big = clt_samples(Variant::kHammersley, s, 1 << 14, 4000, 7);
  const SampleSet small = clt_samples(Variant::kHammersley, s, 1 << 8, 4000, 7);
  const ShapeSummary shape = shape_summary(big.values);
  const double ks_big = ks_normal(big.values);
  const double ks_small = ks_normal(small.values);
  const bool ok = std::fabs(shape.skewness) <= 0.2 &&
                  std::fabs(shape.kurtosis - 3.0) <= 0.5 && ks_big <= 0.05 &&
                  ks_big < ks_small;
  return {ok, fmt("skewness %.4f, kurtosis %.4f, ", shape.skewness,
                  shape.kurtosis) +
                  fmt("KS(2^14) %.4f, KS(2^8) %.4f", ks_big, ks_small)};
}

// 8. D_1/D_2 within 0.05 of kappa_1; (D_4/D_2)^4 within 0.5 of 3.
Verdict ratio_limits() {
  const BaseSystem s({2, 3, 5});
  const std::vector<uint64_t> ns{uint64_t{1} << 14};
  const RatioRow r1 = ratio_table(Variant::kHammersley, s, 1.0, ns, 20000, 7)[0];
  const RatioRow r4 = ratio_table(Variant::kHammersley, s, 4.0, ns, 20000, 7)[0];
  const double fourth = std::pow(r4.ratio, 4.0);
  const bool ok =
      std::fabs(r1.ratio - kappa(1.0)) <= 0.05 && std::fabs(fourth - 3.0) <= 0.5;
  return {ok, fmt("D1/D2 = %.4f (target %.4f), ", r1.ratio, kappa(1.0)) +
                  fmt("(D4/D2)^4 = %.4f (target 3)", fourth)};
}

// 9. s = 2, N = 2^12, M = 10^5: |mean Y| symmetrized <= half of plain.
Verdict symmetrization() {
  const BaseSystem s({2, 3});
  const std::size_t n = std::size_t{1} << 12;
  const SampleSet plain = clt_samples(Variant::kHammersley, s, n, 100000, 9);
  const SampleSet sym = clt_samples(Variant::kHammersleySym, s, n, 100000, 9);
  const double m_plain = std::fabs(shape_summary(plain.values).mean);
  const double m_sym = std::fabs(shape_summary(sym.values).mean);
  return {m_sym <= 0.5 * m_plain,
          fmt("|mean Y| plain %.5f, symmetrized %.5f", m_plain, m_sym)};
}

// Not counted: the plain 4-dim net's normalized mean E D / ||D||_2 decays
// very slowly in N, so criteria 7 and 8 are also reported for the
// symmetrized net, whose mean vanishes much faster. Diagnostic only.
std::string symmetrized_diagnostic() {
  const BaseSystem s({2, 3, 5});
  const std::size_t n = std::size_t{1} << 14;
  const SampleSet sym = clt_samples(Variant::kHammersleySym, s, n, 4000, 7);
  const SampleSet plain = clt_samples(Variant::kHammersley, s, n, 4000, 7);
  const ShapeSummary a = shape_summary(sym.values);
  const std::vector<uint64_t> ns{n};
  const RatioRow r1 = ratio_table(Variant::kHammersleySym, s, 1.0, ns, 20000, 7)[0];
  const RatioRow r4 = ratio_table(Variant::kHammersleySym, s, 4.0, ns, 20000, 7)[0];
  return fmt("hammersley-sym (2,3,5) N=2^14: mean %.4f, skewness %.4f, ", a.mean,
             a.skewness) +
         fmt("kurtosis %.4f, KS %.4f; ", a.kurtosis, ks_normal(sym.values)) +
         fmt("D1/D2 %.4f, (D4/D2)^4 %.4f; ", r1.ratio, std::pow(r4.ratio, 4.0)) +
         fmt("plain net mean Y %.4f", shape_summary(plain.values).mean);
}

}  // namespace
}  // namespace qmcdisc

int main() {
  using qmcdisc::Verdict;
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {"CRT localization exactness", qmcdisc::crt_exactness},
      {"Fourier block equivalence", qmcdisc::block_equivalence},
      {"truncation error bound", qmcdisc::truncation_bound},
      {"L2 closed form vs Monte Carlo", qmcdisc::l2_engine},
      {"kappa_p targets", qmcdisc::kappa_targets},
      {"L2 scaling trend", qmcdisc::scaling_trend},
      {"CLT shape and KS trend", qmcdisc::clt_shape},
      {"L_p / L_2 ratio limits", qmcdisc::ratio_limits},
      {"symmetrization reduces mean", qmcdisc::symmetrization},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    failures += !v.passed;
    std::printf("[%s] %d %s: %s (%.1f s)\n", v.passed ? "PASS" : "FAIL", index,
                c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  try {
    std::printf("[INFO] %s\n", qmcdisc::symmetrized_diagnostic().c_str());
  } catch (const std::exception& e) {
    std::printf("[INFO] diagnostic failed: %s\n", e.what());
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}

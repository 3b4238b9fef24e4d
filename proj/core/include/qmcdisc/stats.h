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

// Empirical checks of the asymptotic behaviour of Halton/Hammersley
// discrepancy: Gaussian moment targets, normalized local-discrepancy samples,
// moment and Kolmogorov-Smirnov reports, L_p scaling and L_p/L_2 ratios.

#ifndef QMCDISC_STATS_H_
#define QMCDISC_STATS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmcdisc/discrepancy.h"
#include "qmcdisc/pointsets.h"

namespace qmcdisc {

// E|Z|^p for a standard normal Z. Even integers use (2r)! / (2^r r!)
// exactly; other p integrate (1/sqrt(2 pi)) int |u|^p e^{-u^2/2} du.
double kappa(double p);
// Always the quadrature route (relative accuracy ~1e-12).
double kappa_quadrature(double p);

// E Z^h: (h-1)!! for even h, 0 for odd h.
double gaussian_moment(int h);

// Standard normal CDF via erfc.
double normal_cdf(double t);

// Builds one of the Hammersley variants (the only sets the CLT harness
// accepts). Throws ValidationError for other variants.
PointSet hammersley_variant(Variant variant, const BaseSystem& system,
                            std::size_t n);

struct SampleSet {
  std::vector<double> values;  // Y_j = D(x_j, P) / ||D||_2
  Variant variant = Variant::kHammersley;
  std::vector<int> bases;
  uint64_t n = 0;
  uint64_t seed = 0;
  std::size_t cardinality = 0;
  double l2_raw = 0.0;  // exact ||D||_2 used for normalization
};

// Samples x_j uniformly on (0,1]^{s+1} (stream (seed, j), shared with lp_mc)
// and records D(x_j, P)/||D||_2.
SampleSet clt_samples(Variant variant, const BaseSystem& system, std::size_t n,
                      std::size_t samples, uint64_t seed,
                      const Budgets& budgets = {});

struct MomentRow {
  int order = 0;
  double empirical = 0.0;  // mean of Y^h
  double target = 0.0;     // gaussian_moment(h)
  double deviation = 0.0;  // |empirical - target|
  double std_error = 0.0;     // jackknife
};

struct MomentReport {
  std::vector<MomentRow> rows;
};

MomentReport moment_report(std::span<const double> values, int max_order);

// Central sample moments.
struct ShapeSummary {
  double mean = 0.0;
  double variance = 0.0;  // population (divide by M)
  double skewness = 0.0;  // m3 / m2^{3/2}
  double kurtosis = 0.0;  // m4 / m2^2 (3 for a normal law)
};

ShapeSummary shape_summary(std::span<const double> values);

// sup_t |F_M(t) - Phi(t)|. Requires at least 10 values.
double ks_normal(std::span<const double> values);

struct ScalingRow {
  uint64_t n = 0;
  int depth = 0;  // floor(log2 N) + 1
  DiscrepancyValue value;
  double statistic = 0.0;  // raw / (ln N)^{s/2}
};

// ||D||_p of the Halton segment (H_s(k))_{k=Q}^{Q+N-1} for each N: exact for
// p = 2 while N fits the pair budget, Monte Carlo (samples, seed) otherwise.
std::vector<ScalingRow> scaling_table(const BaseSystem& system, double p,
                                      std::span<const uint64_t> ns,
                                      int64_t start = 0,
                                      std::size_t samples = 100000,
                                      uint64_t seed = 1,
                                      const Budgets& budgets = {});

struct RatioRow {
  uint64_t n = 0;
  double p = 0.0;
  double ratio = 0.0;   // ||D||_p / ||D||_2
  double std_error = 0.0;  // Monte Carlo error of the ratio
  double target = 0.0;  // kappa(p)^{1/p}
  double deviation = 0.0;
  DiscrepancyValue numerator;
  DiscrepancyValue denominator;
};

// Numerator by lp_mc with the CLT sample stream, denominator by l2_exact.
std::vector<RatioRow> ratio_table(Variant variant, const BaseSystem& system,
                                  double p, std::span<const uint64_t> ns,
                                  std::size_t samples, uint64_t seed,
                                  const Budgets& budgets = {});

nlohmann::json to_json(const MomentReport& report);
nlohmann::json to_json(const ShapeSummary& summary);
nlohmann::json to_json(const ScalingRow& row);
nlohmann::json to_json(const RatioRow& row);

// CSV tables: header row, 17 significant digits.
void write_csv(std::ostream& os, const MomentReport& report);
void write_csv(std::ostream& os, std::span<const ScalingRow> rows);
void write_csv(std::ostream& os, std::span<const RatioRow> rows);
void write_samples_csv(std::ostream& os, const SampleSet& samples);

}  // namespace qmcdisc

#endif  // QMCDISC_STATS_H_

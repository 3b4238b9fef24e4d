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

// Local discrepancy
//
//   D(x, P) = #{ beta in P : beta_i < x_i for all i } - |P| x_1 ... x_d
//
// and its L_2 (exact), L_p (Monte Carlo) and L_inf (exact) norms over the
// unit cube. Box membership is strict and compares doubles bit-exactly.

#ifndef QMCDISC_DISCREPANCY_H_
#define QMCDISC_DISCREPANCY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmcdisc/pointsets.h"

namespace qmcdisc {

// Work limits. Exceeding one raises BudgetExceeded.
struct Budgets {
  // l2_exact: maximum point count (the pair sum is quadratic).
  std::size_t pair_points = std::size_t{1} << 17;
  // linf_exact: maximum (|P| + 1)^d candidate corners.
  double grid_points = 1e8;
  // fourier: maximum P_r, i.e. frequencies per block.
  uint64_t fourier_frequencies = 100000;
  // fourier: maximum number of depth vectors n^s in a block decomposition.
  uint64_t block_count = 1000000;
};

enum class Method { kExact, kMonteCarlo };
std::string_view method_name(Method m);

struct DiscrepancyValue {
  double p = 2.0;  // +infinity for the star discrepancy
  Method method = Method::kExact;
  double raw = 0.0;         // ||D(., P)||_p
  double normalized = 0.0;  // raw / |P| (0 for an empty set)
  std::size_t cardinality = 0;
  // Monte Carlo only.
  std::optional<double> stderr_raw;         // delta-method error of raw
  std::optional<double> power_mean;         // mean of |D|^p
  std::optional<double> power_mean_stderr;  // its standard error
  std::size_t samples = 0;
  std::optional<uint64_t> seed;
};

nlohmann::json to_json(const DiscrepancyValue& v);

// x must have the set's dimension with coordinates in [0, 1] (a zero
// coordinate gives an empty box).
double local_discrepancy(const PointSet& points, std::span<const double> x);

// Evaluates D(x, P) for many x. Results are bit-identical to
// local_discrepancy(); the set is indexed once (sorted sweep for d <= 2,
// first-coordinate pruning otherwise).
class LocalDiscrepancyEvaluator {
 public:
  explicit LocalDiscrepancyEvaluator(const PointSet& points);

  int dim() const { return dim_; }
  std::size_t cardinality() const { return cardinality_; }

  // queries is row-major, queries.size() / dim() points.
  std::vector<double> evaluate(std::span<const double> queries) const;
  // Open-box counts only.
  std::vector<uint64_t> count(std::span<const double> queries) const;

 private:
  int dim_;
  std::size_t cardinality_;
  std::vector<double> sorted_;    // row-major, sorted by first coordinate
  std::vector<double> first_;     // first coordinates, ascending
  std::vector<double> second_;    // d == 2: second coords in first_ order
  std::vector<double> y_sorted_;  // d == 2: ascending second coordinates
};

// Row-major uniform samples on (0, 1]^dim; sample j is drawn from
// SampleStream(seed, j) so any subrange can be regenerated on its own.
std::vector<double> uniform_queries(int dim, std::size_t first,
                                    std::size_t count, uint64_t seed);

// floor(log2 N) + 1, the truncation depth used for N-point Halton segments.
int default_truncation_depth(std::size_t n);

// D([x]_n, (H_s(k))_{k=Q}^{Q+N-1}) where [x]_n truncates coordinate i to n
// base-p_i digits. depth >= 1.
double truncated_local_discrepancy(const BaseSystem& system, int64_t start,
                                   std::size_t count,
                                   std::span<const double> x, int depth);
inline double truncated_local_discrepancy(const BaseSystem& system,
                                          int64_t start, std::size_t count,
                                          std::span<const double> x) {
  return truncated_local_discrepancy(system, start, count, x,
                                     default_truncation_depth(count));
}

// Closed-form ||D||_2 via the pairwise (Warnock) expansion
//   sum_{k,l} prod_i (1 - max(b_ki, b_li))
//     - M 2^{1-d} sum_k prod_i (1 - b_ki^2) + M^2 3^{-d}.
DiscrepancyValue l2_exact(const PointSet& points, const Budgets& budgets = {});

// (mean_j |D(U_j)|^p)^{1/p} over `samples` uniform U_j. p > 0 finite,
// samples >= 2. Deterministic in (points, p, samples, seed).
DiscrepancyValue lp_mc(const PointSet& points, double p, std::size_t samples,
                       uint64_t seed);

// sup_x |D(x, P)| over the corner grid built from the point coordinates and 1,
// evaluating open and closed boxes at each corner.
DiscrepancyValue linf_exact(const PointSet& points,
                            const Budgets& budgets = {});

}  // namespace qmcdisc

#endif  // QMCDISC_DISCREPANCY_H_

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

#include "qmcdisc/discrepancy.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qmcdisc/error.h"
#include "qmcdisc/parallel.h"
#include "qmcdisc/rng.h"
#include "qmcdisc/summation.h"

namespace qmcdisc {
namespace {

constexpr std::size_t kQueryChunk = std::size_t{1} << 16;

void check_query(int dim, std::span<const double> x) {
  if (static_cast<int>(x.size()) != dim) {
    throw ValidationError("query dimension " + std::to_string(x.size()) +
                          " does not match point dimension " +
                          std::to_string(dim));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("query coordinate outside [0, 1]");
    }
  }
}

// The one place the count/volume combination is formed, so scalar and batch
// paths agree bit-for-bit.
double combine(uint64_t count, std::size_t cardinality,
               std::span<const double> x) {
  double volume = 1.0;
  for (double v : x) volume *= v;
  return static_cast<double>(count) -
         static_cast<double>(cardinality) * volume;
}

bool in_open_box(std::span<const double> point, std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(point[i] < x[i])) return false;
  }
  return true;
}

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t index) {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) {
      ++tree_[i];
    }
  }
  // Number of inserted indices < end.
  uint64_t prefix(std::size_t end) const {
    uint64_t s = 0;
    for (std::size_t i = end; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<uint64_t> tree_;
};

}  // namespace

std::string_view method_name(Method m) {
  return m == Method::kExact ? "exact" : "monte-carlo";
}

nlohmann::json to_json(const DiscrepancyValue& v) {
  nlohmann::json j;
  j["method"] = std::string(method_name(v.method));
  if (std::isinf(v.p)) {
    j["p"] = "inf";
  } else {
    j["p"] = v.p;
  }
  j["raw"] = v.raw;
  j["normalized"] = v.normalized;
  j["cardinality"] = v.cardinality;
  j["stderr"] = v.stderr_raw ? nlohmann::json(*v.stderr_raw) : nlohmann::json();
  if (v.method == Method::kMonteCarlo) {
    j["power_mean"] = *v.power_mean;
    j["power_mean_stderr"] = *v.power_mean_stderr;
    j["samples"] = v.samples;
    j["seed"] = *v.seed;
  }
  return j;
}

double local_discrepancy(const PointSet& points, std::span<const double> x) {
  check_query(points.dim(), x);
  uint64_t count = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (in_open_box(points.point(k), x)) ++count;
  }
  return combine(count, points.size(), x);
}

LocalDiscrepancyEvaluator::LocalDiscrepancyEvaluator(const PointSet& points)
    : dim_(points.dim()), cardinality_(points.size()) {
  const auto d = static_cast<std::size_t>(dim_);
  std::vector<std::size_t> order(cardinality_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return points.at(a, 0) < points.at(b, 0);
  });
  sorted_.reserve(cardinality_ * d);
  first_.reserve(cardinality_);
  for (std::size_t k : order) {
    const auto row = points.point(k);
    sorted_.insert(sorted_.end(), row.begin(), row.end());
    first_.push_back(row[0]);
    if (dim_ == 2) second_.push_back(row[1]);
  }
  if (dim_ == 2) {
    y_sorted_ = second_;
    std::sort(y_sorted_.begin(), y_sorted_.end());
  }
}

std::vector<uint64_t> LocalDiscrepancyEvaluator::count(
    std::span<const double> queries) const {
  const auto d = static_cast<std::size_t>(dim_);
  if (queries.size() % d != 0) {
    throw ValidationError("query buffer is not a multiple of the dimension");
  }
  const std::size_t m = queries.size() / d;
  for (std::size_t j = 0; j < m; ++j) check_query(dim_, queries.subspan(j * d, d));
  std::vector<uint64_t> counts(m, 0);
  if (dim_ == 1) {
    for (std::size_t j = 0; j < m; ++j) {
      counts[j] = static_cast<uint64_t>(
          std::lower_bound(first_.begin(), first_.end(), queries[j]) -
          first_.begin());
    }
  } else if (dim_ == 2) {
    // Offline sweep in the first coordinate, Fenwick tree over the ranks of
    // the second.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return queries[2 * a] < queries[2 * b];
    });
    Fenwick tree(y_sorted_.size());
    std::size_t inserted = 0;
    for (std::size_t j : order) {
      const double qx = queries[2 * j];
      const double qy = queries[2 * j + 1];
      while (inserted < cardinality_ && first_[inserted] < qx) {
        const auto rank = static_cast<std::size_t>(
            std::lower_bound(y_sorted_.begin(), y_sorted_.end(),
                             second_[inserted]) -
            y_sorted_.begin());
        tree.add(rank);
        ++inserted;
      }
      const auto below = static_cast<std::size_t>(
          std::lower_bound(y_sorted_.begin(), y_sorted_.end(), qy) -
          y_sorted_.begin());
      counts[j] = tree.prefix(below);
    }
  } else {
    parallel_for(m, 256, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        const auto x = queries.subspan(j * d, d);
        const auto prefix = static_cast<std::size_t>(
            std::lower_bound(first_.begin(), first_.end(), x[0]) -
            first_.begin());
        uint64_t c = 0;
        const double* row = sorted_.data();
        for (std::size_t k = 0; k < prefix; ++k, row += d) {
          bool inside = true;
          for (std::size_t i = 1; i < d; ++i) {
            if (!(row[i] < x[i])) {
              inside = false;
              break;
            }
          }
          c += inside;
        }
        counts[j] = c;
      }
    });
  }
  return counts;
}

std::vector<double> LocalDiscrepancyEvaluator::evaluate(
    std::span<const double> queries) const {
  const auto d = static_cast<std::size_t>(dim_);
  const auto counts = count(queries);
  std::vector<double> out(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    out[j] = combine(counts[j], cardinality_, queries.subspan(j * d, d));
  }
  return out;
}

std::vector<double> uniform_queries(int dim, std::size_t first,
                                    std::size_t count, uint64_t seed) {
  const auto d = static_cast<std::size_t>(dim);
  std::vector<double> out(count * d);
  for (std::size_t j = 0; j < count; ++j) {
    SampleStream stream(seed, first + j);
    for (std::size_t i = 0; i < d; ++i) {
      out[j * d + i] = stream.next_open_closed();
    }
  }
  return out;
}

int default_truncation_depth(std::size_t n) {
  if (n == 0) return 1;
  return static_cast<int>(std::bit_width(n));  // floor(log2 n) + 1
}

double truncated_local_discrepancy(const BaseSystem& system, int64_t start,
                                   std::size_t count,
                                   std::span<const double> x, int depth) {
  if (depth < 1) throw ValidationError("truncation depth must be >= 1");
  check_query(system.dim(), x);
  std::vector<double> truncated(x.size());
  for (int i = 0; i < system.dim(); ++i) {
    const auto iu = static_cast<std::size_t>(i);
    truncated[iu] = truncate_fraction(x[iu], system.base(i), depth);
  }
  return local_discrepancy(halton(system, start, count), truncated);
}

DiscrepancyValue l2_exact(const PointSet& points, const Budgets& budgets) {
  const std::size_t m = points.size();
  if (m > budgets.pair_points) {
    throw BudgetExceeded("l2_exact: " + std::to_string(m) +
                         " points exceed the pair budget of " +
                         std::to_string(budgets.pair_points));
  }
  DiscrepancyValue out;
  out.p = 2.0;
  out.method = Method::kExact;
  out.cardinality = m;
  if (m == 0) return out;

  const int d = points.dim();
  const auto du = static_cast<std::size_t>(d);
  // 1 - max(a, b) == min(1 - a, 1 - b) exactly in floating point.
  std::vector<double> comp(points.coords().size());
  for (std::size_t t = 0; t < comp.size(); ++t) {
    comp[t] = 1.0 - points.coords()[t];
  }

  // Row k holds prod(1 - b_k) + 2 sum_{l > k} prod(min(...)); partial sums
  // over blocks of 256 columns are combined with compensation.
  std::vector<long double> rows(m);
  parallel_for(m, 64, [&](std::size_t begin, std::size_t end) {
    constexpr std::size_t kBlock = 256;
    for (std::size_t k = begin; k < end; ++k) {
      const double* ck = comp.data() + k * du;
      double diag = 1.0;
      for (std::size_t i = 0; i < du; ++i) diag *= ck[i];
      CompensatedSum row;
      for (std::size_t l0 = k + 1; l0 < m; l0 += kBlock) {
        const std::size_t l1 = std::min(m, l0 + kBlock);
        double block = 0.0;
        if (d == 2) {
          const double a0 = ck[0], a1 = ck[1];
          for (std::size_t l = l0; l < l1; ++l) {
            const double* cl = comp.data() + 2 * l;
            block += std::min(a0, cl[0]) * std::min(a1, cl[1]);
          }
        } else {
          for (std::size_t l = l0; l < l1; ++l) {
            const double* cl = comp.data() + l * du;
            double prod = std::min(ck[0], cl[0]);
            for (std::size_t i = 1; i < du; ++i) prod *= std::min(ck[i], cl[i]);
            block += prod;
          }
        }
        row += block;
      }
      rows[k] = static_cast<long double>(diag) + 2.0L * row.value();
    }
  });

  CompensatedSum pairs;
  for (long double r : rows) pairs += r;
  CompensatedSum cross;
  for (std::size_t k = 0; k < m; ++k) {
    long double prod = 1.0L;
    for (std::size_t i = 0; i < du; ++i) {
      const long double b = points.at(k, static_cast<int>(i));
      prod *= 1.0L - b * b;
    }
    cross += prod;
  }
  const long double ml = static_cast<long double>(m);
  const long double squared = pairs.value() -
                              ml * std::pow(2.0L, 1 - d) * cross.value() +
                              ml * ml * std::pow(3.0L, -d);
  out.raw = static_cast<double>(std::sqrt(std::max(squared, 0.0L)));
  out.normalized = out.raw / static_cast<double>(m);
  return out;
}

DiscrepancyValue lp_mc(const PointSet& points, double p, std::size_t samples,
                       uint64_t seed) {
  if (!(p > 0.0) || std::isinf(p)) {
    throw ValidationError("Monte Carlo L_p needs finite p > 0");
  }
  if (samples < 2) throw ValidationError("Monte Carlo needs >= 2 samples");
  const LocalDiscrepancyEvaluator evaluator(points);
  CompensatedSum sum, sum_sq;
  for (std::size_t first = 0; first < samples; first += kQueryChunk) {
    const std::size_t n = std::min(kQueryChunk, samples - first);
    const auto values =
        evaluator.evaluate(uniform_queries(points.dim(), first, n, seed));
    for (double v : values) {
      const long double w = p == 2.0 ? static_cast<long double>(v) * v
                                     : std::pow(std::fabs(static_cast<long double>(v)), p);
      sum += w;
      sum_sq += w * w;
    }
  }
  const long double n = static_cast<long double>(samples);
  const long double mean = sum.value() / n;
  const long double var =
      std::max(0.0L, (sum_sq.value() - n * mean * mean) / (n - 1));
  const long double se_mean = std::sqrt(var / n);

  DiscrepancyValue out;
  out.p = p;
  out.method = Method::kMonteCarlo;
  out.cardinality = points.size();
  out.raw = static_cast<double>(std::pow(mean, 1.0L / p));
  out.normalized =
      points.empty() ? 0.0 : out.raw / static_cast<double>(points.size());
  out.power_mean = static_cast<double>(mean);
  out.power_mean_stderr = static_cast<double>(se_mean);
  out.stderr_raw =
      mean > 0 ? static_cast<double>(std::pow(mean, 1.0L / p - 1) * se_mean / p)
               : 0.0;
  out.samples = samples;
  out.seed = seed;
  return out;
}

DiscrepancyValue linf_exact(const PointSet& points, const Budgets& budgets) {
  const std::size_t m = points.size();
  const int d = points.dim();
  DiscrepancyValue out;
  out.p = std::numeric_limits<double>::infinity();
  out.method = Method::kExact;
  out.cardinality = m;
  if (m == 0) return out;
  if (std::pow(static_cast<double>(m) + 1.0, d) > budgets.grid_points) {
    throw BudgetExceeded("linf_exact: (N+1)^d exceeds the grid budget");
  }
  const auto du = static_cast<std::size_t>(d);

  // Corner values per axis: distinct coordinates below 1, then 1 itself.
  std::vector<std::vector<double>> grid(du);
  for (std::size_t i = 0; i < du; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const double c = points.at(k, static_cast<int>(i));
      if (c < 1.0) grid[i].push_back(c);
    }
    std::sort(grid[i].begin(), grid[i].end());
    grid[i].erase(std::unique(grid[i].begin(), grid[i].end()), grid[i].end());
    grid[i].push_back(1.0);
  }
  // A point with a coordinate equal to 1 lies in no box [0, x), x <= 1, and
  // its index never reaches the last corner, so closed counts at 1 stay open.
  struct Indexed {
    std::size_t first;
    std::size_t cell;  // flattened index over axes 1..d-1
  };
  std::vector<std::size_t> strides(du, 1);
  std::size_t cells = 1;
  for (std::size_t i = du; i-- > 1;) {
    strides[i] = cells;
    cells *= grid[i].size();
  }
  std::vector<Indexed> members;
  for (std::size_t k = 0; k < m; ++k) {
    const auto row = points.point(k);
    if (std::any_of(row.begin(), row.end(), [](double c) { return c >= 1.0; })) {
      continue;
    }
    Indexed e{0, 0};
    for (std::size_t i = 0; i < du; ++i) {
      const auto idx = static_cast<std::size_t>(
          std::lower_bound(grid[i].begin(), grid[i].end(), row[i]) -
          grid[i].begin());
      if (i == 0) {
        e.first = idx;
      } else {
        e.cell += idx * strides[i];
      }
    }
    members.push_back(e);
  }
  std::sort(members.begin(), members.end(),
            [](const Indexed& a, const Indexed& b) { return a.first < b.first; });

  // Volume of the corner over axes 1..d-1 for each cell.
  std::vector<double> partial_volume(cells, 1.0);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (std::size_t i = 1; i < du; ++i) {
      partial_volume[c] *= grid[i][rest / strides[i]];
      rest %= strides[i];
    }
  }

  // Inclusive prefix sums over axes 1..d-1, in place.
  auto prefix_sums = [&](std::vector<uint32_t>& a) {
    for (std::size_t i = 1; i < du; ++i) {
      const std::size_t stride = strides[i];
      const std::size_t extent = grid[i].size();
      for (std::size_t c = 0; c < cells; ++c) {
        if ((c / stride) % extent != 0) a[c] += a[c - stride];
      }
    }
  };
  // Cell shifted one step down on every axis 1..d-1, or npos at a lower edge.
  std::vector<std::size_t> lower(cells);
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t shifted = 0;
    bool ok = true;
    std::size_t rest = c;
    for (std::size_t i = 1; i < du; ++i) {
      const std::size_t idx = rest / strides[i];
      rest %= strides[i];
      if (idx == 0) {
        ok = false;
        break;
      }
      shifted += (idx - 1) * strides[i];
    }
    lower[c] = ok ? shifted : npos;
  }

  std::vector<uint32_t> hist_open(cells, 0), hist_closed(cells, 0);
  std::vector<uint32_t> sum_open(cells), sum_closed(cells);
  const double card = static_cast<double>(m);
  double sup = 0.0;
  std::size_t next = 0;
  for (std::size_t a0 = 0; a0 < grid[0].size(); ++a0) {
    // hist_open: first index < a0; hist_closed: first index <= a0.
    while (next < members.size() && members[next].first <= a0) {
      ++hist_closed[members[next].cell];
      ++next;
    }
    sum_open = hist_open;
    sum_closed = hist_closed;
    prefix_sums(sum_open);
    prefix_sums(sum_closed);
    const double g0 = grid[0][a0];
    for (std::size_t c = 0; c < cells; ++c) {
      const double expected = card * (g0 * partial_volume[c]);
      const double open = lower[c] == npos ? 0.0 : sum_open[lower[c]];
      const double closed = sum_closed[c];
      sup = std::max({sup, std::fabs(open - expected),
                      std::fabs(closed - expected)});
    }
    hist_open = hist_closed;
  }
  out.raw = sup;
  out.normalized = sup / card;
  return out;
}

}  // namespace qmcdisc

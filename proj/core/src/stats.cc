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

#include "qmcdisc/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qmcdisc/error.h"
#include "qmcdisc/pointset_io.h"
#include "qmcdisc/summation.h"

namespace qmcdisc {
namespace {

constexpr std::size_t kSampleChunk = std::size_t{1} << 16;

void check_p(double p) {
  if (!(p > 0.0) || std::isinf(p)) {
    throw ValidationError("p must be a finite value > 0");
  }
}

bool is_even_integer(double p) {
  return p == std::floor(p) && std::fmod(p, 2.0) == 0.0 && p <= 300.0;
}

}  // namespace

double kappa_quadrature(double p) {
  check_p(p);
  auto integrand = [p](double u) {
    return u == 0.0 ? 0.0 : std::exp(p * std::log(u) - 0.5 * u * u);
  };
  // Split at the mode sqrt(p) so the upper piece is a clean decaying tail.
  const double mode = std::sqrt(p);
  using boost::math::quadrature::gauss_kronrod;
  const double head =
      gauss_kronrod<double, 61>::integrate(integrand, 0.0, mode, 20, 1e-14);
  const double tail = gauss_kronrod<double, 61>::integrate(
      integrand, mode, std::numeric_limits<double>::infinity(), 20, 1e-14);
  return 2.0 * (head + tail) / std::sqrt(2.0 * std::numbers::pi);
}

double kappa(double p) {
  check_p(p);
  if (is_even_integer(p)) {
    // (2r)! / (2^r r!) = 1 * 3 * 5 * ... * (2r - 1).
    double acc = 1.0;
    for (int k = 1; k < static_cast<int>(p); k += 2) acc *= k;
    return acc;
  }
  return kappa_quadrature(p);
}

double gaussian_moment(int h) {
  if (h < 0) throw ValidationError("moment order must be >= 0");
  if (h % 2 == 1) return 0.0;
  double acc = 1.0;
  for (int k = 1; k < h; k += 2) acc *= k;
  return acc;
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

PointSet hammersley_variant(Variant variant, const BaseSystem& system,
                            std::size_t n) {
  switch (variant) {
    case Variant::kHammersley:
      return hammersley(system, n);
    case Variant::kHammersleySym:
      return hammersley_sym(system, n);
    case Variant::kHammersleySymDot:
      return hammersley_sym_dot(system, n);
    default:
      throw ValidationError("variant '" + std::string(variant_name(variant)) +
                            "' is not a Hammersley variant");
  }
}

SampleSet clt_samples(Variant variant, const BaseSystem& system, std::size_t n,
                      std::size_t samples, uint64_t seed,
                      const Budgets& budgets) {
  if (samples < 1) throw ValidationError("need at least one sample");
  const PointSet points = hammersley_variant(variant, system, n);
  const DiscrepancyValue norm = l2_exact(points, budgets);
  if (!(norm.raw > 0.0)) throw ValidationError("L_2 discrepancy is zero");

  SampleSet out;
  out.variant = variant;
  out.bases.assign(system.bases().begin(), system.bases().end());
  out.n = n;
  out.seed = seed;
  out.cardinality = points.size();
  out.l2_raw = norm.raw;
  out.values.reserve(samples);
  const LocalDiscrepancyEvaluator evaluator(points);
  for (std::size_t first = 0; first < samples; first += kSampleChunk) {
    const std::size_t count = std::min(kSampleChunk, samples - first);
    for (double v :
         evaluator.evaluate(uniform_queries(points.dim(), first, count, seed))) {
      out.values.push_back(v / norm.raw);
    }
  }
  return out;
}

MomentReport moment_report(std::span<const double> values, int max_order) {
  if (max_order < 2) throw ValidationError("max moment order must be >= 2");
  if (values.size() < 2) throw ValidationError("need at least two samples");
  const auto m = static_cast<long double>(values.size());
  MomentReport report;
  for (int h = 1; h <= max_order; ++h) {
    CompensatedSum sum;
    std::vector<long double> powers(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      powers[j] = std::pow(static_cast<long double>(values[j]), h);
      sum += powers[j];
    }
    const long double total = sum.value();
    // Leave-one-out estimates (total - y_j^h) / (M - 1).
    CompensatedSum loo_sum;
    for (long double w : powers) loo_sum += (total - w) / (m - 1);
    const long double loo_mean = loo_sum.value() / m;
    CompensatedSum spread;
    for (long double w : powers) {
      const long double dev = (total - w) / (m - 1) - loo_mean;
      spread += dev * dev;
    }
    MomentRow row;
    row.order = h;
    row.empirical = static_cast<double>(total / m);
    row.target = gaussian_moment(h);
    row.deviation = std::fabs(row.empirical - row.target);
    row.std_error = static_cast<double>(std::sqrt((m - 1) / m * spread.value()));
    report.rows.push_back(row);
  }
  return report;
}

ShapeSummary shape_summary(std::span<const double> values) {
  if (values.size() < 2) throw ValidationError("need at least two samples");
  const auto m = static_cast<long double>(values.size());
  CompensatedSum sum;
  for (double v : values) sum += v;
  const long double mean = sum.value() / m;
  CompensatedSum s2, s3, s4;
  for (double v : values) {
    const long double d = v - mean;
    s2 += d * d;
    s3 += d * d * d;
    s4 += d * d * d * d;
  }
  const long double m2 = s2.value() / m;
  ShapeSummary out;
  out.mean = static_cast<double>(mean);
  out.variance = static_cast<double>(m2);
  if (m2 > 0) {
    out.skewness = static_cast<double>(s3.value() / m / std::pow(m2, 1.5L));
    out.kurtosis = static_cast<double>(s4.value() / m / (m2 * m2));
  }
  return out;
}

double ks_normal(std::span<const double> values) {
  if (values.size() < 10) throw ValidationError("KS test needs >= 10 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double stat = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    const double cdf = normal_cdf(sorted[j]);
    stat = std::max({stat, (static_cast<double>(j) + 1) / m - cdf,
                     cdf - static_cast<double>(j) / m});
  }
  return stat;
}

std::vector<ScalingRow> scaling_table(const BaseSystem& system, double p,
                                      std::span<const uint64_t> ns,
                                      int64_t start, std::size_t samples,
                                      uint64_t seed, const Budgets& budgets) {
  check_p(p);
  std::vector<ScalingRow> rows;
  for (uint64_t n : ns) {
    if (n < 2) throw ValidationError("scaling table needs N >= 2");
    const PointSet segment = halton(system, start, n);
    ScalingRow row;
    row.n = n;
    row.depth = default_truncation_depth(n);
    row.value = p == 2.0 && n <= budgets.pair_points
                    ? l2_exact(segment, budgets)
                    : lp_mc(segment, p, samples, seed);
    row.statistic = row.value.raw /
                    std::pow(std::log(static_cast<double>(n)), system.dim() / 2.0);
    rows.push_back(row);
  }
  return rows;
}

std::vector<RatioRow> ratio_table(Variant variant, const BaseSystem& system,
                                  double p, std::span<const uint64_t> ns,
                                  std::size_t samples, uint64_t seed,
                                  const Budgets& budgets) {
  check_p(p);
  const double target = std::pow(kappa(p), 1.0 / p);
  std::vector<RatioRow> rows;
  for (uint64_t n : ns) {
    const PointSet points = hammersley_variant(variant, system, n);
    RatioRow row;
    row.n = n;
    row.p = p;
    row.denominator = l2_exact(points, budgets);
    row.numerator = lp_mc(points, p, samples, seed);
    row.ratio = row.numerator.raw / row.denominator.raw;
    row.std_error = *row.numerator.stderr_raw / row.denominator.raw;
    row.target = target;
    row.deviation = row.ratio - target;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const MomentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"order", r.order},
                    {"empirical", r.empirical},
                    {"target", r.target},
                    {"deviation", r.deviation},
                    {"stderr", r.std_error}});
  }
  return rows;
}

nlohmann::json to_json(const ShapeSummary& s) {
  return {{"mean", s.mean},
          {"variance", s.variance},
          {"skewness", s.skewness},
          {"kurtosis", s.kurtosis}};
}

nlohmann::json to_json(const ScalingRow& row) {
  return {{"n", row.n},
          {"depth", row.depth},
          {"value", to_json(row.value)},
          {"statistic", row.statistic}};
}

nlohmann::json to_json(const RatioRow& row) {
  return {{"n", row.n},
          {"p", row.p},
          {"ratio", row.ratio},
          {"stderr", row.std_error},
          {"target", row.target},
          {"deviation", row.deviation},
          {"numerator", to_json(row.numerator)},
          {"denominator", to_json(row.denominator)}};
}

void write_csv(std::ostream& os, const MomentReport& report) {
  os << "order,empirical,target,deviation,stderr\n";
  for (const auto& r : report.rows) {
    os << r.order << ',' << format_double(r.empirical) << ','
       << format_double(r.target) << ',' << format_double(r.deviation) << ','
       << format_double(r.std_error) << '\n';
  }
}

void write_csv(std::ostream& os, std::span<const ScalingRow> rows) {
  os << "n,depth,method,p,raw,normalized,stderr,statistic\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.depth << ',' << method_name(r.value.method) << ','
       << format_double(r.value.p) << ',' << format_double(r.value.raw) << ','
       << format_double(r.value.normalized) << ','
       << (r.value.stderr_raw ? format_double(*r.value.stderr_raw) : "") << ','
       << format_double(r.statistic) << '\n';
  }
}

void write_csv(std::ostream& os, std::span<const RatioRow> rows) {
  os << "n,p,ratio,stderr,target,deviation,lp_raw,l2_raw\n";
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.p) << ',' << format_double(r.ratio)
       << ',' << format_double(r.std_error) << ',' << format_double(r.target)
       << ',' << format_double(r.deviation) << ','
       << format_double(r.numerator.raw) << ','
       << format_double(r.denominator.raw) << '\n';
  }
}

void write_samples_csv(std::ostream& os, const SampleSet& samples) {
  os << "y\n";
  for (double v : samples.values) os << format_double(v) << '\n';
}

}  // namespace qmcdisc

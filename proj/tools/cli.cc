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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qmcdisc/error.h"
#include "qmcdisc/fourier.h"
#include "qmcdisc/parallel.h"
#include "qmcdisc/pointset_io.h"
#include "qmcdisc/pointsets.h"
#include "qmcdisc/radix.h"
#include "qmcdisc/stats.h"

namespace qmcdisc::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  uint64_t v = 0;
  try {
    if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ValidationError(what + ": expected a non-negative integer, got '" +
                          text + "'");
  }
  if (used != text.size()) {
    throw ValidationError(what + ": trailing characters in '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError(what + ": expected a number, got '" + text + "'");
  }
  if (used != text.size()) {
    throw ValidationError(what + ": trailing characters in '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

void apply_env_budgets(Budgets& b) {
  if (const char* v = std::getenv("QMCDISC_PAIR_BUDGET")) {
    b.pair_points = parse_u64(v, "QMCDISC_PAIR_BUDGET");
  }
  if (const char* v = std::getenv("QMCDISC_GRID_BUDGET")) {
    b.grid_points = parse_real(v, "QMCDISC_GRID_BUDGET");
  }
  if (const char* v = std::getenv("QMCDISC_FREQ_BUDGET")) {
    b.fourier_frequencies = parse_u64(v, "QMCDISC_FREQ_BUDGET");
  }
  if (const char* v = std::getenv("QMCDISC_BLOCK_BUDGET")) {
    b.block_count = parse_u64(v, "QMCDISC_BLOCK_BUDGET");
  }
}

bool is_hammersley(Variant v) {
  return v == Variant::kHammersley || v == Variant::kHammersleySym ||
         v == Variant::kHammersleySymDot;
}

void validate(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (c.format != "csv" && c.format != "json") {
    throw ValidationError("--format must be csv or json");
  }
  if (cmd == "selftest") {
    if (c.block_cases < 1 || c.reconstruction_cases < 0) {
      throw ValidationError("self-test case counts must be positive");
    }
    return;
  }
  if (cmd == "disc" && !c.input.empty()) {
    // Bases and variant come from the manifest.
  } else {
    const BaseSystem system(c.bases);  // coprimality and range checks
    const Variant v = parse_variant(c.variant);
    if (v == Variant::kExternal) {
      throw ValidationError("variant 'external' is only readable via --input");
    }
    if ((cmd == "clt" || cmd == "ratio") && !is_hammersley(v)) {
      throw ValidationError(cmd + " needs a Hammersley variant "
                                  "(hammersley, hammersley-sym, hammersley-sym-dot)");
    }
    if (cmd == "gen" || cmd == "disc" || cmd == "clt") {
      if (is_hammersley(v) && c.n < 1) throw ValidationError("--n must be >= 1");
    }
  }
  if (!(c.p > 0.0)) throw ValidationError("--p must be > 0");
  if (cmd == "disc") {
    if (c.input.empty() && c.n < 1) {
      throw ValidationError("disc needs --n (or --input)");
    }
    if (c.exact && c.at.empty() && c.p != 2.0 && !std::isinf(c.p)) {
      throw ValidationError("--exact is available for p = 2 and p = inf only");
    }
    if (!std::isinf(c.p) && !(c.p == 2.0 && c.exact) && c.at.empty() &&
        c.samples < 2) {
      throw ValidationError("--samples must be >= 2");
    }
    if (c.depth < 0) throw ValidationError("--depth must be >= 1");
  }
  if (cmd == "clt") {
    if (c.samples < 10) throw ValidationError("clt needs --samples >= 10");
    if (c.max_order < 2) throw ValidationError("--max-order must be >= 2");
  }
  if (cmd == "scaling" || cmd == "ratio") {
    if (c.n_list.empty()) throw ValidationError(cmd + " needs --nlist or --n");
    if (std::isinf(c.p)) throw ValidationError(cmd + " needs a finite --p");
    if (c.samples < 2) throw ValidationError("--samples must be >= 2");
  }
  if (cmd == "scaling") {
    for (uint64_t n : c.n_list) {
      if (n < 2) throw ValidationError("scaling needs every N >= 2");
    }
  }
  if (cmd == "gen" && c.format == "csv" && !c.out.empty() &&
      std::filesystem::path(c.out).extension() == ".json") {
    throw ValidationError("gen --format csv writes <out> plus a .json manifest; "
                          "choose an --out that does not end in .json");
  }
}

PointSet build_point_set(const RunConfig& c) {
  const BaseSystem system(c.bases);
  switch (parse_variant(c.variant)) {
    case Variant::kHalton:
      return halton(system, c.q, c.n);
    case Variant::kHammersley:
      return hammersley(system, c.n);
    case Variant::kHammersleySym:
      return hammersley_sym(system, c.n);
    case Variant::kHammersleySymDot:
      return hammersley_sym_dot(system, c.n);
    case Variant::kGeneralizedHalton: {
      const auto perms = c.perm_seed
                             ? DigitPermutationFamily::random(system, *c.perm_seed)
                             : DigitPermutationFamily::identity(system);
      return generalized_halton(system, perms, c.q, c.n);
    }
    case Variant::kExternal:
      break;
  }
  throw ValidationError("cannot generate an external point set");
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : "";
}

// Each command fills either a JSON result or CSV text.
struct Output {
  nlohmann::json result;
  std::string csv;
  int exit_code = kExitOk;
};

Output cmd_gen(const RunConfig& c) {
  Output o;
  const PointSet pts = build_point_set(c);
  if (c.format == "csv") {
    if (!c.out.empty()) {
      write_point_set(c.out, pts);
      return o;
    }
    std::ostringstream os;
    write_csv(os, pts);
    o.csv = os.str();
    return o;
  }
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto row = pts.point(k);
    points.push_back(std::vector<double>(row.begin(), row.end()));
  }
  o.result = {{"dim", pts.dim()},
              {"count", pts.size()},
              {"point_set", provenance_to_json(pts.provenance())},
              {"points", points}};
  return o;
}

Output cmd_disc(const RunConfig& c) {
  Output o;
  const PointSet pts = c.input.empty() ? build_point_set(c)
                                       : read_point_set(c.input);
  o.result["point_set"] = provenance_to_json(pts.provenance());
  o.result["cardinality"] = pts.size();

  if (!c.at.empty()) {
    if (c.at.size() != static_cast<std::size_t>(pts.dim())) {
      throw ValidationError("--at needs " + std::to_string(pts.dim()) +
                            " coordinates");
    }
    const double local = local_discrepancy(pts, c.at);
    o.result["x"] = c.at;
    o.result["local"] = local;
    std::string truncated_csv = ",,";
    const Provenance& prov = pts.provenance();
    if (prov.variant == Variant::kHalton) {
      const BaseSystem system(prov.bases);
      const int depth = c.depth > 0 ? c.depth : default_truncation_depth(pts.size());
      const double truncated = truncated_local_discrepancy(
          system, prov.start, pts.size(), c.at, depth);
      const double via_blocks = truncated_discrepancy_via_blocks(
          system, prov.start, pts.size(), c.at, depth, BlockMethod::kDirect,
          c.budgets);
      o.result["truncated"] = {{"depth", depth},
                               {"value", truncated},
                               {"via_blocks", via_blocks}};
      truncated_csv = std::to_string(depth) + "," + format_double(truncated) +
                      "," + format_double(via_blocks);
    }
    o.csv = "local,depth,truncated,via_blocks\n" + format_double(local) + "," +
            truncated_csv + "\n";
    return o;
  }

  DiscrepancyValue v;
  if (std::isinf(c.p)) {
    v = linf_exact(pts, c.budgets);
  } else if (c.p == 2.0 && c.exact) {
    v = l2_exact(pts, c.budgets);
  } else {
    v = lp_mc(pts, c.p, c.samples, c.seed);
  }
  o.result["value"] = to_json(v);
  std::ostringstream os;
  os << "p,method,raw,normalized,stderr,cardinality,samples,seed\n"
     << (std::isinf(v.p) ? std::string("inf") : format_double(v.p)) << ','
     << method_name(v.method) << ',' << format_double(v.raw) << ','
     << format_double(v.normalized) << ',' << csv_optional(v.stderr_raw) << ','
     << v.cardinality << ',' << v.samples << ','
     << (v.seed ? std::to_string(*v.seed) : "") << '\n';
  o.csv = os.str();
  return o;
}

Output cmd_selftest(const RunConfig& c) {
  Output o;
  // Localization round trip over every (2,3) depth vector with P_r <= 5000.
  const BaseSystem system({2, 3});
  uint64_t vectors = 0, indices = 0, mismatches = 0;
  for (int r1 = 0; checked_pow(2, r1) <= 5000; ++r1) {
    for (int r2 = 0; checked_pow(2, r1) * checked_pow(3, r2) <= 5000; ++r2) {
      const std::vector<int> r{r1, r2};
      const MultiRadix mr = crt_weights(system, r);
      for (uint64_t k = 0; k < mr.modulus; ++k) {
        const double h[] = {radical_inverse(static_cast<int64_t>(k), 2),
                            radical_inverse(static_cast<int64_t>(k), 3)};
        mismatches += localize(h, mr) != k;
        ++indices;
      }
      ++vectors;
    }
  }
  const bool crt_ok = mismatches == 0;
  const FourierSelfCheck fourier =
      fourier_self_check(c.seed, c.block_cases, c.reconstruction_cases);
  const bool passed = crt_ok && fourier.passed && !c.inject_failure;

  o.result = {{"crt",
               {{"bases", {2, 3}},
                {"modulus_limit", 5000},
                {"depth_vectors", vectors},
                {"indices", indices},
                {"mismatches", mismatches},
                {"passed", crt_ok}}},
              {"fourier", to_json(fourier)},
              {"injected_failure", c.inject_failure},
              {"passed", passed}};
  std::ostringstream os;
  os << "check,value,tolerance,passed\n"
     << "crt_mismatches," << mismatches << ",0," << crt_ok << '\n'
     << "block_error," << format_double(fourier.max_block_error) << ','
     << format_double(fourier.block_tolerance) << ','
     << (fourier.max_block_error < fourier.block_tolerance) << '\n'
     << "reconstruction_error,"
     << format_double(fourier.max_reconstruction_error) << ','
     << format_double(fourier.reconstruction_tolerance) << ','
     << (fourier.max_reconstruction_error <= fourier.reconstruction_tolerance)
     << '\n'
     << "injected_failure," << c.inject_failure << ",0," << !c.inject_failure
     << '\n';
  o.csv = os.str();
  o.exit_code = passed ? kExitOk : kExitSelfTest;
  return o;
}

Output cmd_clt(const RunConfig& c) {
  Output o;
  const SampleSet set = clt_samples(parse_variant(c.variant), BaseSystem(c.bases),
                                    c.n, c.samples, c.seed, c.budgets);
  const MomentReport moments = moment_report(set.values, c.max_order);
  const ShapeSummary shape = shape_summary(set.values);
  const double ks = ks_normal(set.values);
  if (!c.samples_out.empty()) {
    std::ofstream f(c.samples_out);
    if (!f) throw Error("cannot write " + c.samples_out);
    write_samples_csv(f, set);
  }
  o.result = {{"variant", c.variant},
              {"bases", c.bases},
              {"n", c.n},
              {"samples", c.samples},
              {"seed", c.seed},
              {"cardinality", set.cardinality},
              {"l2_raw", set.l2_raw},
              {"moments", to_json(moments)},
              {"shape", to_json(shape)},
              {"ks", ks}};
  std::ostringstream os;
  write_csv(os, moments);
  o.csv = os.str();
  return o;
}

Output cmd_scaling(const RunConfig& c) {
  Output o;
  const auto rows = scaling_table(BaseSystem(c.bases), c.p, c.n_list, c.q,
                                  c.samples, c.seed, c.budgets);
  nlohmann::json js = nlohmann::json::array();
  for (const auto& r : rows) js.push_back(to_json(r));
  o.result = {{"rows", js}};
  std::ostringstream os;
  write_csv(os, std::span<const ScalingRow>(rows));
  o.csv = os.str();
  return o;
}

Output cmd_ratio(const RunConfig& c) {
  Output o;
  const auto rows = ratio_table(parse_variant(c.variant), BaseSystem(c.bases),
                                c.p, c.n_list, c.samples, c.seed, c.budgets);
  nlohmann::json js = nlohmann::json::array();
  for (const auto& r : rows) js.push_back(to_json(r));
  o.result = {{"rows", js}};
  std::ostringstream os;
  write_csv(os, std::span<const RatioRow>(rows));
  o.csv = os.str();
  return o;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error("cannot write " + c.out);
  f << text;
}

}  // namespace

std::vector<uint64_t> parse_n_list(const std::string& text) {
  std::vector<uint64_t> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const uint64_t lo = parse_u64(text.substr(0, dots), "--nlist");
    const uint64_t hi = parse_u64(text.substr(dots + 2), "--nlist");
    if (lo > hi) throw ValidationError("--nlist range is empty: " + text);
    for (uint64_t v = 1; v <= hi && v != 0; v <<= 1) {
      if (v >= lo) out.push_back(v);
    }
    if (out.empty()) {
      throw ValidationError("--nlist range contains no power of two: " + text);
    }
    return out;
  }
  for (const auto& item : split(text, ',')) {
    out.push_back(parse_u64(item, "--nlist"));
  }
  if (out.empty()) throw ValidationError("--nlist is empty");
  return out;
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") {
    return std::numeric_limits<double>::infinity();
  }
  const double p = parse_real(text, "--p");
  if (!(p > 0.0) || std::isinf(p)) {
    throw ValidationError("--p must be a positive number or 'inf'");
  }
  return p;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Halton/Hammersley point sets and their L_p discrepancy",
               "qmcdisc"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);

  RunConfig c;
  apply_env_budgets(c.budgets);
  std::string bases = "2,3", p = "2", nlist, at, variant, replay_path;
  std::optional<uint64_t> n, pair_budget, freq_budget, block_budget;
  std::optional<double> grid_budget;

  auto add_points = [&](CLI::App* s) {
    s->add_option("--bases", bases, "comma-separated pairwise coprime bases");
    s->add_option("--variant", variant,
                  "halton | hammersley | hammersley-sym | hammersley-sym-dot "
                  "| generalized-halton");
    s->add_option("--n", n, "N (point count parameter)");
    s->add_option("--q", c.q, "start index Q for Halton segments");
    s->add_option("--perm-seed", c.perm_seed,
                  "generalized-halton: seed of random digit permutations");
  };
  auto add_io = [&](CLI::App* s) {
    s->add_option("--format", c.format, "csv | json");
    s->add_option("--out", c.out, "output path (default: stdout)");
    s->add_option("--threads", c.threads, "worker thread cap (0 = all cores)");
  };
  auto add_budgets = [&](CLI::App* s) {
    s->add_option("--pair-budget", pair_budget, "max points for exact L2");
    s->add_option("--grid-budget", grid_budget, "max corners for exact L-inf");
    s->add_option("--freq-budget", freq_budget, "max P_r per Fourier block");
    s->add_option("--block-budget", block_budget, "max depth vectors n^s");
  };
  auto add_mc = [&](CLI::App* s) {
    s->add_option("--samples", c.samples, "Monte Carlo sample count M");
    s->add_option("--seed", c.seed, "random seed");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a point set");
  add_points(gen);
  add_io(gen);

  CLI::App* disc = app.add_subcommand("disc", "discrepancy of a point set");
  add_points(disc);
  add_io(disc);
  add_budgets(disc);
  add_mc(disc);
  disc->add_option("--input", c.input, "point-set manifest (.json) to read");
  disc->add_option("--p", p, "norm order: positive real or inf");
  disc->add_flag("--exact", c.exact, "closed-form L2 (p = 2)");
  disc->add_option("--at", at, "evaluate D at this point (comma list)");
  disc->add_option("--depth", c.depth, "truncation depth for --at on Halton");

  CLI::App* self = app.add_subcommand("selftest", "run the oracle batteries");
  add_io(self);
  self->add_option("--seed", c.seed, "battery seed");
  self->add_option("--block-cases", c.block_cases, "random block cases");
  self->add_option("--reconstruction-cases", c.reconstruction_cases,
                   "random block-sum reconstructions");
  self->add_flag("--inject-failure", c.inject_failure,
                 "force a failing report (exercises exit code 4)");

  CLI::App* clt = app.add_subcommand("clt", "normalized discrepancy samples");
  add_points(clt);
  add_io(clt);
  add_budgets(clt);
  add_mc(clt);
  clt->add_option("--max-order", c.max_order, "highest moment reported");
  clt->add_option("--samples-out", c.samples_out, "write the Y values as CSV");

  CLI::App* scaling = app.add_subcommand("scaling", "L_p scaling table");
  add_points(scaling);
  add_io(scaling);
  add_budgets(scaling);
  add_mc(scaling);
  scaling->add_option("--p", p, "norm order");
  scaling->add_option("--nlist", nlist, "a..b (powers of two) or comma list");

  CLI::App* ratio = app.add_subcommand("ratio", "L_p / L_2 ratio table");
  add_points(ratio);
  add_io(ratio);
  add_budgets(ratio);
  add_mc(ratio);
  ratio->add_option("--p", p, "norm order");
  ratio->add_option("--nlist", nlist, "a..b (powers of two) or comma list");

  CLI::App* replay = app.add_subcommand("replay", "re-run a JSON result file");
  replay->add_option("--config", replay_path, "JSON output of an earlier run")
      ->required();
  add_io(replay);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(kVersion) + "\n"};
  } catch (const CLI::Success& e) {  // --help and friends
    std::ostringstream help, ignored;
    app.exit(e, help, ignored);
    throw HelpRequested{help.str()};
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  const CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();

  if (c.command == "replay") {
    std::ifstream f(replay_path);
    if (!f) throw ValidationError("cannot read " + replay_path);
    nlohmann::json doc;
    try {
      f >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("invalid JSON in " + replay_path + ": " + e.what());
    }
    if (!doc.contains("provenance") || !doc["provenance"].contains("config")) {
      throw ValidationError(replay_path + " has no provenance.config");
    }
    RunConfig r = config_from_json(doc["provenance"]["config"]);
    if (sub->count("--format")) r.format = c.format;
    r.out = c.out;
    if (sub->count("--threads")) r.threads = c.threads;
    validate(r);
    return r;
  }

  std::vector<int> base_list;
  for (const auto& item : split(bases, ',')) {
    base_list.push_back(static_cast<int>(parse_u64(item, "--bases")));
  }
  c.bases = base_list;
  if (variant.empty()) {
    variant = c.command == "clt" || c.command == "ratio" ? "hammersley" : "halton";
  }
  c.variant = variant;
  if (n) c.n = *n;
  c.p = parse_p(p);
  if (!nlist.empty()) {
    c.n_list = parse_n_list(nlist);
  } else if (n && (c.command == "scaling" || c.command == "ratio")) {
    c.n_list = {*n};
  }
  if (!at.empty()) {
    for (const auto& item : split(at, ',')) c.at.push_back(parse_real(item, "--at"));
  }
  if (pair_budget) c.budgets.pair_points = *pair_budget;
  if (grid_budget) c.budgets.grid_points = *grid_budget;
  if (freq_budget) c.budgets.fourier_frequencies = *freq_budget;
  if (block_budget) c.budgets.block_count = *block_budget;
  validate(c);
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"bases", c.bases},
          {"variant", c.variant},
          {"n", c.n},
          {"n_list", c.n_list},
          {"q", c.q},
          {"p", std::isinf(c.p) ? nlohmann::json("inf") : nlohmann::json(c.p)},
          {"exact", c.exact},
          {"samples", c.samples},
          {"seed", c.seed},
          {"depth", c.depth},
          {"at", c.at},
          {"input", c.input},
          {"format", c.format},
          {"samples_out", c.samples_out},
          {"max_order", c.max_order},
          {"perm_seed", c.perm_seed ? nlohmann::json(*c.perm_seed) : nlohmann::json()},
          {"block_cases", c.block_cases},
          {"reconstruction_cases", c.reconstruction_cases},
          {"inject_failure", c.inject_failure},
          {"budgets",
           {{"pair_points", c.budgets.pair_points},
            {"grid_points", c.budgets.grid_points},
            {"fourier_frequencies", c.budgets.fourier_frequencies},
            {"block_count", c.budgets.block_count}}}};
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.bases = j.at("bases").get<std::vector<int>>();
    c.variant = j.at("variant").get<std::string>();
    c.n = j.at("n").get<uint64_t>();
    c.n_list = j.at("n_list").get<std::vector<uint64_t>>();
    c.q = j.at("q").get<int64_t>();
    c.p = j.at("p").is_string() ? parse_p(j["p"].get<std::string>())
                                : j["p"].get<double>();
    c.exact = j.at("exact").get<bool>();
    c.samples = j.at("samples").get<uint64_t>();
    c.seed = j.at("seed").get<uint64_t>();
    c.depth = j.at("depth").get<int>();
    c.at = j.at("at").get<std::vector<double>>();
    c.input = j.at("input").get<std::string>();
    c.format = j.at("format").get<std::string>();
    c.samples_out = j.at("samples_out").get<std::string>();
    c.max_order = j.at("max_order").get<int>();
    if (!j.at("perm_seed").is_null()) c.perm_seed = j["perm_seed"].get<uint64_t>();
    c.block_cases = j.at("block_cases").get<int>();
    c.reconstruction_cases = j.at("reconstruction_cases").get<int>();
    c.inject_failure = j.at("inject_failure").get<bool>();
    const auto& b = j.at("budgets");
    c.budgets.pair_points = b.at("pair_points").get<std::size_t>();
    c.budgets.grid_points = b.at("grid_points").get<double>();
    c.budgets.fourier_frequencies = b.at("fourier_frequencies").get<uint64_t>();
    c.budgets.block_count = b.at("block_count").get<uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed run config: ") + e.what());
  }
  if (c.command == "replay") throw ValidationError("cannot replay a replay");
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    set_thread_limit(c.threads);
    const auto t0 = std::chrono::steady_clock::now();
    Output o;
    if (c.command == "gen") {
      o = cmd_gen(c);
    } else if (c.command == "disc") {
      o = cmd_disc(c);
    } else if (c.command == "selftest") {
      o = cmd_selftest(c);
    } else if (c.command == "clt") {
      o = cmd_clt(c);
    } else if (c.command == "scaling") {
      o = cmd_scaling(c);
    } else if (c.command == "ratio") {
      o = cmd_ratio(c);
    } else {
      throw ValidationError("unknown command '" + c.command + "'");
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (c.format == "csv") {
      // gen with --out has already written its files.
      if (!(c.command == "gen" && !c.out.empty())) emit(c, o.csv, out);
    } else {
      const nlohmann::json doc = {
          {"provenance",
           {{"tool", "qmcdisc"}, {"version", kVersion}, {"config", config_to_json(c)}}},
          {"result", o.result},
          {"timing", {{"seconds", seconds}, {"threads", thread_limit()}}}};
      emit(c, doc.dump(2) + "\n", out);
    }
    if (o.exit_code == kExitSelfTest) err << "self-test failed\n";
    return o.exit_code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const Error& e) {
    // ValidationError and OverflowError (e.g. a base product past 2^63).
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return run(config, out, err);
}

}  // namespace qmcdisc::cli

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

#include "qmcdisc/pointset_io.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "qmcdisc/error.h"

namespace qmcdisc {

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

nlohmann::json provenance_to_json(const Provenance& p) {
  nlohmann::json j;
  j["variant"] = std::string(variant_name(p.variant));
  j["bases"] = p.bases;
  j["start"] = p.start;
  j["count_param"] = p.count_param;
  j["permutation_id"] =
      p.permutation_id ? nlohmann::json(*p.permutation_id) : nlohmann::json();
  j["seed"] = p.seed ? nlohmann::json(*p.seed) : nlohmann::json();
  return j;
}

Provenance provenance_from_json(const nlohmann::json& j) {
  Provenance p;
  p.variant = parse_variant(j.at("variant").get<std::string>());
  p.bases = j.at("bases").get<std::vector<int>>();
  p.start = j.value("start", int64_t{0});
  p.count_param = j.value("count_param", uint64_t{0});
  if (j.contains("permutation_id") && !j["permutation_id"].is_null()) {
    p.permutation_id = j["permutation_id"].get<std::string>();
  }
  if (j.contains("seed") && !j["seed"].is_null()) {
    p.seed = j["seed"].get<uint64_t>();
  }
  return p;
}

void write_csv(std::ostream& os, const PointSet& points) {
  for (int i = 0; i < points.dim(); ++i) {
    os << (i ? "," : "") << 'x' << (i + 1);
  }
  os << '\n';
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto row = points.point(k);
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_double(row[i]);
    }
    os << '\n';
  }
}

PointSet read_csv(std::istream& is, const Provenance& provenance) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("empty CSV input");
  const int dim =
      static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
  std::vector<double> coords;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    int fields = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      // strtod rather than from_chars: libstdc++ 11 lacks the double overload.
      const std::string field = line.substr(pos, end - pos);
      char* parse_end = nullptr;
      const double v = std::strtod(field.c_str(), &parse_end);
      if (field.empty() || parse_end != field.c_str() + field.size()) {
        throw ValidationError("bad number on CSV row " + std::to_string(row));
      }
      coords.push_back(v);
      ++fields;
      pos = end + 1;
    }
    if (fields != dim) {
      throw ValidationError("CSV row " + std::to_string(row) + " has " +
                            std::to_string(fields) + " fields, expected " +
                            std::to_string(dim));
    }
  }
  return PointSet(dim, std::move(coords), provenance);
}

nlohmann::json manifest_json(const PointSet& points,
                             const std::string& csv_name) {
  return {{"format", "qmcdisc-pointset"},
          {"dim", points.dim()},
          {"count", points.size()},
          {"provenance", provenance_to_json(points.provenance())},
          {"csv", csv_name}};
}

std::filesystem::path write_point_set(const std::filesystem::path& csv_path,
                                      const PointSet& points) {
  {
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot open " + csv_path.string());
    write_csv(out, points);
  }
  auto manifest_path = csv_path;
  manifest_path.replace_extension(".json");
  std::ofstream out(manifest_path);
  if (!out) throw Error("cannot open " + manifest_path.string());
  out << manifest_json(points, csv_path.filename().string()).dump(2) << '\n';
  return manifest_path;
}

PointSet read_point_set(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw ValidationError("cannot open " + manifest_path.string());
  const auto manifest = nlohmann::json::parse(in);
  if (manifest.value("format", "") != "qmcdisc-pointset") {
    throw ValidationError("not a point-set manifest");
  }
  const auto csv_path =
      manifest_path.parent_path() / manifest.at("csv").get<std::string>();
  std::ifstream csv(csv_path);
  if (!csv) throw ValidationError("cannot open " + csv_path.string());
  PointSet points =
      read_csv(csv, provenance_from_json(manifest.at("provenance")));
  if (points.dim() != manifest.at("dim").get<int>() ||
      points.size() != manifest.at("count").get<std::size_t>()) {
    throw ValidationError("CSV does not match manifest dimension/count");
  }
  return points;
}

}  // namespace qmcdisc

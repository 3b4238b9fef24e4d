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

// CSV and JSON-manifest serialization of point sets. CSV rows carry every
// coordinate with 17 significant digits, which round-trips IEEE doubles
// exactly.

#ifndef QMCDISC_POINTSET_IO_H_
#define QMCDISC_POINTSET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "qmcdisc/pointsets.h"

namespace qmcdisc {

// Shortest-safe decimal for a double: 17 significant digits, '.' separator.
std::string format_double(double v);

nlohmann::json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const nlohmann::json& j);

// Header row "x1,...,xd" followed by one point per row.
void write_csv(std::ostream& os, const PointSet& points);
// Parses the format written by write_csv(); the header row is required.
// Provenance is attached by the caller (see read_point_set()).
PointSet read_csv(std::istream& is, const Provenance& provenance = {});

// {"format": "qmcdisc-pointset", "dim", "count", "provenance", "csv"}
nlohmann::json manifest_json(const PointSet& points,
                             const std::string& csv_name);

// Writes <csv_path> and a manifest next to it; returns the manifest path
// (csv_path with extension replaced by ".json").
std::filesystem::path write_point_set(const std::filesystem::path& csv_path,
                                      const PointSet& points);
// Reads a manifest and the CSV it references (resolved relative to the
// manifest). Throws ValidationError on count or dimension mismatch.
PointSet read_point_set(const std::filesystem::path& manifest_path);

}  // namespace qmcdisc

#endif  // QMCDISC_POINTSET_IO_H_

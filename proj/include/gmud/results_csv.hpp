// Copyright 2026 The gmud Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GMUD_RESULTS_CSV_HPP
#define GMUD_RESULTS_CSV_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmud/experiment.hpp"

namespace gmud {

struct RunMetadata {
  /// Effective configuration, one `key = value` per line; echoed into the
  /// header and hashed.
  std::string config_echo;
  std::string software_version = GMUD_VERSION;
  /// Adds a presentation-only `sinr_db_display` column: every dB value
  /// shifted by |min user SINR in dB| over all stations at that point and run.
  bool display_offset = false;
};

/// Columns, in order. `in_mean_core` is 0/1 core membership of the
/// mean-payoff game on "mean" rows and repeats `in_core` on run rows.
inline constexpr const char* kCsvColumns[] = {
    "station_id",      "sweep_variable",          "sweep_value",
    "run_index",       "structure_label",         "user_id",
    "sinr_linear",     "sinr_db",                 "gain_over_noncoop_linear",
    "in_core",         "in_mean_core"};

/// FNV-1a 64-bit hash, rendered as 16 hex digits.
std::string config_hash(std::string_view text);

/// Writes the metadata header (lines starting with '#') and one row per
/// (point, station, run or mean, structure, user or total). Numbers use the
/// shortest decimal form that round-trips. Throws std::runtime_error if the
/// stream fails.
void emit_results(const SweepResult& result, std::ostream& out,
                  const RunMetadata& metadata);

/// One parsed data row.
struct CsvRow {
  int station_id = 0;
  std::string sweep_variable;
  double sweep_value = 0.0;
  std::string run_index;  // run number or "mean"
  std::string structure_label;
  std::string user_id;  // 1-based user or "total"
  double sinr_linear = 0.0;
  double sinr_db = 0.0;
  double gain_over_noncoop_linear = 0.0;
  double in_core = 0.0;
  double in_mean_core = 0.0;
  std::optional<double> sinr_db_display;
};

/// Parses output of emit_results, skipping comment lines. Throws
/// std::runtime_error on a malformed row.
std::vector<CsvRow> read_results(std::istream& in);

}  // namespace gmud

#endif  // GMUD_RESULTS_CSV_HPP

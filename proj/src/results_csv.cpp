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

#include "gmud/results_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gmud {

namespace {

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

double parse_num(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line) +
                             ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::string quoted(const std::string& field) {
  return field.find(',') == std::string::npos ? field : '"' + field + '"';
}

// Splits one CSV line; fields may be wrapped in double quotes.
std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out(1);
  bool in_quotes = false;
  for (char c : line) {
    if (c == '"') {
      in_quotes = !in_quotes;
    } else if (c == ',' && !in_quotes) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

struct RowWriter {
  std::ostream& out;
  int station_id;
  std::string_view variable;
  double value;
  std::string run;
  bool with_display;
  double offset;

  void write(const std::string& label, const std::string& user, double sinr,
             double gain, double in_core, double in_mean_core) const {
    const double db = to_db(sinr);
    out << station_id << ',' << variable << ',' << num(value) << ',' << run
        << ',' << quoted(label) << ',' << user << ',' << num(sinr) << ',' << num(db)
        << ',' << num(gain) << ',' << num(in_core) << ','
        << num(in_mean_core);
    if (with_display) out << ',' << num(db + offset);
    out << '\n';
  }
};

// |min user SINR in dB| across all stations and structures of one run (or of
// the means when run is empty).
double display_offset(const SweepPoint& point, std::optional<std::size_t> run) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const StationPoint& sp : point.stations) {
    for (std::size_t k = 0; k < sp.structures.size(); ++k) {
      const PayoffVector& p =
          run ? sp.runs[*run].payoffs[k] : sp.summary[k].mean_payoffs;
      for (double v : p.sinr) lowest = std::min(lowest, to_db(v));
    }
  }
  return std::abs(lowest);
}

}  // namespace

std::string config_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
  return out;
}

void emit_results(const SweepResult& result, std::ostream& out,
                  const RunMetadata& metadata) {
  out << "# gmud coalition sweep results\n"
      << "# software_version = " << metadata.software_version << '\n'
      << "# seed = " << result.seed << '\n'
      << "# mc_runs = " << result.mc_runs << '\n'
      << "# rng = " << RandomStream::kAlgorithm << '\n'
      << "# config_hash = fnv1a64:" << config_hash(metadata.config_echo) << '\n';
  std::istringstream echo(metadata.config_echo);
  for (std::string line; std::getline(echo, line);) {
    out << "# config: " << line << '\n';
  }
  if (metadata.display_offset) {
    out << "# sinr_db_display is presentation-only: sinr_db + |min user "
           "sinr_db| per point and run\n";
  }

  bool first = true;
  for (const char* c : kCsvColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  if (metadata.display_offset) out << ",sinr_db_display";
  out << '\n';

  const std::string_view variable = to_string(result.variable);
  for (const SweepPoint& point : result.points) {
    const std::size_t runs =
        point.stations.empty() ? 0 : point.stations.front().runs.size();
    for (std::size_t r = 0; r <= runs; ++r) {
      const bool is_mean = r == runs;
      const std::optional<std::size_t> run =
          is_mean ? std::nullopt : std::optional<std::size_t>(r);
      const double offset =
          metadata.display_offset ? display_offset(point, run) : 0.0;
      for (const StationPoint& sp : point.stations) {
        RowWriter w{out,    sp.station_id, variable,
                    point.value, is_mean ? "mean" : std::to_string(r),
                    metadata.display_offset, offset};
        const std::size_t players = sp.mean_noncoop.size();
        for (std::size_t k = 0; k < sp.structures.size(); ++k) {
          const std::string label = to_string(sp.structures[k]);
          if (is_mean) {
            const StructureSummary& s = sp.summary[k];
            const double mean_core = s.in_mean_core ? 1.0 : 0.0;
            for (std::size_t i = 0; i < players; ++i) {
              w.write(label, std::to_string(i + 1), s.mean_payoffs.sinr[i],
                      s.user_gain[i], s.core_frequency, mean_core);
            }
            w.write(label, "total", s.mean_total, s.gain_over_noncoop,
                    s.core_frequency, mean_core);
          } else {
            const RunOutcome& o = sp.runs[r];
            const PayoffVector& p = o.payoffs[k];
            const double in_core = o.in_core[k] ? 1.0 : 0.0;
            for (std::size_t i = 0; i < players; ++i) {
              w.write(label, std::to_string(i + 1), p.sinr[i],
                      p.sinr[i] - o.noncoop.sinr[i], in_core, in_core);
            }
            w.write(label, "total", total_payoff(p),
                    total_payoff(p) - total_payoff(o.noncoop), in_core,
                    in_core);
          }
        }
      }
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing results");
}

std::vector<CsvRow> read_results(std::istream& in) {
  std::vector<CsvRow> rows;
  bool header_seen = false;
  bool has_display = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string> f = split_fields(line);
    if (!header_seen) {
      header_seen = true;
      has_display = f.size() == std::size(kCsvColumns) + 1;
      if (f.size() < std::size(kCsvColumns) || f.front() != "station_id") {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": missing CSV header");
      }
      continue;
    }
    if (f.size() != std::size(kCsvColumns) + (has_display ? 1 : 0)) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": wrong number of fields");
    }
    CsvRow row;
    row.station_id = static_cast<int>(parse_num(f[0], line_no));
    row.sweep_variable = f[1];
    row.sweep_value = parse_num(f[2], line_no);
    row.run_index = f[3];
    row.structure_label = f[4];
    row.user_id = f[5];
    row.sinr_linear = parse_num(f[6], line_no);
    row.sinr_db = parse_num(f[7], line_no);
    row.gain_over_noncoop_linear = parse_num(f[8], line_no);
    row.in_core = parse_num(f[9], line_no);
    row.in_mean_core = parse_num(f[10], line_no);
    if (has_display) row.sinr_db_display = parse_num(f[11], line_no);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gmud

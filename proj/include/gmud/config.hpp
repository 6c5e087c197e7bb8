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

#ifndef GMUD_CONFIG_HPP
#define GMUD_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmud/experiment.hpp"

namespace gmud {

/// A config problem attributed to a key and source line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line,
              const std::string& key, const std::string& message);

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

enum class ScenarioKind { single_bs, two_bs, custom };

/// Effective settings of a run. Parsed from flat `dotted.key = value` text:
///
///   scenario             single_bs | two_bs | custom
///   seed, mc_runs
///   system.rho, system.snr_db
///   fading.k_db, fading.mu, fading.sigma_s_db
///   geometry.distances   comma list (single_bs, two_bs)
///   geometry.bs_separation                  (two_bs)
///   station.<id> = x, y                     (custom)
///   user.<n> = x, y, station_id             (custom, ordered by n)
///   sweep.variable       snr_db | sigma_s_db | mu
///   sweep.values         comma list, or sweep.start/stop/step
///   sweep.structures     labels separated by ';', e.g. 1234; 12|34
///   output.path, output.display_offset
///
/// '#' starts a comment line.
struct Config {
  ScenarioKind scenario = ScenarioKind::single_bs;
  std::optional<std::vector<double>> distances;
  double bs_separation = 300.0;
  std::vector<Station> custom_stations;
  std::vector<MobileUser> custom_users;
  FadingParams fading{kDefaultLayoutKDb, 3.0, 0.0};
  double rho = 0.4;
  double snr_db = 27.0;
  std::optional<SweepSpec> sweep;
  std::vector<std::string> structure_labels;
  std::size_t mc_runs = 1;
  std::uint64_t seed = 1;
  std::optional<std::string> output_path;
  bool display_offset = false;

  /// Canonical `key = value` rendering of every setting that affects
  /// results (output.path excluded).
  std::string echo() const;
};

/// Parses and fully validates a config. Throws ConfigError.
Config parse_config(std::string_view text, std::string_view source = "<config>");
Config load_config(const std::filesystem::path& path);

Scenario build_scenario(const Config& config);

/// The parsed sweep.structures filter (empty when unset).
std::vector<CoalitionStructure> structure_filter(const Config& config);

/// Names of the built-in presets (fig1 ... fig5).
std::vector<std::string_view> preset_names();
/// Config text of a preset. Throws std::invalid_argument for an unknown name.
std::string_view preset_text(std::string_view name);

}  // namespace gmud

#endif  // GMUD_CONFIG_HPP

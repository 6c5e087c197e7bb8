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

// gmud: coalition-structure payoffs and stability for group multiuser
// detection.
//
//   gmud enumerate --players N
//   gmud stability --config FILE [--out FILE]
//   gmud sweep --config FILE [--out FILE]
//   gmud preset --name fig2 --out FILE [--seed S]
//   gmud preset --name fig2 --print-config

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gmud/channel.hpp"
#include "gmud/config.hpp"
#include "gmud/experiment.hpp"
#include "gmud/partition.hpp"
#include "gmud/results_csv.hpp"

namespace {

using namespace gmud;

std::string db_text(double linear) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << to_db(linear) << " dB";
  return o.str();
}

std::string lin_text(double v) {
  std::ostringstream o;
  o << std::setprecision(6) << v;
  return o.str();
}

void write_csv(const SweepResult& result, const Config& config,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  emit_results(result, out, RunMetadata{config.echo(), GMUD_VERSION,
                                        config.display_offset});
}

int cmd_enumerate(std::size_t players) {
  const std::vector<CoalitionStructure> all = enumerate_structures(players);
  for (const CoalitionStructure& s : all) std::cout << to_string(s) << '\n';
  std::cout << "count: " << all.size() << '\n';
  return 0;
}

void print_station_report(const StationPoint& sp, std::size_t runs) {
  const StabilityReport& report = sp.mean_report;
  const std::size_t players = sp.mean_noncoop.size();
  std::cout << "station " << sp.station_id << ": " << players
            << " known users, unknown interference power "
            << lin_text(sp.mean_unknown_power);
  if (runs > 1) std::cout << " (payoffs are means over " << runs << " runs)";
  std::cout << '\n';

  for (std::size_t k = 0; k < report.evaluations.size(); ++k) {
    const StructureEvaluation& e = report.evaluations[k];
    const std::string label = to_string(e.structure);
    std::cout << "  " << std::left << std::setw(12) << label << std::right
              << " total " << lin_text(e.group_total) << " ("
              << db_text(e.group_total) << ")"
              << "  individually_rational=" << (e.individually_rational ? 1 : 0)
              << "  in_core=" << (report.in_core(e.structure) ? 1 : 0);
    if (runs > 1) {
      std::cout << "  core_frequency=" << sp.summary[k].core_frequency;
    }
    std::cout << '\n';
    for (std::size_t i = 0; i < players; ++i) {
      std::cout << "      user " << (i + 1) << ": "
                << lin_text(e.payoffs.sinr[i]) << " ("
                << db_text(e.payoffs.sinr[i]) << ")\n";
    }
    if (auto it = report.blocking.find(e.structure);
        it != report.blocking.end()) {
      const DeviationWitness& w = it->second;
      std::cout << "      blocked by {" << to_string(w.deviating_set, players)
                << "}:";
      const std::vector<PlayerId> members = w.deviating_set.members();
      for (std::size_t m = 0; m < members.size(); ++m) {
        std::cout << " user " << (members[m].index + 1) << " "
                  << lin_text(e.payoffs[members[m]]) << " -> "
                  << lin_text(w.payoff_after[m]);
        if (m + 1 < members.size()) std::cout << ',';
      }
      std::cout << '\n';
    }
  }
  std::cout << "  core: {";
  for (std::size_t i = 0; i < report.core_members.size(); ++i) {
    std::cout << (i ? ", " : "") << to_string(report.core_members[i]);
  }
  std::cout << "}\n";
}

int cmd_stability(const std::string& config_path,
                  const std::optional<std::string>& out_path) {
  Config config = load_config(config_path);
  const Scenario scenario = build_scenario(config);
  // Evaluated at the configured point; any sweep in the config is ignored.
  const SweepSpec point{SweepVariable::snr_db, {config.snr_db}};
  const std::vector<CoalitionStructure> filter = structure_filter(config);
  const SweepResult result = run_sweep(scenario, point, filter);

  std::cout << "snr_db = " << config.snr_db << ", rho = " << config.rho
            << ", mu = " << config.fading.mu
            << ", sigma_s_db = " << config.fading.sigma_s_db
            << ", seed = " << config.seed << '\n';
  for (const StationPoint& sp : result.points.front().stations) {
    print_station_report(sp, scenario.mc_runs);
  }
  if (out_path) {
    config.sweep = point;
    write_csv(result, config, *out_path);
    std::cout << "wrote " << *out_path << '\n';
  }
  return 0;
}

int run_and_write(const Config& config, const std::string& out_path) {
  if (!config.sweep) {
    throw std::runtime_error("config has no sweep (set sweep.variable)");
  }
  const Scenario scenario = build_scenario(config);
  const SweepResult result =
      run_sweep(scenario, *config.sweep, structure_filter(config));
  write_csv(result, config, out_path);

  std::cout << "wrote " << out_path << '\n';
  const std::string_view variable = to_string(result.variable);
  for (const SweepPoint* point : {&result.points.front(), &result.points.back()}) {
    for (const StationPoint& sp : point->stations) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < sp.summary.size(); ++k) {
        if (sp.summary[k].mean_total > sp.summary[best].mean_total) best = k;
      }
      std::cout << "station " << sp.station_id << " at " << variable << " = "
                << point->value << ": max group payoff "
                << to_string(sp.structures[best]) << " ("
                << lin_text(sp.summary[best].mean_total) << ")\n";
    }
  }
  return 0;
}

int cmd_sweep(const std::string& config_path,
              const std::optional<std::string>& out_path) {
  const Config config = load_config(config_path);
  const std::optional<std::string> path =
      out_path ? out_path : config.output_path;
  if (!path) throw std::runtime_error("no output file (use --out or output.path)");
  return run_and_write(config, *path);
}

int cmd_preset(const std::string& name, const std::optional<std::string>& out_path,
               const std::optional<std::uint64_t>& seed, bool print_config) {
  Config config = parse_config(preset_text(name), "preset:" + name);
  if (seed) config.seed = *seed;
  if (print_config) {
    std::cout << config.echo();
    return 0;
  }
  if (!out_path) throw std::runtime_error("preset needs --out FILE");
  return run_and_write(config, *out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalition-structure payoffs and stability for group multiuser detection"};
  app.require_subcommand(1);

  std::size_t players = 0;
  auto* enumerate = app.add_subcommand("enumerate", "List every coalition structure");
  enumerate->add_option("--players", players, "Number of players")
      ->required()
      ->check(CLI::Range(std::size_t{1}, kMaxPlayers));

  std::string config_path;
  std::optional<std::string> out_path;
  auto* stability = app.add_subcommand("stability", "Payoffs, rationality and core at one operating point");
  stability->add_option("--config", config_path, "Config file")->required();
  stability->add_option("--out", out_path, "Also write CSV here");

  auto* sweep = app.add_subcommand("sweep", "Run the configured sweep and write CSV");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--out", out_path, "CSV output (defaults to output.path)");

  std::string preset_name;
  std::optional<std::uint64_t> seed;
  bool print_config = false;
  auto* preset = app.add_subcommand("preset", "Run a built-in figure preset");
  preset->add_option("--name", preset_name, "fig1 .. fig5")->required();
  preset->add_option("--out", out_path, "CSV output");
  preset->add_option("--seed", seed, "Override the preset seed");
  preset->add_flag("--print-config", print_config, "Print the preset config and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) return cmd_enumerate(players);
    if (*stability) return cmd_stability(config_path, out_path);
    if (*sweep) return cmd_sweep(config_path, out_path);
    if (*preset) return cmd_preset(preset_name, out_path, seed, print_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

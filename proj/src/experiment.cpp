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

#include "gmud/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

namespace gmud {

namespace {

void check_distances(std::span<const double> distances) {
  if (distances.empty()) {
    throw std::invalid_argument("layout needs at least one user distance");
  }
  for (double d : distances) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("user distance must be positive, got " +
                                  std::to_string(d));
    }
  }
}

StationPoint evaluate_station(int station_id,
                              std::span<const ReceivedPowers> run_powers,
                              const SystemParams& system,
                              std::span<const CoalitionStructure> filter) {
  StationPoint sp;
  sp.station_id = station_id;
  const std::size_t players = run_powers.front().player_count();
  if (filter.empty()) {
    sp.structures = enumerate_structures(players);
  } else {
    for (const CoalitionStructure& s : filter) {
      if (s.player_count() != players) {
        throw std::invalid_argument(
            "structure " + to_string(s) + " does not match the " +
            std::to_string(players) + " users of station " +
            std::to_string(station_id));
      }
    }
    sp.structures.assign(filter.begin(), filter.end());
  }
  const CoalitionStructure noncoop = CoalitionStructure::singletons(players);

  std::vector<CoalitionTable> tables;
  tables.reserve(run_powers.size());
  for (const ReceivedPowers& powers : run_powers) {
    tables.push_back(CoalitionTable::build(system, powers));
    const StabilityReport report = core(tables.back(), sp.structures);
    RunOutcome run;
    for (const StructureEvaluation& e : report.evaluations) {
      run.payoffs.push_back(e.payoffs);
      run.in_core.push_back(report.in_core(e.structure) ? 1 : 0);
    }
    run.noncoop = tables.back().payoffs(noncoop);
    sp.runs.push_back(std::move(run));
  }

  const CoalitionTable mean_table = CoalitionTable::mean(tables);
  sp.mean_report = core(mean_table, sp.structures);
  const StabilityReport& mean_report = sp.mean_report;
  for (const ReceivedPowers& powers : run_powers) {
    sp.mean_unknown_power += powers.unknown_total;
  }
  sp.mean_unknown_power /= static_cast<double>(run_powers.size());
  sp.mean_noncoop = mean_table.payoffs(noncoop);
  const double noncoop_total = total_payoff(sp.mean_noncoop);
  for (std::size_t k = 0; k < sp.structures.size(); ++k) {
    StructureSummary s;
    s.mean_payoffs = mean_report.evaluations[k].payoffs;
    s.mean_total = total_payoff(s.mean_payoffs);
    s.gain_over_noncoop = s.mean_total - noncoop_total;
    for (std::size_t i = 0; i < players; ++i) {
      s.user_gain.push_back(s.mean_payoffs.sinr[i] - sp.mean_noncoop.sinr[i]);
    }
    std::size_t hits = 0;
    for (const RunOutcome& r : sp.runs) hits += r.in_core[k] ? 1 : 0;
    s.core_frequency =
        static_cast<double>(hits) / static_cast<double>(sp.runs.size());
    s.in_mean_core = mean_report.in_core(sp.structures[k]);
    sp.summary.push_back(std::move(s));
  }
  return sp;
}

SweepPoint evaluate_point(const Scenario& scenario, double value,
                          std::span<const CoalitionStructure> filter) {
  // powers[station][run]
  std::vector<std::vector<ReceivedPowers>> powers(scenario.stations.size());
  for (std::size_t r = 0; r < scenario.mc_runs; ++r) {
    RandomStream rng = RandomStream::for_run(scenario.seed, r);
    std::vector<ReceivedPowers> realized = realize_powers(scenario, rng);
    for (std::size_t s = 0; s < realized.size(); ++s) {
      powers[s].push_back(std::move(realized[s]));
    }
  }
  SweepPoint point;
  point.value = value;
  for (std::size_t s = 0; s < scenario.stations.size(); ++s) {
    point.stations.push_back(evaluate_station(
        scenario.stations[s].id, powers[s], scenario.system, filter));
  }
  return point;
}

}  // namespace

void Scenario::validate() const {
  if (stations.empty()) throw std::invalid_argument("scenario has no stations");
  if (mc_runs == 0) throw std::invalid_argument("mc_runs must be positive");
  fading.validate();
  std::set<int> ids;
  for (const Station& s : stations) {
    if (!ids.insert(s.id).second) {
      throw std::invalid_argument("duplicate station id " + std::to_string(s.id));
    }
  }
  for (const MobileUser& u : users) {
    if (!ids.contains(u.home_station)) {
      throw std::invalid_argument("user assigned to unknown station " +
                                  std::to_string(u.home_station));
    }
    for (const Station& s : stations) {
      if (distance(u.position, s.position) <= 0.0) {
        throw std::invalid_argument("a user is co-located with station " +
                                    std::to_string(s.id));
      }
    }
  }
  for (const Station& s : stations) {
    const std::size_t n = users_of(s.id).size();
    if (n == 0) {
      throw std::invalid_argument("station " + std::to_string(s.id) +
                                  " has no users");
    }
    if (n > kMaxPlayers) {
      throw std::invalid_argument("station " + std::to_string(s.id) + " has " +
                                  std::to_string(n) + " users; at most " +
                                  std::to_string(kMaxPlayers) + " supported");
    }
  }
}

std::vector<std::size_t> Scenario::users_of(int station_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (users[i].home_station == station_id) out.push_back(i);
  }
  return out;
}

std::vector<Position> ring_layout(const Position& center,
                                  std::span<const double> distances) {
  check_distances(distances);
  std::vector<Position> out;
  const double step =
      2.0 * std::numbers::pi / static_cast<double>(distances.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double angle = step * static_cast<double>(i);
    out.push_back(Position{center.x + distances[i] * std::cos(angle),
                           center.y + distances[i] * std::sin(angle)});
  }
  return out;
}

Scenario build_single_bs_scenario(const SingleBsOptions& options) {
  Scenario sc;
  sc.stations.push_back(Station{1, Position{0.0, 0.0}});
  for (const Position& p : ring_layout(Position{}, options.distances)) {
    sc.users.push_back(MobileUser{1, p});
  }
  sc.fading = options.fading;
  sc.system = SystemParams::from_snr_db(options.rho, options.snr_db);
  sc.mc_runs = options.mc_runs;
  sc.seed = options.seed;
  sc.validate();
  return sc;
}

Scenario build_two_bs_scenario(const TwoBsOptions& options) {
  if (!(options.separation > 0.0) || !std::isfinite(options.separation)) {
    throw std::invalid_argument("station separation must be positive");
  }
  Scenario sc;
  sc.stations.push_back(Station{1, Position{0.0, 0.0}});
  sc.stations.push_back(Station{2, Position{options.separation, 0.0}});
  const std::vector<Position> cell = ring_layout(Position{}, options.distances);
  for (const Position& p : cell) sc.users.push_back(MobileUser{1, p});
  for (const Position& p : cell) {
    sc.users.push_back(MobileUser{2, Position{options.separation - p.x, p.y}});
  }
  sc.fading = options.fading;
  sc.system = SystemParams::from_snr_db(options.rho, options.snr_db);
  sc.mc_runs = options.mc_runs;
  sc.seed = options.seed;
  sc.validate();
  return sc;
}

std::vector<ReceivedPowers> realize_powers(const Scenario& scenario,
                                           RandomStream& rng) {
  std::vector<ReceivedPowers> out;
  out.reserve(scenario.stations.size());
  const double tx = scenario.system.tx_power();
  for (const Station& station : scenario.stations) {
    ReceivedPowers powers;
    for (const MobileUser& user : scenario.users) {
      const double received =
          link_gain(user.position, station.position, scenario.fading, rng)
              .gain_sq() *
          tx;
      if (user.home_station == station.id) {
        powers.known.push_back(received);
      } else {
        powers.unknown_total += received;
      }
    }
    powers.validate();
    out.push_back(std::move(powers));
  }
  return out;
}

std::string_view to_string(SweepVariable v) noexcept {
  switch (v) {
    case SweepVariable::snr_db:
      return "snr_db";
    case SweepVariable::sigma_s_db:
      return "sigma_s_db";
    case SweepVariable::mu:
      return "mu";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "snr_db") return SweepVariable::snr_db;
  if (name == "sigma_s_db") return SweepVariable::sigma_s_db;
  if (name == "mu") return SweepVariable::mu;
  throw std::invalid_argument("unknown sweep variable '" + std::string(name) +
                              "' (expected snr_db, sigma_s_db or mu)");
}

SweepSpec SweepSpec::range(SweepVariable variable, double start, double stop,
                           double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) ||
      stop < start) {
    throw std::invalid_argument(
        "sweep range needs finite start <= stop and step > 0");
  }
  SweepSpec spec{variable, {}};
  // Indexed rather than accumulated so grid points carry no drift.
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    spec.values.push_back(start + step * static_cast<double>(i));
  }
  return spec;
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep has no values");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep value not finite");
  }
  if (values.size() > 1) {
    const bool up = values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
        throw std::invalid_argument("sweep values must be strictly monotonic");
      }
    }
  }
}

Scenario with_sweep_value(Scenario scenario, SweepVariable variable,
                          double value) {
  switch (variable) {
    case SweepVariable::snr_db:
      scenario.system = SystemParams::from_snr_db(
          scenario.system.rho(), value, scenario.system.noise_var());
      break;
    case SweepVariable::sigma_s_db:
      scenario.fading.sigma_s_db = value;
      break;
    case SweepVariable::mu:
      scenario.fading.mu = value;
      break;
  }
  scenario.fading.validate();
  return scenario;
}

std::size_t StationPoint::index_of(std::string_view label) const {
  for (std::size_t k = 0; k < structures.size(); ++k) {
    if (to_string(structures[k]) == label) return k;
  }
  throw std::out_of_range("structure " + std::string(label) +
                          " not present in the results");
}

SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      std::span<const CoalitionStructure> structures) {
  scenario.validate();
  spec.validate();

  std::vector<Scenario> scenarios;
  scenarios.reserve(spec.values.size());
  for (double v : spec.values) {
    scenarios.push_back(with_sweep_value(scenario, spec.variable, v));
  }

  SweepResult result;
  result.variable = spec.variable;
  result.seed = scenario.seed;
  result.mc_runs = scenario.mc_runs;
  result.points.resize(spec.values.size());

  // Points are independent; each worker writes only its own slots.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size() && !failed; i = next++) {
      try {
        result.points[i] = evaluate_point(scenarios[i], spec.values[i], structures);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, scenarios.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace gmud

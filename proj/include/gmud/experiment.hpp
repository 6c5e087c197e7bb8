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

#ifndef GMUD_EXPERIMENT_HPP
#define GMUD_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gmud/channel.hpp"
#include "gmud/game.hpp"
#include "gmud/partition.hpp"
#include "gmud/payoff.hpp"

namespace gmud {

struct Station {
  int id = 1;
  Position position;
};

/// A mobile station. Its PlayerId in its home station's game is its rank
/// among that station's users in Scenario::users order.
struct MobileUser {
  int home_station = 1;
  Position position;
};

/// Network layout plus radio and Monte Carlo settings.
///
/// Each station runs its own game over its home users; every other user is
/// an unknown interferer whose received power at the station comes from the
/// same fading model.
struct Scenario {
  std::vector<Station> stations;
  std::vector<MobileUser> users;
  FadingParams fading;
  SystemParams system{0.4, 1.0, 1.0};
  std::size_t mc_runs = 1;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument if a station is empty or unknown, a station
  /// has more than kMaxPlayers users, ids repeat, a user sits on a station,
  /// or mc_runs is zero.
  void validate() const;

  /// Indices into `users` of the station's known users, in PlayerId order.
  std::vector<std::size_t> users_of(int station_id) const;
};

/// Path-loss constant used by the built-in layouts. The unit distance is one
/// meter, so this places the near users' received SNR well above the
/// transmit SNR.
inline constexpr double kDefaultLayoutKDb = 110.0;

struct SingleBsOptions {
  /// MS-to-BS distances; users are spread evenly in angle around the BS.
  std::vector<double> distances{10.0, 12.0, 40.0};
  FadingParams fading{kDefaultLayoutKDb, 3.0, 0.0};
  double rho = 0.4;
  double snr_db = 27.0;
  std::size_t mc_runs = 1;
  std::uint64_t seed = 1;
};

/// One BS at the origin with two near users of comparable distance and one
/// far user by default. Throws std::invalid_argument for a non-positive
/// distance.
Scenario build_single_bs_scenario(const SingleBsOptions& options = {});

struct TwoBsOptions {
  /// In-cell distances, shared by both cells (two near, two far).
  std::vector<double> distances{10.0, 12.0, 40.0, 45.0};
  /// BS2 sits at (separation, 0); its cell mirrors BS1's about x = separation/2.
  double separation = 300.0;
  FadingParams fading{kDefaultLayoutKDb, 3.0, 0.0};
  double rho = 0.4;
  double snr_db = 0.0;
  std::size_t mc_runs = 1;
  std::uint64_t seed = 1;
};

Scenario build_two_bs_scenario(const TwoBsOptions& options = {});

/// Places users at the given distances around `center`, evenly spread in
/// angle starting on the +x axis.
std::vector<Position> ring_layout(const Position& center,
                                  std::span<const double> distances);

/// Received powers at every station (in Scenario::stations order) for one
/// channel realization. Draws one shadowing value per (station, user) link,
/// stations outer, users inner.
std::vector<ReceivedPowers> realize_powers(const Scenario& scenario,
                                           RandomStream& rng);

enum class SweepVariable { snr_db, sigma_s_db, mu };

std::string_view to_string(SweepVariable v) noexcept;
/// Throws std::invalid_argument for an unrecognized name.
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::snr_db;
  std::vector<double> values;

  /// Inclusive grid start, start + step, ... up to stop.
  static SweepSpec range(SweepVariable variable, double start, double stop,
                         double step);
  /// Throws std::invalid_argument if empty or not strictly monotonic.
  void validate() const;
};

/// `scenario` with one swept quantity replaced.
Scenario with_sweep_value(Scenario scenario, SweepVariable variable,
                          double value);

/// Outcome of one Monte Carlo run at one station, aligned with
/// StationPoint::structures.
struct RunOutcome {
  std::vector<PayoffVector> payoffs;
  std::vector<char> in_core;
  PayoffVector noncoop;
};

/// Mean-over-runs statistics for one structure.
struct StructureSummary {
  PayoffVector mean_payoffs;
  double mean_total = 0.0;
  /// Per user: mean payoff minus mean all-singleton payoff.
  std::vector<double> user_gain;
  /// mean_total minus the all-singleton mean total.
  double gain_over_noncoop = 0.0;
  /// Fraction of runs in which the structure is in the core.
  double core_frequency = 0.0;
  /// Core membership in the game whose payoffs are the run means.
  bool in_mean_core = false;
};

struct StationPoint {
  int station_id = 1;
  std::vector<CoalitionStructure> structures;
  std::vector<RunOutcome> runs;
  PayoffVector mean_noncoop;
  std::vector<StructureSummary> summary;
  /// Stability of the mean-payoff game, with blocking witnesses.
  StabilityReport mean_report;
  /// Mean summed received power of unknown users.
  double mean_unknown_power = 0.0;

  /// Index of `label` in `structures`. Throws std::out_of_range if absent.
  std::size_t index_of(std::string_view label) const;
};

struct SweepPoint {
  double value = 0.0;
  std::vector<StationPoint> stations;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::snr_db;
  std::uint64_t seed = 0;
  std::size_t mc_runs = 0;
  std::vector<SweepPoint> points;
};

/// Runs every sweep point and Monte Carlo run. Run r at every point uses the
/// stream RandomStream::for_run(seed, r), so the same shadowing realization
/// is shared across the grid. `structures` restricts which structures are
/// reported (empty means all); deviations always range over every subset.
SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      std::span<const CoalitionStructure> structures = {});

}  // namespace gmud

#endif  // GMUD_EXPERIMENT_HPP

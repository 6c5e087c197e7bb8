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

#ifndef GMUD_GAME_HPP
#define GMUD_GAME_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gmud/partition.hpp"
#include "gmud/payoff.hpp"

namespace gmud {

/// Relative margin a payoff must clear to count as a strict improvement.
inline constexpr double kStrictTolerance = 1e-9;

/// True iff `after` exceeds `before` by more than the relative tolerance.
bool strictly_better(double after, double before) noexcept;

struct StructureEvaluation {
  CoalitionStructure structure;
  PayoffVector payoffs;
  double group_total = 0.0;
  /// Every user does at least as well as under the all-singleton structure.
  bool individually_rational = false;
};

struct DeviationWitness {
  Coalition deviating_set;
  /// Payoff of each member after deviating, in ascending member order.
  std::vector<double> payoff_after;
};

struct StabilityReport {
  std::vector<StructureEvaluation> evaluations;
  std::vector<CoalitionStructure> core_members;
  std::map<CoalitionStructure, DeviationWitness> blocking;

  bool in_core(const CoalitionStructure& s) const;
};

/// The characteristic function of the game: for every non-empty coalition S
/// (by mask), the SINR each member of S obtains when S is jointly detected.
/// A member's SINR depends only on its own block, so this table determines
/// the payoff of every structure and every deviation.
class CoalitionTable {
 public:
  explicit CoalitionTable(std::size_t player_count);

  /// Fills the table from the SINR model; each entry is computed with
  /// deviation_payoffs().
  static CoalitionTable build(const SystemParams& params,
                              const ReceivedPowers& powers);

  /// Entry-wise mean of tables over the same player set.
  static CoalitionTable mean(std::span<const CoalitionTable> tables);

  std::size_t player_count() const noexcept { return player_count_; }

  /// Payoff of `member` when coalition `s` forms.
  double value(const Coalition& s, PlayerId member) const;
  void set(const Coalition& s, PlayerId member, double v);

  PayoffVector payoffs(const CoalitionStructure& structure) const;

 private:
  std::size_t player_count_;
  // values_[mask * player_count_ + i]
  std::vector<double> values_;
};

/// SINR of each member of `deviating_set` (ascending member order) when that
/// set is jointly detected. The result is computed under two arrangements of
/// the remaining users (one block, all singletons); a disagreement throws
/// std::logic_error.
std::vector<double> deviation_payoffs(const SystemParams& params,
                                      const ReceivedPowers& powers,
                                      const Coalition& deviating_set);

/// Evaluates every coalition structure of the known users.
std::vector<StructureEvaluation> evaluate_all(const SystemParams& params,
                                              const ReceivedPowers& powers);
std::vector<StructureEvaluation> evaluate_all(const CoalitionTable& table);

/// Evaluations for a chosen list of structures.
std::vector<StructureEvaluation> evaluate(
    const CoalitionTable& table, std::span<const CoalitionStructure> structures);

/// A witness iff every member of `deviating_set` strictly improves on
/// `candidate_payoffs` by deviating. Throws std::invalid_argument if the set
/// has members outside the known users.
std::optional<DeviationWitness> blocks(const PayoffVector& candidate_payoffs,
                                       const Coalition& deviating_set,
                                       const SystemParams& params,
                                       const ReceivedPowers& powers);

/// The first blocking coalition in subset enumeration order, if any.
std::optional<DeviationWitness> find_blocking(const CoalitionTable& table,
                                              const PayoffVector& candidate);

/// Core membership of every structure by exhaustive deviation search.
StabilityReport core(const SystemParams& params, const ReceivedPowers& powers);
StabilityReport core(const CoalitionTable& table);
/// Core membership restricted to the given candidate structures; deviations
/// still range over every subset.
StabilityReport core(const CoalitionTable& table,
                     std::span<const CoalitionStructure> candidates);

/// Pairwise comparison of evaluated structures.
class DominanceMatrix {
 public:
  DominanceMatrix(std::size_t size, std::vector<char> per_user,
                  std::vector<char> group)
      : size_(size), per_user_(std::move(per_user)), group_(std::move(group)) {}

  std::size_t size() const noexcept { return size_; }
  /// Every user weakly better under a than b, at least one strictly.
  bool dominates(std::size_t a, std::size_t b) const {
    return per_user_.at(a * size_ + b) != 0;
  }
  /// a's group total strictly exceeds b's.
  bool group_exceeds(std::size_t a, std::size_t b) const {
    return group_.at(a * size_ + b) != 0;
  }

 private:
  std::size_t size_;
  std::vector<char> per_user_;
  std::vector<char> group_;
};

/// Throws std::invalid_argument for an empty list or mismatched player sets.
DominanceMatrix dominance_matrix(std::span<const StructureEvaluation> evaluations);

}  // namespace gmud

#endif  // GMUD_GAME_HPP

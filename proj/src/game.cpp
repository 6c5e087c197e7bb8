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

#include "gmud/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gmud {

namespace {

constexpr double kArrangementTolerance = 1e-12;

Coalition::Mask full_mask(std::size_t n) {
  return (Coalition::Mask{1} << n) - 1;
}

void check_members(const Coalition& s, std::size_t player_count) {
  if ((s.mask() & ~full_mask(player_count)) != 0) {
    throw std::invalid_argument(
        "deviating set has members outside the known users");
  }
}

bool improves_all(const std::vector<double>& after,
                  const std::vector<PlayerId>& members,
                  const PayoffVector& before) {
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (!strictly_better(after[k], before[members[k]])) return false;
  }
  return true;
}

std::vector<StructureEvaluation> evaluate_with(
    std::span<const CoalitionStructure> structures, const PayoffVector& baseline,
    auto&& payoffs_of) {
  std::vector<StructureEvaluation> out;
  out.reserve(structures.size());
  for (const CoalitionStructure& s : structures) {
    StructureEvaluation e{s, payoffs_of(s), 0.0, true};
    e.group_total = total_payoff(e.payoffs);
    for (std::size_t i = 0; i < e.payoffs.size(); ++i) {
      if (strictly_better(baseline.sinr[i], e.payoffs.sinr[i])) {
        e.individually_rational = false;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

bool strictly_better(double after, double before) noexcept {
  return after > before + kStrictTolerance * std::abs(before);
}

bool StabilityReport::in_core(const CoalitionStructure& s) const {
  return std::find(core_members.begin(), core_members.end(), s) !=
         core_members.end();
}

CoalitionTable::CoalitionTable(std::size_t player_count)
    : player_count_(player_count) {
  if (player_count == 0 || player_count > kMaxPlayers) {
    throw std::invalid_argument("coalition table needs 1.." +
                                std::to_string(kMaxPlayers) + " players");
  }
  values_.assign((std::size_t{1} << player_count) * player_count, 0.0);
}

CoalitionTable CoalitionTable::build(const SystemParams& params,
                                     const ReceivedPowers& powers) {
  powers.validate();
  CoalitionTable table(powers.player_count());
  const Coalition::Mask full = full_mask(powers.player_count());
  for (Coalition::Mask m = 1; m <= full; ++m) {
    const Coalition s = Coalition::from_mask(m);
    const std::vector<double> v = deviation_payoffs(params, powers, s);
    const std::vector<PlayerId> members = s.members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      table.set(s, members[k], v[k]);
    }
  }
  return table;
}

CoalitionTable CoalitionTable::mean(std::span<const CoalitionTable> tables) {
  if (tables.empty()) {
    throw std::invalid_argument("cannot average an empty list of tables");
  }
  CoalitionTable out(tables.front().player_count());
  for (const CoalitionTable& t : tables) {
    if (t.player_count() != out.player_count()) {
      throw std::invalid_argument("tables cover different player sets");
    }
    for (std::size_t i = 0; i < out.values_.size(); ++i) {
      out.values_[i] += t.values_[i];
    }
  }
  const double n = static_cast<double>(tables.size());
  for (double& v : out.values_) v /= n;
  return out;
}

double CoalitionTable::value(const Coalition& s, PlayerId member) const {
  check_members(s, player_count_);
  if (!s.contains(member)) {
    throw std::invalid_argument("player is not a member of the coalition");
  }
  return values_[s.mask() * player_count_ + member.index];
}

void CoalitionTable::set(const Coalition& s, PlayerId member, double v) {
  check_members(s, player_count_);
  if (!s.contains(member)) {
    throw std::invalid_argument("player is not a member of the coalition");
  }
  values_[s.mask() * player_count_ + member.index] = v;
}

PayoffVector CoalitionTable::payoffs(const CoalitionStructure& structure) const {
  if (structure.player_count() != player_count_) {
    throw std::invalid_argument("structure does not match the table's players");
  }
  PayoffVector out;
  out.sinr.resize(player_count_);
  for (const Coalition& b : structure.blocks()) {
    for (PlayerId p : b.members()) out.sinr[p.index] = value(b, p);
  }
  return out;
}

std::vector<double> deviation_payoffs(const SystemParams& params,
                                      const ReceivedPowers& powers,
                                      const Coalition& deviating_set) {
  const std::size_t n = powers.player_count();
  check_members(deviating_set, n);
  const std::vector<PlayerId> members = deviating_set.members();
  const Coalition::Mask rest = full_mask(n) & ~deviating_set.mask();

  auto arranged = [&](bool rest_as_one_block) {
    std::vector<Coalition> blocks{deviating_set};
    if (rest != 0 && rest_as_one_block) {
      blocks.push_back(Coalition::from_mask(rest));
    } else {
      for (Coalition::Mask m = rest; m != 0; m &= m - 1) {
        blocks.push_back(Coalition::from_mask(m & (~m + 1)));
      }
    }
    const PayoffVector all = payoffs_for_structure(
        params, powers, CoalitionStructure(n, std::move(blocks)));
    std::vector<double> out;
    out.reserve(members.size());
    for (PlayerId p : members) out.push_back(all[p]);
    return out;
  };

  std::vector<double> merged = arranged(true);
  if (rest != 0 && (rest & (rest - 1)) != 0) {
    const std::vector<double> split = arranged(false);
    for (std::size_t k = 0; k < merged.size(); ++k) {
      if (std::abs(merged[k] - split[k]) >
          kArrangementTolerance * std::abs(merged[k])) {
        throw std::logic_error(
            "deviation payoff depends on how non-deviators are arranged");
      }
    }
  }
  return merged;
}

std::vector<StructureEvaluation> evaluate_all(const SystemParams& params,
                                              const ReceivedPowers& powers) {
  powers.validate();
  const std::size_t n = powers.player_count();
  const std::vector<CoalitionStructure> all = enumerate_structures(n);
  const PayoffVector baseline = payoffs_for_structure(
      params, powers, CoalitionStructure::singletons(n));
  return evaluate_with(all, baseline, [&](const CoalitionStructure& s) {
    return payoffs_for_structure(params, powers, s);
  });
}

std::vector<StructureEvaluation> evaluate_all(const CoalitionTable& table) {
  const std::vector<CoalitionStructure> all =
      enumerate_structures(table.player_count());
  return evaluate(table, all);
}

std::vector<StructureEvaluation> evaluate(
    const CoalitionTable& table,
    std::span<const CoalitionStructure> structures) {
  const PayoffVector baseline =
      table.payoffs(CoalitionStructure::singletons(table.player_count()));
  return evaluate_with(structures, baseline, [&](const CoalitionStructure& s) {
    return table.payoffs(s);
  });
}

std::optional<DeviationWitness> blocks(const PayoffVector& candidate_payoffs,
                                       const Coalition& deviating_set,
                                       const SystemParams& params,
                                       const ReceivedPowers& powers) {
  if (candidate_payoffs.size() != powers.player_count()) {
    throw std::invalid_argument("candidate payoffs do not match the known users");
  }
  std::vector<double> after = deviation_payoffs(params, powers, deviating_set);
  if (!improves_all(after, deviating_set.members(), candidate_payoffs)) {
    return std::nullopt;
  }
  return DeviationWitness{deviating_set, std::move(after)};
}

std::optional<DeviationWitness> find_blocking(const CoalitionTable& table,
                                              const PayoffVector& candidate) {
  const std::size_t n = table.player_count();
  if (candidate.size() != n) {
    throw std::invalid_argument("candidate payoffs do not match the table");
  }
  std::vector<double> after;
  for (Coalition::Mask m = 1; m <= full_mask(n); ++m) {
    const Coalition s = Coalition::from_mask(m);
    const std::vector<PlayerId> members = s.members();
    after.clear();
    for (PlayerId p : members) after.push_back(table.value(s, p));
    if (improves_all(after, members, candidate)) {
      return DeviationWitness{s, after};
    }
  }
  return std::nullopt;
}

StabilityReport core(const SystemParams& params, const ReceivedPowers& powers) {
  return core(CoalitionTable::build(params, powers));
}

StabilityReport core(const CoalitionTable& table) {
  const std::vector<CoalitionStructure> all =
      enumerate_structures(table.player_count());
  return core(table, all);
}

StabilityReport core(const CoalitionTable& table,
                     std::span<const CoalitionStructure> candidates) {
  StabilityReport report;
  report.evaluations = evaluate(table, candidates);
  for (const StructureEvaluation& e : report.evaluations) {
    if (auto witness = find_blocking(table, e.payoffs)) {
      report.blocking.emplace(e.structure, std::move(*witness));
    } else {
      report.core_members.push_back(e.structure);
    }
  }
  return report;
}

DominanceMatrix dominance_matrix(
    std::span<const StructureEvaluation> evaluations) {
  if (evaluations.empty()) {
    throw std::invalid_argument("dominance matrix needs at least one evaluation");
  }
  const std::size_t k = evaluations.size();
  const std::size_t players = evaluations.front().payoffs.size();
  for (const StructureEvaluation& e : evaluations) {
    if (e.payoffs.size() != players ||
        e.structure.player_count() != players) {
      throw std::invalid_argument("evaluations cover different player sets");
    }
  }
  std::vector<char> per_user(k * k, 0);
  std::vector<char> group(k * k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const auto& pa = evaluations[a].payoffs.sinr;
      const auto& pb = evaluations[b].payoffs.sinr;
      bool weakly = true;
      bool strictly = false;
      for (std::size_t i = 0; i < players; ++i) {
        if (strictly_better(pb[i], pa[i])) weakly = false;
        if (strictly_better(pa[i], pb[i])) strictly = true;
      }
      per_user[a * k + b] = weakly && strictly;
      group[a * k + b] =
          strictly_better(evaluations[a].group_total, evaluations[b].group_total);
    }
  }
  return DominanceMatrix(k, std::move(per_user), std::move(group));
}

}  // namespace gmud

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "gmud/experiment.hpp"
#include "gmud/game.hpp"
#include "oracle.hpp"

using namespace gmud;

namespace {

std::set<std::string> core_set(const StabilityReport& r) {
  std::set<std::string> out;
  for (const auto& s : r.core_members) out.insert(to_string(s));
  return out;
}

ReceivedPowers symmetric(std::size_t n, double p) {
  return ReceivedPowers{std::vector<double>(n, p), 0.0};
}

struct Draw {
  SystemParams params;
  ReceivedPowers powers;
};

// Log-uniform powers over eight decades so cores of every shape show up.
Draw random_draw(std::mt19937_64& gen, std::size_t players) {
  std::uniform_real_distribution<double> rho(0.0, 0.95);
  std::uniform_real_distribution<double> decade(-3.0, 5.0);
  std::bernoulli_distribution with_unknown(0.4);
  ReceivedPowers p;
  for (std::size_t i = 0; i < players; ++i) {
    p.known.push_back(std::pow(10.0, decade(gen)));
  }
  p.unknown_total = with_unknown(gen) ? std::pow(10.0, decade(gen)) : 0.0;
  return Draw{SystemParams(rho(gen), 1.0, 1.0), p};
}

}  // namespace

TEST_CASE("evaluate_all covers every structure") {
  const SystemParams params(0.4, 1.0, 500.0);
  CHECK(evaluate_all(params, symmetric(3, 500.0)).size() == 5);

  const auto one = evaluate_all(params, symmetric(1, 2.0));
  REQUIRE(one.size() == 1);
  CHECK(one[0].individually_rational);
  CHECK(one[0].group_total == doctest::Approx(2.0));
}

TEST_CASE("group_total is the sum of payoffs and the baseline is rational") {
  const SystemParams params(0.4, 1.0, 1.0);
  const ReceivedPowers powers{{30.0, 20.0, 0.5}, 2.0};
  for (const StructureEvaluation& e : evaluate_all(params, powers)) {
    CHECK(e.group_total == doctest::Approx(total_payoff(e.payoffs)).epsilon(1e-15));
    if (e.structure.is_singletons()) CHECK(e.individually_rational);
  }
}

TEST_CASE("symmetric high-SNR game: grand coalition has the largest total") {
  const SystemParams params(0.4, 1.0, 1.0);
  const ReceivedPowers powers = symmetric(3, 500.0);
  const oracle::Game g{0.4, 1.0, powers.known, 0.0};
  double best = 0.0;
  std::string best_label;
  for (const auto& p : oracle::partitions(3)) {
    const auto v = oracle::payoffs(g, p);
    const double total = v[0] + v[1] + v[2];
    if (total > best) {
      best = total;
      best_label = oracle::label(p);
    }
  }
  CHECK(best_label == "123");
  const auto evals = evaluate_all(params, powers);
  const auto top = std::max_element(
      evals.begin(), evals.end(),
      [](const auto& a, const auto& b) { return a.group_total < b.group_total; });
  CHECK(to_string(top->structure) == "123");
  CHECK(top->group_total == doctest::Approx(best).epsilon(1e-13));
}

TEST_CASE("blocks") {
  const SystemParams params(0.4, 1.0, 1.0);
  const ReceivedPowers powers = symmetric(3, 500.0);
  const auto singles =
      payoffs_for_structure(params, powers, CoalitionStructure::singletons(3));
  const auto grand =
      payoffs_for_structure(params, powers, CoalitionStructure::grand(3));

  // A block deviating to itself cannot strictly improve.
  const auto split = payoffs_for_structure(params, powers, parse_structure("12|3", 3));
  CHECK_FALSE(blocks(split, Coalition::of({0, 1}), params, powers));
  CHECK_FALSE(blocks(split, Coalition::of({2}), params, powers));

  // Cooperation at P/s2 = 500: each user goes from 3.1056 to 385.714.
  const auto w = blocks(singles, Coalition::of({0, 1, 2}), params, powers);
  REQUIRE(w);
  CHECK(w->deviating_set == Coalition::of({0, 1, 2}));
  REQUIRE(w->payoff_after.size() == 3);
  CHECK(singles.sinr[0] == doctest::Approx(3.10559006211180124224).epsilon(1e-13));
  CHECK(w->payoff_after[0] == doctest::Approx(385.714285714285714286).epsilon(1e-13));

  for (const Coalition& s : subsets(player_range(3))) {
    CHECK_FALSE(blocks(grand, s, params, powers));
  }
  CHECK_THROWS_AS(blocks(grand, Coalition::of({3}), params, powers),
                  std::invalid_argument);
}

TEST_CASE("deviation payoff ignores how the rest is arranged") {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 50; ++trial) {
    const Draw d = random_draw(gen, 5);
    for (const Coalition& s : subsets(player_range(5))) {
      const auto v = deviation_payoffs(d.params, d.powers, s);
      const auto members = s.members();
      REQUIRE(v.size() == members.size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        CHECK(v[k] == sinr_decorrelator(d.params, d.powers, s, members[k]));
      }
    }
  }
}

TEST_CASE("core examples") {
  const SystemParams params(0.4, 1.0, 1.0);
  CHECK(core_set(core(params, symmetric(3, 500.0))) ==
        std::set<std::string>{"123"});
  CHECK(core_set(core(params, symmetric(1, 3.0))) == std::set<std::string>{"1"});

  // Two users at 27 dB: pair 420.997 each versus matched filter 6.173.
  const double p27 = std::pow(10.0, 2.7);
  const StabilityReport two = core(params, symmetric(2, p27));
  CHECK(core_set(two) == std::set<std::string>{"12"});
  const auto& witness = two.blocking.at(parse_structure("1|2", 2));
  CHECK(witness.deviating_set == Coalition::of({0, 1}));
  CHECK(witness.payoff_after[0] ==
        doctest::Approx(420.997276246908719401).epsilon(1e-13));
  CHECK(two.evaluations[1].payoffs.sinr[0] ==
        doctest::Approx(6.17302003595445152907).epsilon(1e-13));
}

TEST_CASE("core report invariants") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Draw d = random_draw(gen, 1 + trial % 4);
    const StabilityReport r = core(d.params, d.powers);
    CHECK(r.evaluations.size() == enumerate_structures(d.powers.player_count()).size());
    CHECK(r.core_members.size() + r.blocking.size() == r.evaluations.size());
    for (const StructureEvaluation& e : r.evaluations) {
      if (r.in_core(e.structure)) {
        CHECK(e.individually_rational);
        continue;
      }
      const DeviationWitness& w = r.blocking.at(e.structure);
      const auto members = w.deviating_set.members();
      for (std::size_t k = 0; k < members.size(); ++k) {
        const double before = e.payoffs[members[k]];
        CHECK(w.payoff_after[k] > before * (1.0 + kStrictTolerance));
      }
      // Recorded witness is the first blocking subset in counting order.
      for (Coalition::Mask m = 1; m < w.deviating_set.mask(); ++m) {
        CHECK_FALSE(blocks(e.payoffs, Coalition::from_mask(m), d.params, d.powers));
      }
    }
  }
}

TEST_CASE("core agrees with the naive oracle for up to four players") {
  std::mt19937_64 gen(12);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const Draw d = random_draw(gen, n);
      const oracle::Game g{d.params.rho(), d.params.noise_var(), d.powers.known,
                           d.powers.unknown_total};
      CHECK(core_set(core(d.params, d.powers)) == oracle::core_labels(g));
    }
  }
}

TEST_CASE("core is invariant under relabeling and common scaling") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 60; ++trial) {
    const Draw d = random_draw(gen, 4);
    const StabilityReport base = core(d.params, d.powers);

    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), gen);
    ReceivedPowers permuted = d.powers;
    for (std::size_t i = 0; i < 4; ++i) permuted.known[perm[i]] = d.powers.known[i];
    std::set<std::string> expected;
    for (const auto& s : base.core_members) {
      std::vector<Coalition> blocks;
      for (const Coalition& b : s.blocks()) {
        std::vector<PlayerId> mapped;
        for (PlayerId p : b.members()) mapped.push_back(PlayerId{perm[p.index]});
        blocks.push_back(Coalition::of(mapped));
      }
      expected.insert(to_string(CoalitionStructure(4, std::move(blocks))));
    }
    CHECK(core_set(core(d.params, permuted)) == expected);

    const double scale = 1024.0;  // power of two keeps every ratio exact
    ReceivedPowers scaled = d.powers;
    for (double& p : scaled.known) p *= scale;
    scaled.unknown_total *= scale;
    const SystemParams scaled_params(d.params.rho(), d.params.noise_var() * scale, 1.0);
    const StabilityReport s = core(scaled_params, scaled);
    CHECK(core_set(s) == core_set(base));
    for (std::size_t k = 0; k < s.evaluations.size(); ++k) {
      CHECK(s.evaluations[k].payoffs == base.evaluations[k].payoffs);
    }
  }
}

TEST_CASE("coalition table") {
  const SystemParams params(0.3, 1.0, 1.0);
  const ReceivedPowers a{{4.0, 2.0}, 0.0};
  const ReceivedPowers b{{8.0, 1.0}, 1.0};
  const CoalitionTable ta = CoalitionTable::build(params, a);
  const CoalitionTable tb = CoalitionTable::build(params, b);
  const std::vector<CoalitionTable> both{ta, tb};
  const CoalitionTable m = CoalitionTable::mean(both);
  const Coalition pair = Coalition::of({0, 1});
  CHECK(m.value(pair, PlayerId{1}) ==
        doctest::Approx((ta.value(pair, PlayerId{1}) + tb.value(pair, PlayerId{1})) / 2));
  CHECK(ta.payoffs(CoalitionStructure::grand(2)) ==
        payoffs_for_structure(params, a, CoalitionStructure::grand(2)));
  CHECK_THROWS_AS(ta.value(Coalition::of({0}), PlayerId{1}), std::invalid_argument);
  CHECK_THROWS_AS(ta.value(Coalition::of({2}), PlayerId{2}), std::invalid_argument);
  const std::vector<CoalitionTable> mixed{ta, CoalitionTable(3)};
  CHECK_THROWS_AS(CoalitionTable::mean(mixed), std::invalid_argument);
  CHECK_THROWS_AS(CoalitionTable::mean({}), std::invalid_argument);
}

TEST_CASE("dominance matrix") {
  const auto s3 = enumerate_structures(3);
  auto eval = [](const CoalitionStructure& s, std::vector<double> v) {
    PayoffVector p{std::move(v)};
    const double t = total_payoff(p);
    return StructureEvaluation{s, p, t, true};
  };
  const std::vector<StructureEvaluation> same{eval(s3[0], {1, 1, 1}),
                                              eval(s3[1], {1, 1, 1})};
  const DominanceMatrix ms = dominance_matrix(same);
  CHECK_FALSE(ms.dominates(0, 1));
  CHECK_FALSE(ms.dominates(1, 0));
  CHECK_FALSE(ms.group_exceeds(0, 1));

  const std::vector<StructureEvaluation> ordered{eval(s3[0], {2, 2, 2}),
                                                 eval(s3[4], {1, 1, 1})};
  const DominanceMatrix mo = dominance_matrix(ordered);
  CHECK(mo.dominates(0, 1));
  CHECK(mo.group_exceeds(0, 1));
  CHECK_FALSE(mo.dominates(1, 0));
  CHECK_FALSE(mo.dominates(0, 0));

  const std::vector<StructureEvaluation> mismatched{
      eval(s3[0], {1, 1, 1}), eval(CoalitionStructure::grand(2), {1, 1})};
  CHECK_THROWS_AS(dominance_matrix(mismatched), std::invalid_argument);
  CHECK_THROWS_AS(dominance_matrix({}), std::invalid_argument);
}

TEST_CASE("default single-BS layout at 27 dB: non-cooperation dominates nothing") {
  const Scenario sc = build_single_bs_scenario();
  RandomStream rng = RandomStream::for_run(sc.seed, 0);
  const ReceivedPowers powers = realize_powers(sc, rng).front();
  const auto evals = evaluate_all(sc.system, powers);

  // Same relation recomputed from the oracle payoffs.
  const oracle::Game g{sc.system.rho(), sc.system.noise_var(), powers.known, 0.0};
  const auto parts = oracle::partitions(3);
  const auto alone = oracle::payoffs(g, {{0}, {1}, {2}});
  for (const auto& p : parts) {
    const auto v = oracle::payoffs(g, p);
    bool all_geq = true;
    for (std::size_t i = 0; i < 3; ++i) all_geq &= v[i] >= alone[i] * (1 - 1e-9);
    CHECK(all_geq);
  }

  const DominanceMatrix m = dominance_matrix(evals);
  const std::size_t nc = evals.size() - 1;
  REQUIRE(evals[nc].structure.is_singletons());
  for (std::size_t b = 0; b < evals.size(); ++b) {
    CHECK_FALSE(m.dominates(nc, b));
    CHECK_FALSE(m.group_exceeds(nc, b));
  }
}

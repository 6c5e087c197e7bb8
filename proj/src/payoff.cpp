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

#include "gmud/payoff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gmud {

namespace {

void check_user(const ReceivedPowers& powers, PlayerId user) {
  if (user.index >= powers.known.size()) {
    throw std::invalid_argument("unknown player " +
                                std::to_string(user.index + 1));
  }
}

void check_coalition(const ReceivedPowers& powers, const Coalition& c) {
  const std::size_t n = powers.known.size();
  if (n < 32 && (c.mask() >> n) != 0) {
    throw std::invalid_argument("coalition has members outside the known users");
  }
}

}  // namespace

SystemParams::SystemParams(double rho, double noise_var, double tx_power)
    : rho_(rho), noise_var_(noise_var), tx_power_(tx_power) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("rho must be in [0,1)");
  }
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw std::invalid_argument("noise_var must be positive and finite");
  }
  if (!(tx_power > 0.0) || !std::isfinite(tx_power)) {
    throw std::invalid_argument("tx_power must be positive and finite");
  }
}

SystemParams SystemParams::from_snr_db(double rho, double snr_db,
                                       double noise_var) {
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("snr_db must be finite");
  }
  return SystemParams(rho, noise_var, noise_var * std::pow(10.0, snr_db / 10.0));
}

double SystemParams::snr_db() const {
  return 10.0 * std::log10(tx_power_ / noise_var_);
}

void ReceivedPowers::validate() const {
  if (known.empty()) {
    throw std::invalid_argument("at least one known user is required");
  }
  for (std::size_t i = 0; i < known.size(); ++i) {
    if (!(known[i] > 0.0) || !std::isfinite(known[i])) {
      throw std::invalid_argument("received power of user " +
                                  std::to_string(i + 1) +
                                  " must be positive and finite");
    }
  }
  if (!(unknown_total >= 0.0) || !std::isfinite(unknown_total)) {
    throw std::invalid_argument("unknown_total must be >= 0 and finite");
  }
}

double sinr_decorrelator(const SystemParams& params,
                         const ReceivedPowers& powers,
                         const Coalition& coalition, PlayerId user) {
  check_user(powers, user);
  check_coalition(powers, coalition);
  if (!coalition.contains(user)) {
    throw std::invalid_argument("player " + std::to_string(user.index + 1) +
                                " is not in the coalition");
  }
  const double r = params.rho();
  const double n = static_cast<double>(coalition.size());

  // Summed term by term (not total minus members) so a singleton coalition
  // reproduces the matched-filter sum bit for bit.
  double outside = 0.0;
  for (std::size_t j = 0; j < powers.known.size(); ++j) {
    if (!coalition.contains(PlayerId{j})) outside += powers.known[j];
  }
  outside += powers.unknown_total;

  const double spread = 1.0 + r * (n - 1.0);
  const double noise =
      params.noise_var() / (1.0 - r) * (1.0 + r * (n - 2.0)) / spread;
  const double leak = r / spread;
  return powers.known[user.index] / (noise + leak * leak * outside);
}

double sinr_matched_filter(const SystemParams& params,
                           const ReceivedPowers& powers, PlayerId user) {
  check_user(powers, user);
  const double r = params.rho();
  double interference = 0.0;
  for (std::size_t j = 0; j < powers.known.size(); ++j) {
    if (j != user.index) interference += powers.known[j];
  }
  interference += powers.unknown_total;
  return powers.known[user.index] /
         (r * r * interference + params.noise_var());
}

PayoffVector payoffs_for_structure(const SystemParams& params,
                                   const ReceivedPowers& powers,
                                   const CoalitionStructure& structure) {
  if (structure.player_count() != powers.known.size()) {
    throw std::invalid_argument(
        "structure covers " + std::to_string(structure.player_count()) +
        " players but " + std::to_string(powers.known.size()) +
        " received powers were given");
  }
  PayoffVector out;
  out.sinr.resize(powers.known.size());
  for (const Coalition& block : structure.blocks()) {
    for (PlayerId p : block.members()) {
      out.sinr[p.index] = sinr_decorrelator(params, powers, block, p);
    }
  }
  return out;
}

double total_payoff(const PayoffVector& payoffs, const Coalition& subset) {
  double sum = 0.0;
  for (PlayerId p : subset.members()) {
    if (p.index >= payoffs.sinr.size()) {
      throw std::invalid_argument("player " + std::to_string(p.index + 1) +
                                  " outside the payoff vector");
    }
    sum += payoffs.sinr[p.index];
  }
  return sum;
}

double total_payoff(const PayoffVector& payoffs) {
  double sum = 0.0;
  for (double v : payoffs.sinr) sum += v;
  return sum;
}

}  // namespace gmud

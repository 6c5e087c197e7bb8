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

#ifndef GMUD_PAYOFF_HPP
#define GMUD_PAYOFF_HPP

#include <cstddef>
#include <vector>

#include "gmud/partition.hpp"

namespace gmud {

/// Radio constants shared by every user: common signature cross-correlation
/// rho, noise variance sigma^2 and common transmit power P (both linear).
class SystemParams {
 public:
  /// Throws std::invalid_argument unless 0 <= rho < 1, noise_var > 0 and
  /// tx_power > 0.
  SystemParams(double rho, double noise_var, double tx_power);

  /// Transmit power set from an SNR in dB: P = noise_var * 10^(snr_db / 10).
  static SystemParams from_snr_db(double rho, double snr_db,
                                  double noise_var = 1.0);

  double rho() const noexcept { return rho_; }
  double noise_var() const noexcept { return noise_var_; }
  double tx_power() const noexcept { return tx_power_; }
  double snr_db() const;

 private:
  double rho_;
  double noise_var_;
  double tx_power_;
};

/// Received powers at one base station: one entry per known user (indexed by
/// PlayerId) plus the summed power of all unknown users.
struct ReceivedPowers {
  std::vector<double> known;
  double unknown_total = 0.0;

  std::size_t player_count() const noexcept { return known.size(); }
  /// Throws std::invalid_argument on a non-positive or non-finite entry.
  void validate() const;
};

/// Linear SINR per known user.
struct PayoffVector {
  std::vector<double> sinr;

  std::size_t size() const noexcept { return sinr.size(); }
  double operator[](PlayerId p) const { return sinr.at(p.index); }

  friend bool operator==(const PayoffVector&, const PayoffVector&) = default;
};

/// SINR of `user` after decorrelating group detection of `coalition`:
///
///   P_u / [ s2/(1-r) * (1 + r(n-2)) / (1 + r(n-1))
///           + (r / (1 + r(n-1)))^2 * I ]
///
/// with n = |coalition| and I the total received power from outside the
/// coalition: known non-members plus unknown users. For n = 1 this is the
/// matched-filter SINR.
double sinr_decorrelator(const SystemParams& params,
                         const ReceivedPowers& powers,
                         const Coalition& coalition, PlayerId user);

/// Matched-filter SINR: P_u / (r^2 * sum_{j != u} P_j + r^2 * unknown + s2).
double sinr_matched_filter(const SystemParams& params,
                           const ReceivedPowers& powers, PlayerId user);

/// Per-user SINR when each block of `structure` is jointly detected.
PayoffVector payoffs_for_structure(const SystemParams& params,
                                   const ReceivedPowers& powers,
                                   const CoalitionStructure& structure);

/// Sum of linear SINRs over `subset`.
double total_payoff(const PayoffVector& payoffs, const Coalition& subset);
/// Sum over every user.
double total_payoff(const PayoffVector& payoffs);

}  // namespace gmud

#endif  // GMUD_PAYOFF_HPP

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

#ifndef GMUD_CHANNEL_HPP
#define GMUD_CHANNEL_HPP

#include <cstdint>
#include <random>

namespace gmud {

/// Planar position in a consistent (arbitrary) distance unit.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b) noexcept;

/// Distance-based path loss with log-normal shadowing.
///
///   |h|^2 [dB] = k_db - 10 * mu * log10(d) - shadowing
///
/// where shadowing ~ N(0, sigma_s_db^2). sigma_s_db is a standard deviation
/// in dB.
struct FadingParams {
  double k_db = 0.0;
  double mu = 3.0;
  double sigma_s_db = 0.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Linear channel power gain |h|^2. Always positive and finite.
class ChannelGain {
 public:
  explicit ChannelGain(double gain_sq);
  double gain_sq() const noexcept { return gain_sq_; }

 private:
  double gain_sq_;
};

/// Seedable Gaussian source for shadowing draws.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the standard,
/// and a local Box-Muller transform, so a seed maps to the same draws on
/// every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for one Monte Carlo run, derived from the master
  /// seed and the run index.
  static RandomStream for_run(std::uint64_t master_seed,
                              std::uint64_t run_index);

  double standard_normal();

  static constexpr const char* kAlgorithm =
      "mt19937_64/splitmix64-derive/box-muller";

 private:
  double uniform_open();  // in (0, 1]
  std::mt19937_64 engine_;
};

/// k_db - 10 mu log10(distance) - shadowing_db. Throws std::invalid_argument
/// for distance <= 0.
double path_loss_db(const FadingParams& fading, double distance,
                    double shadowing_db);

/// 10^(db/10). Throws std::invalid_argument if the result is not a positive
/// finite gain.
ChannelGain gain_linear(double db_value);

/// 10 log10(linear).
double to_db(double linear);

/// One shadowing draw with standard deviation sigma_s_db; exactly 0 when
/// sigma_s_db is 0 (the stream still advances).
double draw_shadowing(RandomStream& rng, double sigma_s_db);

/// Channel gain of the MS->BS link with a fresh shadowing draw.
ChannelGain link_gain(const Position& ms, const Position& bs,
                      const FadingParams& fading, RandomStream& rng);

}  // namespace gmud

#endif  // GMUD_CHANNEL_HPP

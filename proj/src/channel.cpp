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

#include "gmud/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gmud {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double distance(const Position& a, const Position& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void FadingParams::validate() const {
  if (!std::isfinite(k_db)) {
    throw std::invalid_argument("k_db must be finite");
  }
  if (!std::isfinite(mu) || mu < 0.0) {
    throw std::invalid_argument("mu must be finite and >= 0");
  }
  if (!std::isfinite(sigma_s_db) || sigma_s_db < 0.0) {
    throw std::invalid_argument("sigma_s_db must be finite and >= 0");
  }
}

ChannelGain::ChannelGain(double gain_sq) : gain_sq_(gain_sq) {
  if (!(gain_sq > 0.0) || !std::isfinite(gain_sq)) {
    throw std::invalid_argument("channel gain must be positive and finite, got " +
                                std::to_string(gain_sq));
  }
}

RandomStream RandomStream::for_run(std::uint64_t master_seed,
                                   std::uint64_t run_index) {
  std::uint64_t state = master_seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (run_index * 0xd1b54a32d192ed03ULL);
  return RandomStream(splitmix64(state));
}

double RandomStream::uniform_open() {
  // 53 random mantissa bits mapped to (0, 1].
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomStream::standard_normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double path_loss_db(const FadingParams& fading, double distance,
                    double shadowing_db) {
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    throw std::invalid_argument("path loss distance must be positive, got " +
                                std::to_string(distance));
  }
  return fading.k_db - 10.0 * fading.mu * std::log10(distance) - shadowing_db;
}

ChannelGain gain_linear(double db_value) {
  if (!std::isfinite(db_value)) {
    throw std::invalid_argument("dB value must be finite");
  }
  return ChannelGain(std::pow(10.0, db_value / 10.0));
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double draw_shadowing(RandomStream& rng, double sigma_s_db) {
  const double z = rng.standard_normal();
  if (sigma_s_db == 0.0) return 0.0;
  return sigma_s_db * z;
}

ChannelGain link_gain(const Position& ms, const Position& bs,
                      const FadingParams& fading, RandomStream& rng) {
  const double d = distance(ms, bs);
  if (!(d > 0.0)) {
    throw std::invalid_argument("mobile and base station are co-located");
  }
  return gain_linear(path_loss_db(fading, d, draw_shadowing(rng, fading.sigma_s_db)));
}

}  // namespace gmud

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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gmud/channel.hpp"

using namespace gmud;

TEST_CASE("path_loss_db") {
  CHECK(path_loss_db(FadingParams{0.0, 2.0, 0.0}, 1.0, 0.0) == 0.0);
  CHECK(path_loss_db(FadingParams{0.0, 2.0, 0.0}, 10.0, 0.0) ==
        doctest::Approx(-20.0).epsilon(1e-15));
  CHECK(path_loss_db(FadingParams{0.0, 3.0, 0.0}, 100.0, 5.0) ==
        doctest::Approx(-65.0).epsilon(1e-15));
  CHECK(path_loss_db(FadingParams{110.0, 3.0, 0.0}, 10.0, 0.0) ==
        doctest::Approx(80.0).epsilon(1e-15));
  CHECK_THROWS_AS(path_loss_db(FadingParams{}, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(path_loss_db(FadingParams{}, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("gain_linear") {
  CHECK(gain_linear(0.0).gain_sq() == 1.0);
  CHECK(gain_linear(-20.0).gain_sq() == doctest::Approx(0.01).epsilon(1e-15));
  // 10^0.3 evaluated to 30 digits independently.
  CHECK(gain_linear(3.0).gain_sq() ==
        doctest::Approx(1.99526231496887960135).epsilon(1e-15));
  CHECK_THROWS_AS(gain_linear(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(ChannelGain(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ChannelGain(-1.0), std::invalid_argument);
}

TEST_CASE("dB round trip") {
  for (double db = -150.0; db <= 150.0; db += 7.3) {
    const double back = to_db(gain_linear(db).gain_sq());
    CHECK(std::abs(back - db) <= 1e-12 * std::max(1.0, std::abs(db)));
  }
}

TEST_CASE("fading parameters are validated") {
  CHECK_NOTHROW(FadingParams{0.0, 0.0, 0.0}.validate());
  CHECK_THROWS_AS((FadingParams{0.0, -0.5, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((FadingParams{0.0, 2.0, -1.0}.validate()), std::invalid_argument);
}

TEST_CASE("draw_shadowing with zero spread is exactly zero") {
  RandomStream rng(7);
  for (int i = 0; i < 1000; ++i) CHECK(draw_shadowing(rng, 0.0) == 0.0);
}

TEST_CASE("draw_shadowing moments") {
  RandomStream rng(2024);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = draw_shadowing(rng, 8.0);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum_sq / n - mean * mean);
  CHECK(std::abs(mean) < 0.1);
  CHECK(std::abs(sd - 8.0) < 0.02 * 8.0);
}

TEST_CASE("random streams are reproducible and independent per run") {
  RandomStream a = RandomStream::for_run(99, 3);
  RandomStream b = RandomStream::for_run(99, 3);
  RandomStream c = RandomStream::for_run(99, 4);
  RandomStream d = RandomStream::for_run(100, 3);
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 16; ++i) {
    const double x = a.standard_normal();
    CHECK(x == b.standard_normal());
    differs_c |= x != c.standard_normal();
    differs_d |= x != d.standard_normal();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("link_gain") {
  RandomStream rng(1);
  const FadingParams f2{0.0, 2.0, 0.0};
  const FadingParams f3{0.0, 3.0, 0.0};
  CHECK(link_gain({1, 0}, {0, 0}, f2, rng).gain_sq() ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(link_gain({0, 10}, {0, 0}, f2, rng).gain_sq() ==
        doctest::Approx(0.01).epsilon(1e-14));
  CHECK(link_gain({3, 4}, {0, 0}, f3, rng).gain_sq() ==
        doctest::Approx(0.008).epsilon(1e-14));
  CHECK_THROWS_AS(link_gain({2, 2}, {2, 2}, f2, rng), std::invalid_argument);
}

TEST_CASE("without shadowing the gain falls strictly with distance") {
  RandomStream rng(5);
  for (double mu : {0.5, 2.0, 3.5, 6.0}) {
    const FadingParams f{30.0, mu, 0.0};
    double previous = INFINITY;
    for (double d = 0.5; d < 500.0; d *= 1.37) {
      const double g = link_gain({d, 0}, {0, 0}, f, rng).gain_sq();
      CHECK(g > 0.0);
      CHECK(g < previous);
      previous = g;
    }
  }
}

TEST_CASE("shadowed gains repeat under the same seed") {
  const FadingParams f{100.0, 3.0, 8.0};
  auto realize = [&](std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<double> out;
    for (int i = 1; i <= 20; ++i) {
      out.push_back(link_gain({10.0 * i, 3.0}, {0, 0}, f, rng).gain_sq());
    }
    return out;
  };
  CHECK(realize(11) == realize(11));
  CHECK(realize(11) != realize(12));
  for (double g : realize(13)) CHECK(g > 0.0);
}

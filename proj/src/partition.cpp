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

#include "gmud/partition.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace gmud {

namespace {

constexpr std::size_t kMaskBits = sizeof(Coalition::Mask) * 8;

void check_player_count(std::size_t n, const char* what) {
  if (n == 0 || n > kMaxPlayers) {
    throw std::invalid_argument(std::string(what) + ": player count " +
                                std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxPlayers) + "]");
  }
}

}  // namespace

Coalition Coalition::of(std::span<const PlayerId> members) {
  if (members.empty()) {
    throw std::invalid_argument("coalition must be non-empty");
  }
  Mask mask = 0;
  for (PlayerId p : members) {
    if (p.index >= kMaskBits) {
      throw std::invalid_argument("player index " + std::to_string(p.index) +
                                  " too large for a coalition");
    }
    const Mask bit = Mask{1} << p.index;
    if (mask & bit) {
      throw std::invalid_argument("duplicate coalition member " +
                                  std::to_string(p.index + 1));
    }
    mask |= bit;
  }
  return Coalition(mask);
}

Coalition Coalition::of(std::initializer_list<std::size_t> indices) {
  std::vector<PlayerId> members;
  members.reserve(indices.size());
  for (std::size_t i : indices) members.push_back(PlayerId{i});
  return of(members);
}

Coalition Coalition::from_mask(Mask mask) {
  if (mask == 0) throw std::invalid_argument("coalition must be non-empty");
  return Coalition(mask);
}

std::size_t Coalition::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(mask_));
}

bool Coalition::contains(PlayerId p) const noexcept {
  return p.index < kMaskBits && ((mask_ >> p.index) & 1U) != 0;
}

PlayerId Coalition::smallest() const noexcept {
  return PlayerId{static_cast<std::size_t>(std::countr_zero(mask_))};
}

std::vector<PlayerId> Coalition::members() const {
  std::vector<PlayerId> out;
  out.reserve(size());
  for (Mask m = mask_; m != 0; m &= m - 1) {
    out.push_back(PlayerId{static_cast<std::size_t>(std::countr_zero(m))});
  }
  return out;
}

std::strong_ordering operator<=>(const Coalition& a,
                                 const Coalition& b) noexcept {
  if (auto c = a.smallest() <=> b.smallest(); c != 0) return c;
  return a.mask_ <=> b.mask_;
}

CoalitionStructure::CoalitionStructure(std::size_t player_count,
                                       std::vector<Coalition> blocks)
    : player_count_(player_count), blocks_(std::move(blocks)) {
  if (player_count_ == 0 || player_count_ > kMaskBits) {
    throw std::invalid_argument("coalition structure needs 1.." +
                                std::to_string(kMaskBits) + " players");
  }
  const Coalition::Mask full =
      player_count_ == kMaskBits ? ~Coalition::Mask{0}
                                 : (Coalition::Mask{1} << player_count_) - 1;
  Coalition::Mask seen = 0;
  for (const Coalition& b : blocks_) {
    if (seen & b.mask()) {
      throw std::invalid_argument("coalition structure blocks overlap");
    }
    seen |= b.mask();
  }
  if (seen != full) {
    throw std::invalid_argument(
        "coalition structure does not cover the player set exactly");
  }
  std::sort(blocks_.begin(), blocks_.end());
}

CoalitionStructure CoalitionStructure::grand(std::size_t player_count) {
  return CoalitionStructure(
      player_count,
      {Coalition::from_mask((Coalition::Mask{1} << player_count) - 1)});
}

CoalitionStructure CoalitionStructure::singletons(std::size_t player_count) {
  std::vector<Coalition> blocks;
  blocks.reserve(player_count);
  for (std::size_t i = 0; i < player_count; ++i) {
    blocks.push_back(Coalition::from_mask(Coalition::Mask{1} << i));
  }
  return CoalitionStructure(player_count, std::move(blocks));
}

const Coalition& CoalitionStructure::block_of(PlayerId p) const {
  for (const Coalition& b : blocks_) {
    if (b.contains(p)) return b;
  }
  throw std::invalid_argument("player " + std::to_string(p.index + 1) +
                              " not in coalition structure");
}

std::string to_string(const Coalition& c, std::size_t player_count) {
  const bool compact = player_count <= 9;
  std::string out;
  for (PlayerId p : c.members()) {
    if (!compact && !out.empty()) out += ',';
    out += std::to_string(p.index + 1);
  }
  return out;
}

std::string to_string(const CoalitionStructure& s) {
  std::string out;
  for (const Coalition& b : s.blocks()) {
    if (!out.empty()) out += '|';
    out += to_string(b, s.player_count());
  }
  return out;
}

CoalitionStructure parse_structure(std::string_view label,
                                   std::size_t player_count) {
  const bool compact = player_count <= 9;
  std::vector<Coalition> blocks;
  std::size_t start = 0;
  while (start <= label.size()) {
    const std::size_t bar = std::min(label.find('|', start), label.size());
    const std::string_view block = label.substr(start, bar - start);
    std::vector<PlayerId> members;
    auto add = [&](std::string_view token) {
      std::size_t value = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size() ||
          value == 0 || value > player_count) {
        throw std::invalid_argument("bad player label '" + std::string(token) +
                                    "' in structure '" + std::string(label) +
                                    "'");
      }
      members.push_back(PlayerId{value - 1});
    };
    if (compact) {
      for (std::size_t i = 0; i < block.size(); ++i) add(block.substr(i, 1));
    } else {
      std::size_t pos = 0;
      while (pos <= block.size()) {
        const std::size_t comma = std::min(block.find(',', pos), block.size());
        add(block.substr(pos, comma - pos));
        pos = comma + 1;
      }
    }
    if (members.empty()) {
      throw std::invalid_argument("empty block in structure '" +
                                  std::string(label) + "'");
    }
    blocks.push_back(Coalition::of(members));
    start = bar + 1;
  }
  return CoalitionStructure(player_count, std::move(blocks));
}

std::vector<CoalitionStructure> enumerate_structures(std::size_t player_count) {
  check_player_count(player_count, "enumerate_structures");
  const std::size_t n = player_count;

  // Restricted growth string: rgs[0] = 0 and rgs[i] <= 1 + max(rgs[0..i-1]).
  // prefix_max[i] caches max(rgs[0..i]).
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);
  std::vector<CoalitionStructure> out;

  while (true) {
    std::vector<Coalition::Mask> masks(prefix_max[n - 1] + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      masks[rgs[i]] |= Coalition::Mask{1} << i;
    }
    std::vector<Coalition> blocks;
    blocks.reserve(masks.size());
    for (Coalition::Mask m : masks) blocks.push_back(Coalition::from_mask(m));
    out.emplace_back(n, std::move(blocks));

    // Advance to the lexicographically next string.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

std::vector<PlayerId> complement(const Coalition& coalition,
                                 std::span<const PlayerId> universe) {
  Coalition::Mask universe_mask = 0;
  for (PlayerId p : universe) {
    if (p.index < kMaskBits) universe_mask |= Coalition::Mask{1} << p.index;
  }
  if ((coalition.mask() & ~universe_mask) != 0) {
    throw std::invalid_argument("coalition has members outside the universe");
  }
  std::vector<PlayerId> out;
  for (PlayerId p : universe) {
    if (!coalition.contains(p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Coalition> subsets(std::span<const PlayerId> players) {
  check_player_count(players.size(), "subsets");
  const std::size_t n = players.size();
  std::vector<Coalition> out;
  out.reserve((std::size_t{1} << n) - 1);
  std::vector<PlayerId> members;
  for (std::size_t bits = 1; bits < (std::size_t{1} << n); ++bits) {
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((bits >> i) & 1U) members.push_back(players[i]);
    }
    out.push_back(Coalition::of(members));
  }
  return out;
}

std::vector<PlayerId> player_range(std::size_t n) {
  std::vector<PlayerId> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].index = i;
  return out;
}

}  // namespace gmud

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

#ifndef GMUD_PARTITION_HPP
#define GMUD_PARTITION_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmud {

/// Largest player set accepted by the exhaustive enumerators (B_12 = 4213597).
inline constexpr std::size_t kMaxPlayers = 12;

/// Zero-based index of a known user within one base station's game.
struct PlayerId {
  std::size_t index = 0;

  friend constexpr auto operator<=>(PlayerId, PlayerId) = default;
};

/// A non-empty set of players, stored as a bit mask over player indices.
///
/// Members are always reported in ascending order, so two coalitions with the
/// same members compare equal regardless of how they were built.
class Coalition {
 public:
  using Mask = std::uint32_t;

  /// Builds a coalition from an unordered member list. Throws
  /// std::invalid_argument on an empty list, a duplicate member or an index
  /// that does not fit in the mask.
  static Coalition of(std::span<const PlayerId> members);
  static Coalition of(std::initializer_list<std::size_t> indices);

  /// Builds a coalition from a non-zero mask.
  static Coalition from_mask(Mask mask);

  Mask mask() const noexcept { return mask_; }
  std::size_t size() const noexcept;
  bool contains(PlayerId p) const noexcept;
  bool is_subset_of(const Coalition& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  PlayerId smallest() const noexcept;
  std::vector<PlayerId> members() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

  /// Orders by smallest member first, then by mask. This is the canonical
  /// block order inside a CoalitionStructure.
  friend std::strong_ordering operator<=>(const Coalition& a,
                                          const Coalition& b) noexcept;

 private:
  explicit Coalition(Mask mask) : mask_(mask) {}
  Mask mask_;
};

/// A partition of players {0, ..., player_count - 1} into disjoint coalitions.
class CoalitionStructure {
 public:
  /// Validates that `blocks` partitions the player set and sorts them into
  /// canonical order. Throws std::invalid_argument otherwise.
  CoalitionStructure(std::size_t player_count, std::vector<Coalition> blocks);

  /// The single-block structure.
  static CoalitionStructure grand(std::size_t player_count);
  /// The all-singleton (non-cooperative) structure.
  static CoalitionStructure singletons(std::size_t player_count);

  std::size_t player_count() const noexcept { return player_count_; }
  const std::vector<Coalition>& blocks() const noexcept { return blocks_; }

  /// The block containing `p`. Throws std::invalid_argument if p is out of
  /// range.
  const Coalition& block_of(PlayerId p) const;

  bool is_grand() const noexcept { return blocks_.size() == 1; }
  bool is_singletons() const noexcept {
    return blocks_.size() == player_count_;
  }

  friend bool operator==(const CoalitionStructure&,
                         const CoalitionStructure&) = default;
  friend auto operator<=>(const CoalitionStructure& a,
                          const CoalitionStructure& b) {
    if (auto c = a.player_count_ <=> b.player_count_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  std::size_t player_count_;
  std::vector<Coalition> blocks_;
};

/// Renders a coalition with 1-based member labels: "12" for up to nine
/// players, "1,2" otherwise.
std::string to_string(const Coalition& c, std::size_t player_count);

/// Renders a structure as blocks joined by '|', e.g. "12|3".
std::string to_string(const CoalitionStructure& s);

/// Parses the rendering produced by to_string. Throws std::invalid_argument
/// on malformed input or if the result is not a partition.
CoalitionStructure parse_structure(std::string_view label,
                                   std::size_t player_count);

/// Every partition of `player_count` players, each exactly once, in
/// restricted-growth-string lexicographic order (grand coalition first,
/// all-singletons last). Requires 1 <= player_count <= kMaxPlayers.
std::vector<CoalitionStructure> enumerate_structures(std::size_t player_count);

/// Members of `universe` not in `coalition`. Throws std::invalid_argument if
/// the coalition has a member outside the universe.
std::vector<PlayerId> complement(const Coalition& coalition,
                                 std::span<const PlayerId> universe);

/// All 2^n - 1 non-empty subsets of `players`, ordered by binary counting
/// over positions in `players` ({1}, {2}, {1,2}, {3}, ...).
std::vector<Coalition> subsets(std::span<const PlayerId> players);

/// The players 0..n-1.
std::vector<PlayerId> player_range(std::size_t n);

}  // namespace gmud

#endif  // GMUD_PARTITION_HPP

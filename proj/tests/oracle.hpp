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

// Test-only reference implementations. Nothing here calls into the library:
// partitions come from recursive insertion, SINRs from the closed forms over
// plain index vectors, and the core from a direct structures x subsets loop.

#ifndef GMUD_TESTS_ORACLE_HPP
#define GMUD_TESTS_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Block = std::vector<int>;      // sorted 0-based members
using Partition = std::vector<Block>;

/// B_{n+1} = sum_k C(n, k) B_k.
inline std::vector<std::uint64_t> bell_numbers(int max_n) {
  std::vector<std::uint64_t> bell{1};
  for (int n = 0; n < max_n; ++n) {
    std::uint64_t next = 0;
    std::uint64_t binom = 1;
    for (int k = 0; k <= n; ++k) {
      next += binom * bell[static_cast<std::size_t>(k)];
      binom = binom * static_cast<std::uint64_t>(n - k) /
              static_cast<std::uint64_t>(k + 1);
    }
    bell.push_back(next);
  }
  return bell;
}

inline void partitions_rec(int next, int n, Partition& current,
                           std::vector<Partition>& out) {
  if (next == n) {
    out.push_back(current);
    return;
  }
  for (std::size_t b = 0; b < current.size(); ++b) {
    current[b].push_back(next);
    partitions_rec(next + 1, n, current, out);
    current[b].pop_back();
  }
  current.push_back({next});
  partitions_rec(next + 1, n, current, out);
  current.pop_back();
}

/// Every partition of {0..n-1}, blocks in order of first element.
inline std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition current;
  partitions_rec(0, n, current, out);
  return out;
}

inline std::string label(const Partition& p) {
  std::string out;
  for (const Block& b : p) {
    if (!out.empty()) out += '|';
    for (int m : b) out += std::to_string(m + 1);
  }
  return out;
}

/// All non-empty subsets of {0..n-1} by recursive include/exclude.
inline void subsets_rec(int i, int n, Block& cur, std::vector<Block>& out) {
  if (i == n) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  subsets_rec(i + 1, n, cur, out);
  cur.push_back(i);
  subsets_rec(i + 1, n, cur, out);
  cur.pop_back();
}

inline std::vector<Block> subsets(int n) {
  std::vector<Block> out;
  Block cur;
  subsets_rec(0, n, cur, out);
  return out;
}

struct Game {
  double rho;
  double noise;
  std::vector<double> power;
  double unknown;
};

inline bool in_block(const Block& b, int i) {
  return std::find(b.begin(), b.end(), i) != b.end();
}

/// Decorrelator SINR of `user` in `group`, written straight from the closed
/// form.
inline double decorrelator(const Game& g, const Block& group, int user) {
  const double n = static_cast<double>(group.size());
  double outside = g.unknown;
  for (int j = 0; j < static_cast<int>(g.power.size()); ++j) {
    if (!in_block(group, j)) outside += g.power[static_cast<std::size_t>(j)];
  }
  const double denom_noise = (g.noise / (1.0 - g.rho)) *
                             ((1.0 + g.rho * (n - 2.0)) /
                              (1.0 + g.rho * (n - 1.0)));
  const double a = g.rho / (1.0 + g.rho * (n - 1.0));
  return g.power[static_cast<std::size_t>(user)] /
         (denom_noise + a * a * outside);
}

inline double matched_filter(const Game& g, int user) {
  double others = g.unknown;
  for (int j = 0; j < static_cast<int>(g.power.size()); ++j) {
    if (j != user) others += g.power[static_cast<std::size_t>(j)];
  }
  return g.power[static_cast<std::size_t>(user)] /
         (g.rho * g.rho * others + g.noise);
}

inline std::vector<double> payoffs(const Game& g, const Partition& p) {
  std::vector<double> out(g.power.size());
  for (const Block& b : p) {
    for (int i : b) {
      out[static_cast<std::size_t>(i)] =
          b.size() == 1 ? matched_filter(g, i) : decorrelator(g, b, i);
    }
  }
  return out;
}

/// Labels of core structures: no subset S whose members all gain more than
/// the relative tolerance by forming S.
inline std::set<std::string> core_labels(const Game& g, double tol = 1e-9) {
  const int n = static_cast<int>(g.power.size());
  std::set<std::string> core;
  const std::vector<Block> subs = subsets(n);
  for (const Partition& p : partitions(n)) {
    const std::vector<double> x = payoffs(g, p);
    bool blocked = false;
    for (const Block& s : subs) {
      bool all = true;
      for (int i : s) {
        const double y = s.size() == 1 ? matched_filter(g, i) : decorrelator(g, s, i);
        const double xi = x[static_cast<std::size_t>(i)];
        if (!(y > xi + tol * xi)) {
          all = false;
          break;
        }
      }
      if (all) {
        blocked = true;
        break;
      }
    }
    if (!blocked) core.insert(label(p));
  }
  return core;
}

}  // namespace oracle

#endif  // GMUD_TESTS_ORACLE_HPP

#pragma once

// Exact minimum set cover over a universe of at most 64 elements.
// Branch and bound: dominated candidates dropped, branching on the element
// with fewest covering candidates, candidates tried by descending fresh
// coverage, popcount bound for pruning.

#include "pqpierce/check.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace pqpierce {

// Indices into `candidates` of a minimum cover of `universe`, or nullopt when
// no cover of size <= upper_bound exists.
inline std::optional<std::vector<int>> min_set_cover(
    std::uint64_t universe, const std::vector<std::uint64_t>& candidates,
    int upper_bound) {
  if (universe == 0) return std::vector<int>{};
  if (upper_bound <= 0) return std::nullopt;

  std::vector<std::pair<std::uint64_t, int>> pool;
  for (int i = 0; i < (int)candidates.size(); ++i)
    if (candidates[i] & universe) pool.emplace_back(candidates[i] & universe, i);
  std::vector<std::pair<std::uint64_t, int>> maximal;
  for (const auto& [m, i] : pool) {
    bool dominated = false;
    for (const auto& [m2, i2] : pool)
      if ((m | m2) == m2 && (m != m2 || i2 < i)) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.emplace_back(m, i);
  }

  std::uint64_t reachable = 0;
  for (const auto& [m, i] : maximal) reachable |= m;
  if ((reachable & universe) != universe) return std::nullopt;

  std::vector<int> chosen;
  std::function<bool(std::uint64_t, int)> dfs = [&](std::uint64_t rem,
                                                    int k) -> bool {
    if (rem == 0) return true;
    if (k == 0) return false;
    int max_cover = 0;
    for (const auto& [m, i] : maximal)
      max_cover = std::max(max_cover, std::popcount(m & rem));
    if (std::popcount(rem) > k * max_cover) return false;
    int pick = -1, pick_cnt = 1 << 30;
    for (int e = 0; e < 64; ++e) {
      if (!((rem >> e) & 1)) continue;
      int cnt = 0;
      for (const auto& [m, i] : maximal) cnt += (int)((m >> e) & 1);
      if (cnt < pick_cnt) {
        pick_cnt = cnt;
        pick = e;
      }
    }
    std::vector<std::pair<int, int>> opts;
    for (int j = 0; j < (int)maximal.size(); ++j)
      if ((maximal[j].first >> pick) & 1)
        opts.emplace_back(-std::popcount(maximal[j].first & rem), j);
    std::sort(opts.begin(), opts.end());
    for (const auto& [neg, j] : opts) {
      chosen.push_back(maximal[j].second);
      if (dfs(rem & ~maximal[j].first, k - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };

  for (int k = 1; k <= upper_bound; ++k) {
    chosen.clear();
    if (dfs(universe, k)) return chosen;
  }
  return std::nullopt;
}

// Max independent set over n < 64 vertices; compat[i] = bitmask of vertices
// that may share a solution with i.
inline int max_independent_set(int n, const std::vector<std::uint64_t>& compat) {
  PQ_CHECK(n < 64 && (int)compat.size() == n,
           "max_independent_set supports fewer than 64 vertices");
  std::unordered_map<std::uint64_t, int> memo;
  std::function<int(std::uint64_t)> best = [&](std::uint64_t mask) -> int {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    const int i = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    const int r = std::max(best(rest), 1 + best(rest & compat[i]));
    memo.emplace(mask, r);
    return r;
  };
  return best(n == 0 ? 0 : (1ull << n) - 1);
}

}  // namespace pqpierce

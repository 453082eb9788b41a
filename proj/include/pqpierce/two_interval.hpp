#pragma once

// Families of "two-interval" sets: at most one closed interval on each of two
// axes. Matching number (max pairwise disjoint subfamily) and exact minimum
// piercing by axis points. The piercing number never exceeds twice the
// matching number for such families; tests and callers assert it.

#include "pqpierce/check.hpp"
#include "pqpierce/rational.hpp"
#include "pqpierce/set_cover.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace pqpierce::two_interval {

struct Interval {
  Rational lo, hi;  // closed, lo <= hi
};

inline bool overlaps(const Interval& a, const Interval& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}
inline bool contains(const Interval& a, const Rational& t) {
  return a.lo <= t && t <= a.hi;
}

struct TwoInterval {
  std::array<std::optional<Interval>, 2> part;
  bool empty() const { return !part[0] && !part[1]; }
};

inline bool disjoint(const TwoInterval& a, const TwoInterval& b) {
  for (int ax : {0, 1})
    if (a.part[ax] && b.part[ax] && overlaps(*a.part[ax], *b.part[ax]))
      return false;
  return true;
}

// Max size of a pairwise disjoint subfamily.
inline int matching_number(const std::vector<TwoInterval>& items) {
  const int n = (int)items.size();
  PQ_CHECK(n < 64, "matching_number supports fewer than 64 items");
  std::vector<std::uint64_t> disj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && disjoint(items[i], items[j])) disj[i] |= 1ull << j;
  return max_independent_set(n, disj);
}

struct AxisPoint {
  int axis;
  Rational t;
};

inline bool pierces(const AxisPoint& p, const TwoInterval& it) {
  return it.part[p.axis] && contains(*it.part[p.axis], p.t);
}

// Exact minimum piercing by axis points. Right endpoints suffice as
// candidates: any piercing point slides right to the nearest right endpoint
// among the intervals containing it without losing coverage.
inline std::vector<AxisPoint> min_piercing_points(
    const std::vector<TwoInterval>& items) {
  const int n = (int)items.size();
  PQ_CHECK(n <= 64, "min_piercing_points supports at most 64 items");
  if (n == 0) return {};
  std::map<std::pair<int, Rational>, std::uint64_t> cover;
  for (const TwoInterval& it : items) {
    PQ_CHECK(!it.empty(), "cannot pierce an item with no intervals");
    for (int ax : {0, 1})
      if (it.part[ax]) cover[{ax, it.part[ax]->hi}] = 0;
  }
  for (auto& [key, mask] : cover)
    for (int i = 0; i < n; ++i)
      if (pierces({key.first, key.second}, items[i])) mask |= 1ull << i;

  std::vector<AxisPoint> pts;
  std::vector<std::uint64_t> masks;
  for (const auto& [key, mask] : cover) {
    pts.push_back({key.first, key.second});
    masks.push_back(mask);
  }
  const std::uint64_t universe = n == 64 ? ~0ull : (1ull << n) - 1;
  const auto sol = min_set_cover(universe, masks, n);
  PQ_CHECK(sol.has_value(), "piercing by right endpoints must exist");
  std::vector<AxisPoint> out;
  for (int idx : *sol) out.push_back(pts[idx]);
  return out;
}

}  // namespace pqpierce::two_interval

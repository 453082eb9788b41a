#pragma once

// Certified piercing oracle for families of convex polygons. Independent of
// the constructive pipeline: used as its fallback and as the reference its
// results are checked against.

#include "pqpierce/instance.hpp"
#include "pqpierce/set_cover.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pqpierce::oracle {

// Candidate point set sufficient for minimum piercing: a nonempty
// intersection of a subfamily is a bounded convex polytope, each of its
// vertices is a polygon vertex or a single-point meet of two boundary edges.
inline std::vector<geom::Pt> candidate_points(const instance::Family& fam) {
  std::vector<geom::Pt> pts;
  for (const auto& s : fam.sets)
    for (const auto& v : s.vs) pts.push_back(v);
  for (int i = 0; i < fam.size(); ++i)
    for (int j = i + 1; j < fam.size(); ++j) {
      if (fam.sets[i].empty() || fam.sets[j].empty()) continue;
      for (const auto& [a, b] : geom::edges(fam.sets[i]))
        for (const auto& [c, d] : geom::edges(fam.sets[j]))
          if (const auto p = geom::segment_intersection_point(a, b, c, d))
            pts.push_back(*p);
    }
  std::sort(pts.begin(), pts.end(), geom::lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline bool verify_piercing(const instance::Family& fam,
                            const std::vector<geom::Pt>& pts) {
  for (const auto& s : fam.sets) {
    bool hit = false;
    for (const auto& p : pts)
      if (geom::point_in(s, p)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// Exact minimum piercing set, or nullopt when more than upper_bound points
// are needed.
inline std::optional<std::vector<geom::Pt>> min_piercing(
    const instance::Family& fam, int upper_bound) {
  const int n = fam.size();
  PQ_CHECK(n < 64, "min_piercing supports fewer than 64 sets");
  if (n == 0) return std::vector<geom::Pt>{};
  const auto cands = candidate_points(fam);
  std::vector<std::uint64_t> masks(cands.size(), 0);
  for (std::size_t c = 0; c < cands.size(); ++c)
    for (int i = 0; i < n; ++i)
      if (geom::point_in(fam.sets[i], cands[c])) masks[c] |= 1ull << i;
  const auto sol = min_set_cover((1ull << n) - 1, masks, upper_bound);
  if (!sol) return std::nullopt;
  std::vector<geom::Pt> pts;
  for (int idx : *sol) pts.push_back(cands[idx]);
  PQ_CHECK(verify_piercing(fam, pts), "oracle produced a non-piercing cover");
  return pts;
}

inline std::optional<std::vector<geom::Pt>> min_piercing_subset(
    const instance::Family& fam, const std::vector<int>& idx,
    int upper_bound) {
  instance::Family sub;
  for (int i : idx) sub.sets.push_back(fam.sets[i]);
  return min_piercing(sub, upper_bound);
}

// Max size of a pairwise disjoint subfamily.
inline int matching_number(const instance::Family& fam) {
  const int n = fam.size();
  PQ_CHECK(n < 64, "matching_number supports fewer than 64 sets");
  std::vector<std::uint64_t> disj(n, 0);
  instance::IntersectionCache cache(fam);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && cache.pair(i, j).empty()) disj[i] |= 1ull << j;
  return max_independent_set(n, disj);
}

}  // namespace pqpierce::oracle

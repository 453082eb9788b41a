#pragma once

// Families of convex polygons: the (4,3) property check with a lex-least
// violating quadruple as witness, seeded generators that always emit
// (4,3) families, and the similarity that normalizes a family into the
// open unit disk.

#include "pqpierce/polygon.hpp"

#include <array>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

namespace pqpierce::instance {

struct Family {
  std::vector<geom::ConvexPolygon> sets;
  int size() const { return (int)sets.size(); }
};

// Memoized pairwise intersection polygons and triple nonemptiness.
// Intersections do not depend on any probe point, so one cache serves a
// whole piercing run.
class IntersectionCache {
 public:
  explicit IntersectionCache(const Family& fam) : fam_(&fam) {}

  const geom::ConvexPolygon& pair(int i, int j) {
    if (i > j) std::swap(i, j);
    auto it = pairs_.find({i, j});
    if (it == pairs_.end())
      it = pairs_
               .emplace(std::pair{i, j},
                        geom::intersect(fam_->sets[i], fam_->sets[j]))
               .first;
    return it->second;
  }

  bool triple_nonempty(int i, int j, int k) {
    std::array<int, 3> t{i, j, k};
    std::sort(t.begin(), t.end());
    auto it = triples_.find(t);
    if (it == triples_.end()) {
      const bool v =
          !geom::intersect(pair(t[0], t[1]), fam_->sets[t[2]]).empty();
      it = triples_.emplace(t, v).first;
    }
    return it->second;
  }

 private:
  const Family* fam_;
  std::map<std::pair<int, int>, geom::ConvexPolygon> pairs_;
  std::map<std::array<int, 3>, bool> triples_;
};

// Every 4 sets must contain 3 with a common point. Returns the lex-least
// violating quadruple, or nullopt when the property holds.
inline std::optional<std::array<int, 4>> check_43(const Family& fam,
                                                  IntersectionCache& cache) {
  const int n = fam.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (cache.triple_nonempty(i, j, k) ||
              cache.triple_nonempty(i, j, l) ||
              cache.triple_nonempty(i, k, l) ||
              cache.triple_nonempty(j, k, l))
            continue;
          return std::array<int, 4>{i, j, k, l};
        }
  return std::nullopt;
}

inline std::optional<std::array<int, 4>> check_43(const Family& fam) {
  IntersectionCache cache(fam);
  return check_43(fam, cache);
}

// Invertible map q = scale * (p - center) used to normalize instances.
struct Similarity {
  Rational scale;
  geom::Pt center;
  geom::Pt apply(const geom::Pt& p) const { return scale * (p - center); }
  geom::Pt invert(const geom::Pt& q) const {
    return center + Rational(1) / scale * q;
  }
};

inline Family apply(const Similarity& sim, const Family& fam) {
  Family out;
  for (const auto& s : fam.sets) {
    geom::ConvexPolygon c;
    for (const auto& v : s.vs) c.vs.push_back(sim.apply(v));
    out.sets.push_back(std::move(c));
  }
  return out;
}

// Similarity placing every vertex within radius 7/8 of the origin, so the
// scaled family sits strictly inside the open unit disk with margin.
inline Similarity disk_normalizer(const Family& fam) {
  PQ_CHECK(fam.size() > 0, "cannot normalize an empty family");
  bool first = true;
  Rational xmin, xmax, ymin, ymax;
  for (const auto& s : fam.sets)
    for (const auto& v : s.vs) {
      if (first || v.x < xmin) xmin = v.x;
      if (first || v.x > xmax) xmax = v.x;
      if (first || v.y < ymin) ymin = v.y;
      if (first || v.y > ymax) ymax = v.y;
      first = false;
    }
  PQ_CHECK(!first, "cannot normalize a family of empty sets");
  const geom::Pt center{(xmin + xmax) / 2, (ymin + ymax) / 2};
  const Rational m = ((xmax - xmin) + (ymax - ymin)) / 2;
  const Rational scale = m == 0 ? Rational(1) : Rational(7, 8) / m;
  const Similarity sim{scale, center};
  for (const auto& s : fam.sets)
    for (const auto& v : s.vs)
      PQ_CHECK(geom::norm2(sim.apply(v)) <= Rational(49, 64),
               "normalized vertex escaped the margin disk");
  return sim;
}

namespace detail {

inline Rational rnd_quarters(std::mt19937_64& rng, long long lo_q,
                             long long hi_q) {
  return rat(lo_q + (long long)(rng() % (unsigned long long)(hi_q - lo_q + 1)),
             4);
}

inline geom::ConvexPolygon inflate(const geom::ConvexPolygon& c,
                                   const Rational& factor,
                                   const geom::Pt& about) {
  geom::ConvexPolygon out;
  for (const auto& v : c.vs) out.vs.push_back(about + factor * (v - about));
  return out;
}

}  // namespace detail

// Anchor-sharing generator: k <= 3 anchor points, each set hulls a nonempty
// anchor subset plus nearby noise. The anchor assignment is repaired until
// every quadruple of sets has one anchor inside at least 3 of them, which
// makes the (4,3) property structural rather than accidental.
inline Family generate_cluster(std::uint64_t seed, int n) {
  PQ_CHECK(n >= 1, "generate_cluster needs n >= 1");
  std::mt19937_64 rng(seed);
  const int k = 1 + (int)(rng() % 3);
  std::vector<geom::Pt> anchors;
  for (int a = 0; a < k; ++a)
    anchors.push_back({detail::rnd_quarters(rng, -200, 200),
                       detail::rnd_quarters(rng, -200, 200)});

  std::vector<std::vector<int>> assigned(n);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < k; ++a)
      if (rng() % 2 == 0) assigned[i].push_back(a);
    if (assigned[i].empty()) assigned[i].push_back((int)(rng() % k));
  }

  auto has = [&](int i, int a) {
    return std::find(assigned[i].begin(), assigned[i].end(), a) !=
           assigned[i].end();
  };
  auto violating = [&]() -> std::optional<std::array<int, 4>> {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
          for (int m = l + 1; m < n; ++m) {
            bool ok = false;
            for (int a = 0; a < k && !ok; ++a) {
              const int cnt = has(i, a) + has(j, a) + has(l, a) + has(m, a);
              ok = cnt >= 3;
            }
            if (!ok) return std::array<int, 4>{i, j, l, m};
          }
    return std::nullopt;
  };
  while (auto q = violating()) {
    int best_a = 0, best_cnt = -1;
    for (int a = 0; a < k; ++a) {
      int cnt = 0;
      for (int idx : *q) cnt += has(idx, a);
      if (cnt > best_cnt) {
        best_cnt = cnt;
        best_a = a;
      }
    }
    for (int idx : *q)
      if (!has(idx, best_a)) {
        assigned[idx].push_back(best_a);
        break;
      }
  }

  Family fam;
  for (int i = 0; i < n; ++i) {
    std::vector<geom::Pt> ps;
    geom::Pt centroid{0, 0};
    for (int a : assigned[i]) {
      ps.push_back(anchors[a]);
      centroid = centroid + anchors[a];
    }
    centroid = Rational(1, (long long)assigned[i].size()) * centroid;
    const int extras = 3 + (int)(rng() % 5);
    for (int e = 0; e < extras; ++e)
      ps.push_back(centroid + geom::Pt{detail::rnd_quarters(rng, -40, 40),
                                       detail::rnd_quarters(rng, -40, 40)});
    fam.sets.push_back(geom::convex_hull(ps));
  }
  PQ_CHECK(!check_43(fam), "cluster generator emitted a non-(4,3) family");
  return fam;
}

// Unstructured generator: random hull polygons, then targeted growth until
// the (4,3) property holds. Growth inflates the most distant pair inside the
// lex-least violating quadruple about their own centroids; sets only grow,
// and the property is monotone under growth, so the loop terminates.
inline Family generate_random_43(std::uint64_t seed, int n, int budget = 1000) {
  PQ_CHECK(n >= 1, "generate_random_43 needs n >= 1");
  std::mt19937_64 rng(seed);
  Family fam;
  for (int i = 0; i < n; ++i) {
    const geom::Pt center{detail::rnd_quarters(rng, -120, 120),
                          detail::rnd_quarters(rng, -120, 120)};
    std::vector<geom::Pt> ps;
    const int m = 3 + (int)(rng() % 6);
    for (int e = 0; e < m; ++e)
      ps.push_back(center + geom::Pt{detail::rnd_quarters(rng, -12, 12),
                                     detail::rnd_quarters(rng, -12, 12)});
    fam.sets.push_back(geom::convex_hull(ps));
  }

  for (int round = 0; round < budget; ++round) {
    const auto q = check_43(fam);
    if (!q) return fam;
    int bi = (*q)[0], bj = (*q)[1];
    Rational best = -1;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const Rational d =
            geom::dist2(fam.sets[(*q)[a]], fam.sets[(*q)[b]]);
        if (d > best) {
          best = d;
          bi = (*q)[a];
          bj = (*q)[b];
        }
      }
    for (int idx : {bi, bj})
      fam.sets[idx] = detail::inflate(fam.sets[idx], rat(9, 8),
                                      geom::vertex_centroid(fam.sets[idx]));
  }
  PQ_CHECK(false, "random (4,3) repair exceeded its budget");
  return fam;
}

}  // namespace pqpierce::instance

#pragma once

// Probe-point machinery over the 3-simplex. A probe x splits the unit circle
// at prefix sums of x into four arcs; the two chords [f0,f2] and [f1,f3]
// (tangent lines when a chord collapses to a boundary point) carve the open
// disk into at most four open regions, one per positive arc. A probe is
// "hard" when every region hosts a witness triple of sets whose pairwise
// intersections lie inside it, "easy" when no region does.

#include "pqpierce/instance.hpp"
#include "pqpierce/polygon.hpp"

#include <array>
#include <optional>
#include <set>

namespace pqpierce::kkm {

using Probe = std::array<Rational, 4>;  // nonnegative, sums to 1

inline Probe barycenter() {
  return {rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
}

struct Region {
  bool is_empty = true;
  // Open sides (strict side of the stored closed halfplane) toward the arc
  // midpoint; meaningful only when !is_empty.
  geom::Halfplane side13, side02;

  geom::RegionRelation relation(const geom::ConvexPolygon& c) const {
    if (is_empty) return geom::RegionRelation::Disjoint;
    return geom::region_relation(c, side13, side02);
  }
  // Clip to the closure of the region (family sets live in the open disk,
  // so the disk factor of the closure never matters).
  geom::ConvexPolygon clip_closure(const geom::ConvexPolygon& c) const {
    if (is_empty) return {};
    return geom::clip(geom::clip(c, side13), side02);
  }
};

struct ChordConfig {
  Probe x;
  geom::Pt f0, f1, f2, f3;   // circle points at prefix sums 0, x1, x1+x2, x1+x2+x3
  geom::Line line02, line13; // chords f0f2 and f1f3, tangents when degenerate
  std::array<Region, 4> regions;
};

namespace detail {

inline geom::Line chord_or_tangent(const geom::Pt& p, const geom::Pt& q) {
  if (p == q) return {p.x, p.y, 1};  // tangent at a unit-circle point
  return geom::line_through(p, q);
}

inline geom::Halfplane open_side_toward(const geom::Line& l,
                                        const geom::Pt& m) {
  const int s = l.side(m);
  PQ_CHECK(s != 0, "arc midpoint lies on a chord line");
  return s > 0 ? geom::halfplane_nonneg(l) : geom::halfplane_nonpos(l);
}

}  // namespace detail

inline ChordConfig make_config(const Probe& x) {
  for (const Rational& xi : x) PQ_CHECK(xi >= 0, "probe coordinate negative");
  PQ_CHECK(x[0] + x[1] + x[2] + x[3] == 1, "probe coordinates must sum to 1");
  ChordConfig cfg;
  cfg.x = x;
  const std::array<Rational, 5> t{0, x[0], x[0] + x[1], x[0] + x[1] + x[2], 1};
  cfg.f0 = geom::circle_param(t[0]);
  cfg.f1 = geom::circle_param(t[1]);
  cfg.f2 = geom::circle_param(t[2]);
  cfg.f3 = geom::circle_param(t[3]);
  cfg.line02 = detail::chord_or_tangent(cfg.f0, cfg.f2);
  cfg.line13 = detail::chord_or_tangent(cfg.f1, cfg.f3);
  for (int i = 0; i < 4; ++i) {
    if (x[i] == 0) continue;
    const geom::Pt m = geom::circle_param((t[i] + t[i + 1]) / 2);
    cfg.regions[i].is_empty = false;
    cfg.regions[i].side13 = detail::open_side_toward(cfg.line13, m);
    cfg.regions[i].side02 = detail::open_side_toward(cfg.line02, m);
  }
  return cfg;
}

// Meeting point of the two chords. Proper probes (all coordinates positive)
// give interleaved circle points, so the chord segments properly cross;
// degenerate probes fall back to the lex-least common point.
inline geom::Pt chord_intersection(const ChordConfig& cfg) {
  const geom::ConvexPolygon c02 = geom::convex_hull({cfg.f0, cfg.f2});
  const geom::ConvexPolygon c13 = geom::convex_hull({cfg.f1, cfg.f3});
  const geom::ConvexPolygon meet = geom::intersect(c02, c13);
  PQ_CHECK(!meet.empty(), "chords of a probe must meet");
  return geom::lex_least_vertex(meet);
}

// Lex-least triple (j,k,l) with a common point whose pairwise intersections
// all lie inside open region i, if any.
inline std::optional<std::array<int, 3>> witness_triple(
    const instance::Family& fam, instance::IntersectionCache& cache,
    const ChordConfig& cfg, int i) {
  if (cfg.regions[i].is_empty) return std::nullopt;
  const int n = fam.size();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        if (!cache.triple_nonempty(j, k, l)) continue;
        if (cfg.regions[i].relation(cache.pair(j, k)) !=
            geom::RegionRelation::ContainedOpen)
          continue;
        if (cfg.regions[i].relation(cache.pair(j, l)) !=
            geom::RegionRelation::ContainedOpen)
          continue;
        if (cfg.regions[i].relation(cache.pair(k, l)) !=
            geom::RegionRelation::ContainedOpen)
          continue;
        return std::array<int, 3>{j, k, l};
      }
  return std::nullopt;
}

struct Evaluation {
  ChordConfig config;
  std::array<std::optional<std::array<int, 3>>, 4> witness;

  int positive_count() const {
    int c = 0;
    for (const auto& w : witness) c += w.has_value();
    return c;
  }
};

inline Evaluation evaluate_probe(const instance::Family& fam,
                                 instance::IntersectionCache& cache,
                                 const Probe& x) {
  Evaluation ev;
  ev.config = make_config(x);
  for (int i = 0; i < 4; ++i)
    ev.witness[i] = witness_triple(fam, cache, ev.config, i);
  return ev;
}

enum class SearchKind { Easy, Hard, Exhausted };

struct SearchResult {
  SearchKind kind = SearchKind::Exhausted;
  std::optional<Evaluation> eval;  // the deciding probe, if any
  int evaluations = 0;
};

// Probe order: barycenter, then dyadic grids of denominator 2, 4, ...,
// 2^(max_depth+1) in lex order, skipping points already visited on a coarser
// grid. A probe with no witness decides Easy, a probe with four decides Hard.
inline SearchResult kkm_search(const instance::Family& fam,
                               instance::IntersectionCache& cache,
                               int max_depth = 3) {
  SearchResult res;
  auto consider = [&](const Probe& x) -> bool {
    Evaluation ev = evaluate_probe(fam, cache, x);
    ++res.evaluations;
    const int pos = ev.positive_count();
    if (pos == 0) {
      res.kind = SearchKind::Easy;
      res.eval = std::move(ev);
      return true;
    }
    if (pos == 4) {
      res.kind = SearchKind::Hard;
      res.eval = std::move(ev);
      return true;
    }
    return false;
  };

  const Probe bary = barycenter();
  if (consider(bary)) return res;
  for (int depth = 0; depth <= max_depth; ++depth) {
    const long long g = 2ll << depth;
    for (long long a = 0; a <= g; ++a)
      for (long long b = 0; a + b <= g; ++b)
        for (long long c = 0; a + b + c <= g; ++c) {
          const long long d = g - a - b - c;
          if (g > 2 && a % 2 == 0 && b % 2 == 0 && c % 2 == 0 && d % 2 == 0)
            continue;  // visited on the coarser grid
          const Probe x{rat(a, g), rat(b, g), rat(c, g), rat(d, g)};
          if (x == bary) continue;
          if (consider(x)) return res;
        }
  }
  res.kind = SearchKind::Exhausted;
  res.eval.reset();
  return res;
}

}  // namespace pqpierce::kkm

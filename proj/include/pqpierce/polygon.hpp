#pragma once

// Convex polygons with exact predicates: hull, halfplane clipping,
// intersection, open/closed membership, supporting lines, distances,
// and the relation of a polygon to an open two-halfplane region.

#include "pqpierce/geometry.hpp"

#include <algorithm>
#include <vector>

namespace pqpierce::geom {

// Vertices in counterclockwise order, strictly convex (no repeated or
// collinear vertices). 0 vertices = empty set, 1 = point, 2 = segment.
struct ConvexPolygon {
  std::vector<Pt> vs;
  bool empty() const { return vs.empty(); }
  bool is_point() const { return vs.size() == 1; }
  bool is_segment() const { return vs.size() == 2; }
};

// Andrew monotone chain with strict turns; collinear inputs collapse to a
// point or a segment spanned by the extreme pair.
inline ConvexPolygon convex_hull(std::vector<Pt> ps) {
  std::sort(ps.begin(), ps.end(), lex_less);
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  if (ps.size() <= 2) return {std::move(ps)};
  auto build = [](auto begin, auto end) {
    std::vector<Pt> h;
    for (auto it = begin; it != end; ++it) {
      while (h.size() >= 2 && orient(h[h.size() - 2], h.back(), *it) <= 0)
        h.pop_back();
      h.push_back(*it);
    }
    h.pop_back();
    return h;
  };
  std::vector<Pt> hull = build(ps.begin(), ps.end());
  std::vector<Pt> upper = build(ps.rbegin(), ps.rend());
  hull.insert(hull.end(), upper.begin(), upper.end());
  if (hull.size() == 2 && hull[0] == hull[1]) hull.pop_back();
  return {std::move(hull)};
}

inline bool point_in(const ConvexPolygon& c, const Pt& p) {
  if (c.empty()) return false;
  if (c.is_point()) return c.vs[0] == p;
  if (c.is_segment()) return point_on_segment(p, c.vs[0], c.vs[1]);
  for (std::size_t i = 0; i < c.vs.size(); ++i)
    if (orient(c.vs[i], c.vs[(i + 1) % c.vs.size()], p) < 0) return false;
  return true;
}

// Planar interior; degenerate polygons have none.
inline bool point_in_open(const ConvexPolygon& c, const Pt& p) {
  if (c.vs.size() < 3) return false;
  for (std::size_t i = 0; i < c.vs.size(); ++i)
    if (orient(c.vs[i], c.vs[(i + 1) % c.vs.size()], p) <= 0) return false;
  return true;
}

inline ConvexPolygon clip(const ConvexPolygon& c, const Halfplane& h) {
  if (c.empty()) return c;
  if (c.is_point()) return h.contains(c.vs[0]) ? c : ConvexPolygon{};
  std::vector<Pt> out;
  for (std::size_t i = 0; i < c.vs.size(); ++i) {
    const Pt& u = c.vs[i];
    const Pt& v = c.vs[(i + 1) % c.vs.size()];
    const Rational fu = h.eval(u), fv = h.eval(v);
    if (fu >= 0) out.push_back(u);
    if ((fu > 0 && fv < 0) || (fu < 0 && fv > 0))
      out.push_back(u + (fu / (fu - fv)) * (v - u));
  }
  return convex_hull(std::move(out));
}

// Closed halfplanes whose intersection is exactly the polygon.
inline std::vector<Halfplane> halfplanes_of(const ConvexPolygon& c) {
  PQ_CHECK(!c.empty(), "halfplanes_of needs a nonempty polygon");
  std::vector<Halfplane> hs;
  if (c.is_point()) {
    const Pt& p = c.vs[0];
    hs.push_back({1, 0, p.x});
    hs.push_back({-1, 0, -p.x});
    hs.push_back({0, 1, p.y});
    hs.push_back({0, -1, -p.y});
  } else if (c.is_segment()) {
    const Pt &a = c.vs[0], &b = c.vs[1];
    const Line l = line_through(a, b);
    hs.push_back(halfplane_nonneg(l));
    hs.push_back(halfplane_nonpos(l));
    const Pt d = b - a;
    hs.push_back({d.x, d.y, dot(d, a)});
    hs.push_back({-d.x, -d.y, -dot(d, b)});
  } else {
    for (std::size_t i = 0; i < c.vs.size(); ++i)
      hs.push_back(halfplane_nonneg(
          line_through(c.vs[i], c.vs[(i + 1) % c.vs.size()])));
  }
  return hs;
}

inline ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty() || b.empty()) return {};
  ConvexPolygon r = a;
  for (const Halfplane& h : halfplanes_of(b)) {
    r = clip(r, h);
    if (r.empty()) break;
  }
  return r;
}

// Boundary edges; a point contributes one zero-length edge.
inline std::vector<std::pair<Pt, Pt>> edges(const ConvexPolygon& c) {
  std::vector<std::pair<Pt, Pt>> es;
  if (c.is_point()) {
    es.emplace_back(c.vs[0], c.vs[0]);
  } else {
    for (std::size_t i = 0; i < c.vs.size(); ++i)
      es.emplace_back(c.vs[i], c.vs[(i + 1) % c.vs.size()]);
  }
  return es;
}

inline Rational point_segment_dist2(const Pt& p, const Pt& a, const Pt& b) {
  if (a == b) return norm2(p - a);
  const Pt d = b - a;
  Rational t = dot(p - a, d) / norm2(d);
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return norm2(p - (a + t * d));
}

// Squared Euclidean distance between two convex polygons (0 if they meet).
inline Rational dist2(const ConvexPolygon& a, const ConvexPolygon& b) {
  PQ_CHECK(!a.empty() && !b.empty(), "dist2 needs nonempty polygons");
  if (!intersect(a, b).empty()) return 0;
  Rational best = -1;
  auto relax = [&](const Rational& d) {
    if (best < 0 || d < best) best = d;
  };
  for (const Pt& p : a.vs)
    for (const auto& [u, v] : edges(b)) relax(point_segment_dist2(p, u, v));
  for (const Pt& p : b.vs)
    for (const auto& [u, v] : edges(a)) relax(point_segment_dist2(p, u, v));
  return best;
}

inline Pt lex_least_vertex(const ConvexPolygon& c) {
  PQ_CHECK(!c.empty(), "lex_least_vertex needs a nonempty polygon");
  return *std::min_element(c.vs.begin(), c.vs.end(), lex_less);
}

inline Pt vertex_centroid(const ConvexPolygon& c) {
  PQ_CHECK(!c.empty(), "vertex_centroid needs a nonempty polygon");
  Pt s{0, 0};
  for (const Pt& v : c.vs) s = s + v;
  return Rational(1, (long long)c.vs.size()) * s;
}

// Supporting halfplane at boundary point p: contains the polygon, boundary
// line passes through p. At a vertex the normal is a positive combination of
// the adjacent edge normals, so only the vertex touches the line.
inline Halfplane supporting_line_at(const ConvexPolygon& c, const Pt& p) {
  PQ_CHECK(!c.empty(), "supporting_line_at needs a nonempty polygon");
  Halfplane h{};
  if (c.is_point()) {
    PQ_CHECK(p == c.vs[0], "supporting_line_at point not on boundary");
    h = Halfplane{0, 1, p.y};
  } else if (c.is_segment()) {
    PQ_CHECK(point_on_segment(p, c.vs[0], c.vs[1]),
             "supporting_line_at point not on boundary");
    h = halfplane_nonneg(line_through(c.vs[0], c.vs[1]));
  } else {
    const std::size_t n = c.vs.size();
    std::size_t vi = n;
    for (std::size_t i = 0; i < n; ++i)
      if (c.vs[i] == p) vi = i;
    if (vi < n) {
      const Pt e1 = c.vs[vi] - c.vs[(vi + n - 1) % n];
      const Pt e2 = c.vs[(vi + 1) % n] - c.vs[vi];
      const Pt d = norm2(e2) * e1 + norm2(e1) * e2;
      const Pt nrm = rot90_ccw(d);
      h = Halfplane{nrm.x, nrm.y, dot(nrm, p)};
    } else {
      std::size_t ei = n;
      for (std::size_t i = 0; i < n; ++i)
        if (point_on_segment(p, c.vs[i], c.vs[(i + 1) % n])) ei = i;
      PQ_CHECK(ei < n, "supporting_line_at point not on boundary");
      h = halfplane_nonneg(line_through(c.vs[ei], c.vs[(ei + 1) % n]));
    }
  }
  for (const Pt& v : c.vs)
    PQ_CHECK(h.contains(v), "supporting_line_at produced a cutting line");
  PQ_CHECK(h.eval(p) == 0, "supporting_line_at line missed the point");
  return h;
}

enum class RegionRelation { Disjoint, Meets, ContainedOpen };

// Relation of a polygon to the OPEN region {h1 > 0} intersect {h2 > 0}.
// Callers guarantee the polygon lies in the open unit disk, so the region's
// implicit open-disk factor never separates.
inline RegionRelation region_relation(const ConvexPolygon& c,
                                      const Halfplane& h1,
                                      const Halfplane& h2) {
  PQ_CHECK(!c.empty(), "region_relation needs a nonempty polygon");
  bool all_strict = true;
  for (const Pt& v : c.vs)
    if (!(h1.contains_strictly(v) && h2.contains_strictly(v))) {
      all_strict = false;
      break;
    }
  if (all_strict) return RegionRelation::ContainedOpen;
  const ConvexPolygon q = clip(clip(c, h1), h2);
  if (q.empty()) return RegionRelation::Disjoint;
  auto on_line = [&](const Halfplane& h) {
    for (const Pt& v : q.vs)
      if (h.eval(v) != 0) return false;
    return true;
  };
  if (on_line(h1) || on_line(h2)) return RegionRelation::Disjoint;
  return RegionRelation::Meets;
}

}  // namespace pqpierce::geom

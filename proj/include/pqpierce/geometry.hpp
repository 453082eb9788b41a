#pragma once

// Exact planar primitives: points, lines, halfplanes, segment predicates,
// and a rational parametrization of the unit circle.

#include "pqpierce/check.hpp"
#include "pqpierce/rational.hpp"

#include <optional>
#include <utility>

namespace pqpierce::geom {

struct Pt {
  Rational x, y;
  bool operator==(const Pt&) const = default;
};

inline bool lex_less(const Pt& a, const Pt& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

inline Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
inline Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
inline Pt operator*(const Rational& s, const Pt& a) { return {s * a.x, s * a.y}; }

inline Rational dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
inline Rational norm2(const Pt& a) { return dot(a, a); }
inline Pt rot90_ccw(const Pt& v) { return {-v.y, v.x}; }
inline Pt midpoint(const Pt& a, const Pt& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

inline Rational orient(const Pt& a, const Pt& b, const Pt& c) {
  return cross(b - a, c - a);
}
inline int orient_sign(const Pt& a, const Pt& b, const Pt& c) {
  return sgn(orient(a, b, c));
}

// a*x + b*y = c with (a, b) != (0, 0). eval(p) > 0 on the left of the
// direction (-b, a)... concretely, line_through(p, q).eval(r) == orient(p, q, r).
struct Line {
  Rational a, b, c;
  Rational eval(const Pt& p) const { return a * p.x + b * p.y - c; }
  int side(const Pt& p) const { return sgn(eval(p)); }
};

inline Line line_through(const Pt& p, const Pt& q) {
  PQ_CHECK(!(p == q), "line_through needs two distinct points");
  const Pt n = rot90_ccw(q - p);
  return {n.x, n.y, dot(n, p)};
}

inline bool parallel(const Line& l, const Line& m) {
  return l.a * m.b - l.b * m.a == 0;
}

inline std::optional<Pt> intersect(const Line& l, const Line& m) {
  const Rational det = l.a * m.b - l.b * m.a;
  if (det == 0) return std::nullopt;
  return Pt{(l.c * m.b - l.b * m.c) / det, (l.a * m.c - l.c * m.a) / det};
}

// Closed halfplane a*x + b*y >= c.
struct Halfplane {
  Rational a, b, c;
  Rational eval(const Pt& p) const { return a * p.x + b * p.y - c; }
  bool contains(const Pt& p) const { return eval(p) >= 0; }
  bool contains_strictly(const Pt& p) const { return eval(p) > 0; }
  Line boundary() const { return {a, b, c}; }
  Halfplane flipped() const { return {-a, -b, -c}; }
};

inline Halfplane halfplane_nonneg(const Line& l) { return {l.a, l.b, l.c}; }
inline Halfplane halfplane_nonpos(const Line& l) { return {-l.a, -l.b, -l.c}; }

// Side of line pq containing w (w must be off the line).
inline Halfplane halfplane_toward(const Pt& p, const Pt& q, const Pt& w) {
  const Line l = line_through(p, q);
  const int s = l.side(w);
  PQ_CHECK(s != 0, "halfplane_toward witness lies on the line");
  return s > 0 ? halfplane_nonneg(l) : halfplane_nonpos(l);
}

inline bool point_on_segment(const Pt& p, const Pt& a, const Pt& b) {
  if (orient(a, b, p) != 0) return false;
  return dot(p - a, b - a) >= 0 && dot(p - b, a - b) >= 0;
}

// Unique intersection point of closed segments [a,b] and [c,d], if any.
// Collinear overlaps yield nullopt; callers treat shared endpoints of
// collinear pairs as already-known vertices.
inline std::optional<Pt> segment_intersection_point(const Pt& a, const Pt& b,
                                                    const Pt& c, const Pt& d) {
  const Rational o1 = orient(c, d, a), o2 = orient(c, d, b);
  const Rational o3 = orient(a, b, c), o4 = orient(a, b, d);
  if (o1 == 0 && o2 == 0) return std::nullopt;
  if (sgn(o1) * sgn(o2) > 0 || sgn(o3) * sgn(o4) > 0) return std::nullopt;
  if (o1 == o2) return std::nullopt;
  const Rational t = o1 / (o1 - o2);
  return a + t * (b - a);
}

inline bool on_unit_circle(const Pt& p) { return norm2(p) == 1; }
inline bool in_open_disk(const Pt& p) { return norm2(p) < 1; }

// Clockwise rational parametrization of the unit circle starting at (1, 0):
// t = 0 -> (1,0), 1/4 -> (0,-1), 1/2 -> (-1,0), 3/4 -> (0,1). Every rational
// t gives a rational point; every rational circle point except (-1,0) comes
// from the tangent-half-angle substitution s = 2t/(1-2t).
inline Pt circle_param(const Rational& t) {
  PQ_CHECK(t >= 0 && t <= 1, "circle_param expects t in [0,1]");
  if (t > Rational(1, 2)) {
    const Pt p = circle_param(1 - t);
    return {p.x, -p.y};
  }
  if (t == Rational(1, 2)) return {-1, 0};
  const Rational s = 2 * t / (1 - 2 * t);
  const Rational d = 1 + s * s;
  return {(1 - s * s) / d, -2 * s / d};
}

inline Rational circle_param_inv(const Pt& p) {
  PQ_CHECK(on_unit_circle(p), "circle_param_inv expects a unit-circle point");
  if (p.y > 0) return 1 - circle_param_inv(Pt{p.x, -p.y});
  if (p == Pt{-1, 0}) return Rational(1, 2);
  const Rational s = -p.y / (1 + p.x);
  return s / (2 * (1 + s));
}

// Disk side of the tangent line at circle point p: p.x*x + p.y*y <= 1.
inline Halfplane tangent_disk_side(const Pt& p) {
  PQ_CHECK(on_unit_circle(p), "tangent_disk_side expects a unit-circle point");
  return {-p.x, -p.y, -1};
}

}  // namespace pqpierce::geom

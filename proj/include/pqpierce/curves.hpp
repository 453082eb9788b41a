#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqpierce/check.hpp"
#include "pqpierce/geometry.hpp"
#include "pqpierce/kkm.hpp"
#include "pqpierce/polygon.hpp"
#include "pqpierce/two_interval.hpp"

// Transversal curves for one region class of a chord configuration.
//
// The rim of a class region runs from a circle anchor along one chord to the
// crossing point c and on along the other chord to a second circle anchor.
// Witness sets are traced on the rim, the traces are ordered, and the order
// is matched against a fixed table of patterns that prescribes two curves
// T1, T2 with the property that every pairwise intersection of class members
// meets T1 or T2. Members then reduce to 2-intervals on (T1, T2).

namespace pqpierce::curves {

// Role view of one region's rim. Rim parameters run over [0,2]: 0 at
// rim_start, 1 at the chord crossing c, 2 at rim_end. line_first contains
// [rim_start, c], line_second contains [c, rim_end]. prev shares the first
// rim leg with the region, next shares the second, opp touches only c.
struct ClassFrame {
  int region = -1;
  bool mirrored = false;
  geom::Pt rim_start, rim_end, c;
  geom::Line line_first, line_second;
  geom::Halfplane first_pos;   // closed side of line_first holding rim_end
  geom::Halfplane second_neg;  // closed side of line_second holding rim_start
  kkm::Region self, prev, next, opp;
};

inline ClassFrame make_frame(const kkm::ChordConfig& cfg, int q) {
  PQ_CHECK(q >= 0 && q < 4, "class index out of range");
  for (const auto& r : cfg.regions)
    PQ_CHECK(!r.is_empty, "class frames need all four regions present");
  const std::array<geom::Pt, 4> f{cfg.f0, cfg.f1, cfg.f2, cfg.f3};
  ClassFrame fr;
  fr.region = q;
  fr.rim_start = f[(q + 1) % 4];
  fr.rim_end = f[q];
  fr.c = kkm::chord_intersection(cfg);
  fr.line_first = q % 2 == 0 ? cfg.line13 : cfg.line02;
  fr.line_second = q % 2 == 0 ? cfg.line02 : cfg.line13;
  PQ_CHECK(fr.line_first.side(fr.rim_start) == 0 &&
               fr.line_second.side(fr.rim_end) == 0 &&
               fr.line_first.side(fr.c) == 0 && fr.line_second.side(fr.c) == 0,
           "rim legs must lie on their chords");
  const int se = fr.line_first.side(fr.rim_end);
  const int ss = fr.line_second.side(fr.rim_start);
  PQ_CHECK(se != 0 && ss != 0, "rim anchor lies on the opposite chord");
  fr.first_pos = se > 0 ? geom::halfplane_nonneg(fr.line_first)
                        : geom::halfplane_nonpos(fr.line_first);
  fr.second_neg = ss > 0 ? geom::halfplane_nonneg(fr.line_second)
                         : geom::halfplane_nonpos(fr.line_second);
  fr.self = cfg.regions[q];
  fr.prev = cfg.regions[(q + 1) % 4];
  fr.next = cfg.regions[(q + 3) % 4];
  fr.opp = cfg.regions[(q + 2) % 4];
  return fr;
}

// Same rim walked from the other anchor. Swapping the role fields is enough;
// all geometry stays in place, so curves built in the flipped frame are
// directly usable.
inline ClassFrame flipped(const ClassFrame& fr) {
  ClassFrame m = fr;
  m.mirrored = !fr.mirrored;
  std::swap(m.rim_start, m.rim_end);
  std::swap(m.line_first, m.line_second);
  std::swap(m.first_pos, m.second_neg);
  std::swap(m.prev, m.next);
  return m;
}

inline geom::Pt rim_point(const ClassFrame& fr, const Rational& t) {
  PQ_CHECK(t >= 0 && t <= 2, "rim parameter out of range");
  if (t <= 1) return fr.rim_start + t * (fr.c - fr.rim_start);
  return fr.c + (t - 1) * (fr.rim_end - fr.c);
}

// Closed trace of a polygon on segment [a,b] as a fraction range, 0 at a.
inline std::optional<two_interval::Interval> segment_trace(
    const geom::ConvexPolygon& c, const geom::Pt& a, const geom::Pt& b) {
  if (a == b)
    return geom::point_in(c, a)
               ? std::make_optional(two_interval::Interval{0, 0})
               : std::nullopt;
  const geom::ConvexPolygon m = geom::intersect(c, geom::convex_hull({a, b}));
  if (m.empty()) return std::nullopt;
  const geom::Pt d = b - a;
  const Rational dd = geom::norm2(d);
  two_interval::Interval out{geom::dot(m.vs[0] - a, d) / dd,
                             geom::dot(m.vs[0] - a, d) / dd};
  for (const geom::Pt& v : m.vs) {
    const Rational t = geom::dot(v - a, d) / dd;
    out.lo = std::min(out.lo, t);
    out.hi = std::max(out.hi, t);
  }
  return out;
}

// One witness set against the rim: component structure and rim traces.
// A shape splits into two pieces exactly when it avoids c and the opposite
// region closure while meeting the closures on both sides; the pieces are
// then the side clips and each traces its own rim leg.
struct WitnessShape {
  bool two_components = false;
  std::optional<two_interval::Interval> whole;          // one component
  std::optional<two_interval::Interval> first, second;  // two components
};

inline WitnessShape analyze_shape(const geom::ConvexPolygon& c,
                                  const ClassFrame& fr) {
  PQ_CHECK(!c.empty(), "cannot analyze an empty shape");
  WitnessShape w;
  const bool has_c = geom::point_in(c, fr.c);
  const bool meets_opp = !fr.opp.clip_closure(c).empty();
  const bool meets_prev = !fr.prev.clip_closure(c).empty();
  const bool meets_next = !fr.next.clip_closure(c).empty();
  auto tr1 = segment_trace(c, fr.rim_start, fr.c);
  auto tr2 = segment_trace(c, fr.c, fr.rim_end);
  if (tr2) {
    tr2->lo += 1;
    tr2->hi += 1;
  }
  w.two_components = !has_c && !meets_opp && meets_prev && meets_next;
  if (w.two_components) {
    PQ_CHECK(tr1 && tr2, "a split shape must trace both rim legs");
    PQ_CHECK(tr1->hi < 1 && tr2->lo > 1,
             "split traces must stay clear of the crossing point");
    w.first = tr1;
    w.second = tr2;
  } else {
    PQ_CHECK(tr1 || tr2, "a witness shape must trace the rim");
    if (tr1 && tr2) {
      PQ_CHECK(has_c, "one component cannot trace both legs without c");
      w.whole = two_interval::Interval{tr1->lo, tr2->hi};
    } else {
      w.whole = tr1 ? tr1 : tr2;
    }
  }
  return w;
}

// Rim trace of one witness piece: owner is the position in the witness
// triple, piece is 0 for a whole trace, 1 and 2 for split pieces.
struct RimInterval {
  int owner = 0;
  int piece = 0;
  Rational lo, hi;
};

// Chain order of all witness traces on the rim. Traces that overlap in more
// than a touching point admit no order and abort the constructive route.
inline std::vector<RimInterval> interval_order(
    const std::array<WitnessShape, 3>& shapes) {
  std::vector<RimInterval> seq;
  for (int i = 0; i < 3; ++i) {
    const WitnessShape& s = shapes[i];
    if (s.two_components) {
      seq.push_back({i, 1, s.first->lo, s.first->hi});
      seq.push_back({i, 2, s.second->lo, s.second->hi});
    } else {
      seq.push_back({i, 0, s.whole->lo, s.whole->hi});
    }
  }
  std::sort(seq.begin(), seq.end(),
            [](const RimInterval& a, const RimInterval& b) {
              return std::tie(a.lo, a.hi, a.owner, a.piece) <
                     std::tie(b.lo, b.hi, b.owner, b.piece);
            });
  for (std::size_t k = 0; k + 1 < seq.size(); ++k)
    PQ_CHECK(seq[k].hi <= seq[k + 1].lo,
             "witness traces overlap on the rim and admit no order");
  return seq;
}

// A transversal: either a full line or a short polyline around the region
// corner. Lines are parametrized by a fixed rational basis, polylines by
// edge index plus fraction.
struct SupportCurve {
  enum class Kind { Line, Path };
  Kind kind = Kind::Line;
  geom::Line line;
  std::vector<geom::Pt> path;  // consecutive vertices distinct
};

inline std::pair<geom::Pt, geom::Pt> line_basis(const geom::Line& l) {
  PQ_CHECK(l.a != 0 || l.b != 0, "line basis needs a proper line");
  const geom::Pt base =
      l.b != 0 ? geom::Pt{0, l.c / l.b} : geom::Pt{l.c / l.a, 0};
  return {base, geom::Pt{-l.b, l.a}};
}

inline SupportCurve line_curve(const geom::Line& l) {
  SupportCurve sc;
  sc.kind = SupportCurve::Kind::Line;
  sc.line = l;
  return sc;
}

// Trace of a convex polygon on a curve as one parameter interval. A trace
// that lands on separated pieces of a polyline is a structural violation.
inline std::optional<two_interval::Interval> trace(
    const SupportCurve& sc, const geom::ConvexPolygon& c) {
  if (c.empty()) return std::nullopt;
  if (sc.kind == SupportCurve::Kind::Line) {
    const geom::ConvexPolygon flat = geom::clip(
        geom::clip(c, geom::halfplane_nonneg(sc.line)),
        geom::halfplane_nonpos(sc.line));
    if (flat.empty()) return std::nullopt;
    const auto [base, dir] = line_basis(sc.line);
    const Rational dd = geom::norm2(dir);
    two_interval::Interval out{geom::dot(flat.vs[0] - base, dir) / dd,
                               geom::dot(flat.vs[0] - base, dir) / dd};
    for (const geom::Pt& v : flat.vs) {
      const Rational t = geom::dot(v - base, dir) / dd;
      out.lo = std::min(out.lo, t);
      out.hi = std::max(out.hi, t);
    }
    return out;
  }
  std::optional<two_interval::Interval> acc;
  for (std::size_t e = 0; e + 1 < sc.path.size(); ++e) {
    const auto part = segment_trace(c, sc.path[e], sc.path[e + 1]);
    if (!part) continue;
    const Rational off{(long long)e};
    const two_interval::Interval cur{off + part->lo, off + part->hi};
    if (!acc) {
      acc = cur;
    } else {
      PQ_CHECK(cur.lo <= acc->hi, "a trace splits on a support path");
      acc->hi = std::max(acc->hi, cur.hi);
    }
  }
  return acc;
}

inline geom::Pt point_at(const SupportCurve& sc, const Rational& t) {
  if (sc.kind == SupportCurve::Kind::Line) {
    const auto [base, dir] = line_basis(sc.line);
    return base + t * dir;
  }
  PQ_CHECK(t >= 0 && t <= Rational((long long)sc.path.size() - 1),
           "path parameter out of range");
  for (std::size_t e = 0; e + 1 < sc.path.size(); ++e) {
    const Rational off{(long long)e};
    if (t <= off + 1)
      return sc.path[e] + (t - off) * (sc.path[e + 1] - sc.path[e]);
  }
  return sc.path.back();
}

namespace detail {

inline bool all_on(const std::vector<const geom::ConvexPolygon*>& pieces,
                   const geom::Line& l) {
  for (const auto* p : pieces)
    for (const geom::Pt& v : p->vs)
      if (l.side(v) != 0) return false;
  return true;
}

inline bool all_in(const std::vector<const geom::ConvexPolygon*>& pieces,
                   const geom::Halfplane& h) {
  for (const auto* p : pieces)
    for (const geom::Pt& v : p->vs)
      if (!h.contains(v)) return false;
  return true;
}

}  // namespace detail

// Supporting line for the whole set at one end of a rim trace. Pieces lying
// on a chord take that chord; a trace ending exactly at c takes the chord it
// leans on; everything else takes a supporting line at the end point.
inline geom::Line support_line(
    const geom::ConvexPolygon& whole,
    const std::vector<const geom::ConvexPolygon*>& pieces,
    const ClassFrame& fr, const Rational& t, bool right_end) {
  if (detail::all_on(pieces, fr.line_first)) return fr.line_first;
  if (detail::all_on(pieces, fr.line_second)) return fr.line_second;
  if (right_end && t == 1 && detail::all_in(pieces, fr.second_neg))
    return fr.line_second;
  if (!right_end && t == 1 && detail::all_in(pieces, fr.first_pos))
    return fr.line_first;
  return geom::supporting_line_at(whole, rim_point(fr, t)).boundary();
}

namespace detail {

// Witness context: shape analysis plus the polygon views the support rules
// inspect. Split shapes expose their two components, one-component shapes
// the clips against the two complement halfplanes of the class region.
struct ShapeCtx {
  const geom::ConvexPolygon* poly = nullptr;
  WitnessShape shape;
  geom::ConvexPolygon first_piece, second_piece;
  std::vector<geom::ConvexPolygon> off_pieces;
};

inline ShapeCtx make_ctx(const geom::ConvexPolygon& c, const ClassFrame& fr) {
  ShapeCtx s;
  s.poly = &c;
  s.shape = analyze_shape(c, fr);
  if (s.shape.two_components) {
    s.first_piece = fr.prev.clip_closure(c);
    s.second_piece = fr.next.clip_closure(c);
    PQ_CHECK(!s.first_piece.empty() && !s.second_piece.empty(),
             "split shape lost a component");
  } else {
    for (const geom::Halfplane& h : {fr.self.side13, fr.self.side02}) {
      geom::ConvexPolygon piece = geom::clip(c, h.flipped());
      if (!piece.empty()) s.off_pieces.push_back(std::move(piece));
    }
    PQ_CHECK(!s.off_pieces.empty(), "witness must leave the class region");
  }
  return s;
}

inline std::vector<const geom::ConvexPolygon*> piece_views(const ShapeCtx& s,
                                                           int piece) {
  if (piece == 1) return {&s.first_piece};
  if (piece == 2) return {&s.second_piece};
  std::vector<const geom::ConvexPolygon*> v;
  for (const geom::ConvexPolygon& p : s.off_pieces) v.push_back(&p);
  return v;
}

inline const two_interval::Interval& piece_interval(const ShapeCtx& s,
                                                    int piece) {
  if (piece == 1) return *s.shape.first;
  if (piece == 2) return *s.shape.second;
  return *s.shape.whole;
}

}  // namespace detail

inline SupportCurve end_support(const ClassFrame& fr,
                                const detail::ShapeCtx& s, int piece,
                                bool right_end) {
  const two_interval::Interval& I = detail::piece_interval(s, piece);
  return line_curve(support_line(*s.poly, detail::piece_views(s, piece), fr,
                                 right_end ? I.hi : I.lo, right_end));
}

// Corner-bypass curve of a split witness: outer piece along the first
// component's right support, bridge over the corner gap, outer piece along
// the second component's left support. Outer ray pieces are cut by the
// adjacent region wedge, by the closed halfspace of the bridge line holding
// both rim anchors, and by a box that contains every family set; pieces of a
// component lying on its chord keep the explicit chord segment instead.
inline SupportCurve split_support(const ClassFrame& fr,
                                  const detail::ShapeCtx& s) {
  PQ_CHECK(s.shape.two_components, "corner bypass needs a split shape");
  const geom::Pt r1 = rim_point(fr, s.shape.first->hi);
  const geom::Pt l2 = rim_point(fr, s.shape.second->lo);
  PQ_CHECK(!(r1 == l2), "split pieces must leave a corner gap");
  const geom::Line bridge = geom::line_through(r1, l2);
  const int ss = bridge.side(fr.rim_start), se = bridge.side(fr.rim_end);
  PQ_CHECK(ss != 0 || se != 0, "bridge line swallows both rim anchors");
  const geom::Halfplane h = (ss > 0 || (ss == 0 && se > 0))
                                ? geom::halfplane_nonneg(bridge)
                                : geom::halfplane_nonpos(bridge);
  PQ_CHECK(h.contains(fr.rim_start) && h.contains(fr.rim_end),
           "rim anchors split by the corner bridge");

  auto outer = [&](const geom::Line& sl, const kkm::Region& wedge,
                   const geom::Pt& anchor) -> geom::Pt {
    geom::ConvexPolygon seg{{{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}};
    seg = geom::clip(seg, wedge.side13);
    seg = geom::clip(seg, wedge.side02);
    seg = geom::clip(seg, h);
    seg = geom::clip(seg, geom::halfplane_nonneg(sl));
    seg = geom::clip(seg, geom::halfplane_nonpos(sl));
    PQ_CHECK(!seg.empty() && seg.vs.size() <= 2,
             "outer support piece must be a segment");
    bool anchored = false;
    geom::Pt far = anchor;
    for (const geom::Pt& v : seg.vs) {
      if (v == anchor)
        anchored = true;
      else
        far = v;
    }
    PQ_CHECK(anchored, "outer support piece must end at its rim anchor");
    return far;
  };

  const geom::Pt e1 =
      detail::all_on({&s.first_piece}, fr.line_first)
          ? fr.rim_start
          : outer(support_line(*s.poly, {&s.first_piece}, fr,
                               s.shape.first->hi, true),
                  fr.prev, r1);
  const geom::Pt e2 =
      detail::all_on({&s.second_piece}, fr.line_second)
          ? fr.rim_end
          : outer(support_line(*s.poly, {&s.second_piece}, fr,
                               s.shape.second->lo, false),
                  fr.next, l2);

  SupportCurve sc;
  sc.kind = SupportCurve::Kind::Path;
  for (const geom::Pt& p : {e1, r1, l2, e2})
    if (sc.path.empty() || !(sc.path.back() == p)) sc.path.push_back(p);
  PQ_CHECK(sc.path.size() >= 2, "corner bypass collapsed to a point");
  for (const geom::Pt& v : sc.path)
    PQ_CHECK(h.contains(v), "corner bypass leaves its bridge halfspace");
  return sc;
}

// The chosen transversal pair with its pattern tag; tags carry an m suffix
// when the match needed the flipped rim orientation.
struct TransversalPlan {
  SupportCurve t1, t2;
  std::string label;
  bool mirrored = false;
};

// Every pairwise intersection of members must meet one of the two curves.
inline bool covers(const SupportCurve& t1, const SupportCurve& t2,
                   const std::vector<geom::ConvexPolygon>& members) {
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const geom::ConvexPolygon p = geom::intersect(members[a], members[b]);
      PQ_CHECK(!p.empty(), "two class sets fail to intersect");
      if (!trace(t1, p) && !trace(t2, p)) return false;
    }
  return true;
}

// Pair invariants of a class: members meet pairwise and each pairwise
// intersection touches at least two of the three witness sets.
inline void check_pair_invariants(
    const std::array<geom::ConvexPolygon, 3>& wit,
    const std::vector<geom::ConvexPolygon>& members) {
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const geom::ConvexPolygon p = geom::intersect(members[a], members[b]);
      PQ_CHECK(!p.empty(), "two class sets fail to intersect");
      int touched = 0;
      for (const geom::ConvexPolygon& w : wit)
        if (!geom::intersect(p, w).empty()) ++touched;
      PQ_CHECK(touched >= 2,
               "a pair intersection meets fewer than two witness sets");
    }
}

namespace detail {

struct CurveSpec {
  enum class Kind { RightSupport, LeftSupport, Bypass, Separator };
  Kind kind;
  int i = 0;  // 1-based label
  int j = 0;  // second label for Separator
};

struct PatternRow {
  const char* key;
  const char* tag;
  CurveSpec t1, t2;
};

// Chooses the first separator candidate whose curve pair covers every
// pairwise member intersection: right support of the earlier split shape's
// first piece, else left support of the later one's second piece.
inline SupportCurve pick_separator(const ClassFrame& fr,
                                   const std::array<ShapeCtx, 3>& ctx,
                                   const std::array<int, 4>& owner,
                                   const CurveSpec& spec,
                                   const SupportCurve& t1,
                                   const std::vector<geom::ConvexPolygon>& members) {
  const ShapeCtx& si = ctx[owner[spec.i]];
  const ShapeCtx& sj = ctx[owner[spec.j]];
  PQ_CHECK(si.shape.two_components && sj.shape.two_components,
           "separator needs two split shapes");
  const SupportCurve c1 = end_support(fr, si, 1, true);
  if (covers(t1, c1, members)) return c1;
  const SupportCurve c2 = end_support(fr, sj, 2, false);
  if (covers(t1, c2, members)) return c2;
  PQ_CHECK(false, "no separator candidate covers every pair intersection");
  return c1;
}

inline SupportCurve build_curve(const ClassFrame& fr,
                                const std::array<ShapeCtx, 3>& ctx,
                                const std::array<int, 4>& owner,
                                const CurveSpec& spec) {
  const ShapeCtx& s = ctx[owner[spec.i]];
  switch (spec.kind) {
    case CurveSpec::Kind::RightSupport:
      return end_support(fr, s, s.shape.two_components ? 1 : 0, true);
    case CurveSpec::Kind::LeftSupport:
      return end_support(fr, s, s.shape.two_components ? 2 : 0, false);
    case CurveSpec::Kind::Bypass:
      return split_support(fr, s);
    default:
      PQ_CHECK(false, "separator curves are built after their partner");
      return {};
  }
}

inline std::optional<TransversalPlan> attempt(
    const ClassFrame& fr, const std::array<geom::ConvexPolygon, 3>& wit,
    const std::vector<geom::ConvexPolygon>& members) {
  const std::array<ShapeCtx, 3> ctx{make_ctx(wit[0], fr), make_ctx(wit[1], fr),
                                    make_ctx(wit[2], fr)};
  const auto seq =
      interval_order({ctx[0].shape, ctx[1].shape, ctx[2].shape});

  // owner[label] = triple position. Whole shapes are labelled before split
  // shapes by rim order; split shapes are labelled by their first pieces.
  std::array<int, 4> owner{-1, -1, -1, -1};
  {
    std::vector<int> wholes, splits_idx;
    for (const RimInterval& ri : seq) {
      if (ri.piece == 0)
        wholes.push_back(ri.owner);
      else if (ri.piece == 1)
        splits_idx.push_back(ri.owner);
    }
    int next_label = 1;
    for (int o : wholes) owner[next_label++] = o;
    for (int o : splits_idx) owner[next_label++] = o;
  }
  std::array<int, 3> label_of{};
  for (int l = 1; l <= 3; ++l) label_of[owner[l]] = l;

  std::string key;
  for (const RimInterval& ri : seq) {
    if (!key.empty()) key += ',';
    key += (char)('0' + label_of[ri.owner]);
    if (ri.piece == 1) key += 'a';
    if (ri.piece == 2) key += 'b';
  }

  using K = CurveSpec::Kind;
  static const std::vector<PatternRow> rows{
      {"1,2,3", "1", {K::RightSupport, 1}, {K::RightSupport, 2}},
      {"1,2,3a,3b", "2.1", {K::RightSupport, 1}, {K::RightSupport, 2}},
      {"1,3a,2,3b", "2.2", {K::Bypass, 3}, {K::RightSupport, 1}},
      {"1,3a,3b,2", "2.3", {K::RightSupport, 1}, {K::LeftSupport, 2}},
      {"3a,1,2,3b", "2.4", {K::Bypass, 3}, {K::RightSupport, 1}},
      {"1,2a,3a,3b,2b", "3.1", {K::RightSupport, 1}, {K::Bypass, 2}},
      {"1,2a,3a,2b,3b", "3.2", {K::RightSupport, 1}, {K::Separator, 2, 3}},
      {"2a,1,3a,3b,2b", "3.3", {K::RightSupport, 1}, {K::Bypass, 2}},
      {"2a,1,3a,2b,3b", "3.4", {K::RightSupport, 1}, {K::Separator, 2, 3}},
      {"2a,3a,1,3b,2b", "3.5", {K::Bypass, 2}, {K::Bypass, 3}},
      {"2a,3a,1,2b,3b", "3.6", {K::Bypass, 2}, {K::Bypass, 3}},
      {"1a,2a,3a,3b,2b,1b", "4.1", {K::Bypass, 1}, {K::Bypass, 2}},
      {"1a,2a,3a,3b,1b,2b", "4.2", {K::Bypass, 1}, {K::Bypass, 2}},
      {"1a,2a,3a,1b,2b,3b", "4.3", {K::Bypass, 2}, {K::Separator, 1, 3}},
      {"1a,2a,3a,2b,3b,1b", "4.4", {K::Bypass, 1}, {K::Separator, 2, 3}},
      {"1a,2a,3a,2b,1b,3b", "4.5", {K::Bypass, 1}, {K::Separator, 2, 3}},
  };
  const PatternRow* row = nullptr;
  for (const PatternRow& r : rows)
    if (key == r.key) {
      row = &r;
      break;
    }
  if (!row) return std::nullopt;

  TransversalPlan plan;
  plan.label = row->tag;
  plan.mirrored = fr.mirrored;
  plan.t1 = build_curve(fr, ctx, owner, row->t1);
  if (row->t2.kind == K::Separator) {
    plan.t2 = pick_separator(fr, ctx, owner, row->t2, plan.t1, members);
  } else {
    plan.t2 = build_curve(fr, ctx, owner, row->t2);
    PQ_CHECK(covers(plan.t1, plan.t2, members),
             "a pair intersection avoids both transversal curves");
  }
  return plan;
}

}  // namespace detail

// Transversal pair for one class: order the witness traces, match the
// pattern table, retry with the flipped rim when the direct order matches
// no row. Structural violations surface as invariant errors.
inline TransversalPlan select_transversals(
    const ClassFrame& fr, const std::array<geom::ConvexPolygon, 3>& wit,
    const std::vector<geom::ConvexPolygon>& members) {
  if (auto plan = detail::attempt(fr, wit, members)) return *plan;
  auto plan = detail::attempt(flipped(fr), wit, members);
  PQ_CHECK(plan.has_value(),
           "rim order matches no documented interval pattern");
  plan->label += "m";
  return *plan;
}

}  // namespace pqpierce::curves

#include "pqpierce/pierce.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pqpierce;
using namespace pqpierce::geom;
using namespace pqpierce::curves;
using namespace pqpierce::two_interval;

namespace {

// Axis-aligned box with corners in sixty-fourths.
ConvexPolygon box64(long long lox, long long loy, long long hix,
                    long long hiy) {
  return convex_hull({{rat(lox, 64), rat(loy, 64)},
                      {rat(hix, 64), rat(loy, 64)},
                      {rat(hix, 64), rat(hiy, 64)},
                      {rat(lox, 64), rat(hiy, 64)}});
}

Pt pt64(long long x, long long y) { return {rat(x, 64), rat(y, 64)}; }

// Quadrilateral hull with vertices in sixty-fourths.
ConvexPolygon quad64(long long ax, long long ay, long long bx, long long by,
                     long long cx, long long cy, long long dx, long long dy) {
  return convex_hull({{rat(ax, 64), rat(ay, 64)},
                      {rat(bx, 64), rat(by, 64)},
                      {rat(cx, 64), rat(cy, 64)},
                      {rat(dx, 64), rat(dy, 64)}});
}

// Diagonal slab s1 <= x - y <= s2 (bounds in sixty-fourths) clipped to a
// large box: a split shape for the first class of the barycentric frame,
// crossing the lower rim leg between y = -s2 and y = -s1 and the right rim
// leg between x = s1 and x = s2.
ConvexPolygon slab64(long long s1, long long s2) {
  return convex_hull({{rat(2), rat(128 - s1, 64)},
                      {rat(s1 - 128, 64), rat(-2)},
                      {rat(s2 - 128, 64), rat(-2)},
                      {rat(2), rat(128 - s2, 64)}});
}

kkm::ChordConfig bary_config() {
  return kkm::make_config(kkm::barycenter());
}

// Family of three witness sets plus members, with a hand-built evaluation at
// the barycentric probe whose class 0 witness triple is the first three sets.
struct Staged {
  instance::Family fam;
  kkm::Evaluation ev;
  std::vector<int> members;
};

Staged stage(std::array<ConvexPolygon, 3> wit,
             std::vector<ConvexPolygon> mem) {
  Staged s;
  for (auto& w : wit) s.fam.sets.push_back(std::move(w));
  for (auto& m : mem) {
    s.members.push_back(s.fam.size());
    s.fam.sets.push_back(std::move(m));
  }
  s.ev.config = bary_config();
  s.ev.witness[0] = std::array<int, 3>{0, 1, 2};
  return s;
}

void check_pierced(const pierce::ClassOutcome& out, const Staged& s) {
  REQUIRE(!out.points.empty());
  CHECK(out.points.size() <= 2);
  for (int i : s.members) {
    bool hit = false;
    for (const Pt& p : out.points) hit = hit || point_in(s.fam.sets[i], p);
    CHECK(hit);
  }
}

bool on_line(const Line& l, const Pt& p, const Pt& q) {
  return l.side(p) == 0 && l.side(q) == 0;
}

}  // namespace

TEST_CASE("class frames of the barycentric probe") {
  const auto cfg = bary_config();
  const ClassFrame fr = make_frame(cfg, 0);

  CHECK(fr.rim_start == Pt{rat(0), rat(-1)});
  CHECK(fr.rim_end == Pt{rat(1), rat(0)});
  CHECK(fr.c == Pt{rat(0), rat(0)});
  CHECK(on_line(fr.line_first, {rat(0), rat(-1)}, {rat(0), rat(5)}));
  CHECK(on_line(fr.line_second, {rat(1), rat(0)}, {rat(-5), rat(0)}));
  CHECK(fr.first_pos.contains({rat(1), rat(0)}));
  CHECK_FALSE(fr.first_pos.contains({rat(-1), rat(0)}));
  CHECK(fr.second_neg.contains({rat(0), rat(-1)}));
  CHECK_FALSE(fr.second_neg.contains({rat(0), rat(1)}));

  const auto r2 = box64(-24, -24, -8, -8), r3 = box64(-24, 8, -8, 24),
             r4 = box64(8, 8, 24, 24), r1 = box64(8, -24, 24, -8);
  CHECK(fr.self.relation(r1) == RegionRelation::ContainedOpen);
  CHECK(fr.prev.relation(r2) == RegionRelation::ContainedOpen);
  CHECK(fr.opp.relation(r3) == RegionRelation::ContainedOpen);
  CHECK(fr.next.relation(r4) == RegionRelation::ContainedOpen);

  CHECK(rim_point(fr, rat(1, 2)) == Pt{rat(0), rat(-1, 2)});
  CHECK(rim_point(fr, rat(1)) == fr.c);
  CHECK(rim_point(fr, rat(3, 2)) == Pt{rat(1, 2), rat(0)});
  CHECK_THROWS_AS(rim_point(fr, rat(3)), invariant_error);

  const ClassFrame fl = flipped(fr);
  CHECK(fl.mirrored);
  CHECK(fl.rim_start == fr.rim_end);
  CHECK(on_line(fl.line_first, {rat(1), rat(0)}, {rat(-5), rat(0)}));
  CHECK(fl.prev.relation(r4) == RegionRelation::ContainedOpen);
  CHECK(fl.next.relation(r2) == RegionRelation::ContainedOpen);

  const ClassFrame fr1 = make_frame(cfg, 1);
  CHECK(fr1.rim_start == Pt{rat(-1), rat(0)});
  CHECK(fr1.rim_end == Pt{rat(0), rat(-1)});
  CHECK(on_line(fr1.line_first, {rat(1), rat(0)}, {rat(-5), rat(0)}));
  CHECK(fr1.self.relation(r2) == RegionRelation::ContainedOpen);
  CHECK(fr1.prev.relation(r3) == RegionRelation::ContainedOpen);
}

TEST_CASE("rim traces of witness shapes") {
  const auto cfg = bary_config();
  const ClassFrame fr = make_frame(cfg, 0);

  SECTION("segment traces") {
    const auto w = box64(-8, -56, 8, -40);
    const auto tr = segment_trace(w, fr.rim_start, fr.c);
    REQUIRE(tr.has_value());
    CHECK(tr->lo == rat(1, 8));
    CHECK(tr->hi == rat(3, 8));
    CHECK_FALSE(segment_trace(w, fr.c, fr.rim_end).has_value());
    const auto pointwise = segment_trace(w, pt64(0, -48), pt64(0, -48));
    REQUIRE(pointwise.has_value());
    CHECK(pointwise->lo == 0);
    CHECK(pointwise->hi == 0);
    CHECK_FALSE(segment_trace(w, pt64(0, 8), pt64(0, 8)).has_value());
  }

  SECTION("one component on a single leg") {
    const auto sh = analyze_shape(box64(-8, -56, 8, -40), fr);
    CHECK_FALSE(sh.two_components);
    REQUIRE(sh.whole.has_value());
    CHECK(sh.whole->lo == rat(1, 8));
    CHECK(sh.whole->hi == rat(3, 8));
  }

  SECTION("one component across the crossing point") {
    const auto sh = analyze_shape(box64(-8, -8, 8, 8), fr);
    CHECK_FALSE(sh.two_components);
    REQUIRE(sh.whole.has_value());
    CHECK(sh.whole->lo == rat(7, 8));
    CHECK(sh.whole->hi == rat(9, 8));
  }

  SECTION("split shape around the corner") {
    const auto sh = analyze_shape(quad64(-8, -48, 8, -48, 56, 0, 40, 0), fr);
    REQUIRE(sh.two_components);
    CHECK(sh.first->lo == rat(1, 4));
    CHECK(sh.first->hi == rat(3, 8));
    CHECK(sh.second->lo == rat(13, 8));
    CHECK(sh.second->hi == rat(15, 8));
  }

  SECTION("a shape off the rim is rejected") {
    CHECK_THROWS_AS(analyze_shape(box64(-40, -40, -24, -24), fr),
                    invariant_error);
  }
}

TEST_CASE("rim interval chains") {
  const auto cfg = bary_config();
  const ClassFrame fr = make_frame(cfg, 0);
  const auto sh1 = analyze_shape(box64(-8, -60, 8, -56), fr);
  const auto sh2 = analyze_shape(box64(-8, -52, 8, -48), fr);
  const auto split = analyze_shape(quad64(-8, -48, 8, -48, 56, 0, 40, 0), fr);

  SECTION("touching traces chain in rim order") {
    const auto seq = interval_order({split, sh2, sh1});
    REQUIRE(seq.size() == 4);
    CHECK(seq[0].owner == 2);
    CHECK(seq[0].piece == 0);
    CHECK(seq[1].owner == 1);
    CHECK(seq[1].piece == 0);
    CHECK(seq[2].owner == 0);
    CHECK(seq[2].piece == 1);
    CHECK(seq[3].owner == 0);
    CHECK(seq[3].piece == 2);
  }

  SECTION("overlapping traces admit no order") {
    const auto nested = analyze_shape(box64(-8, -52, 8, -44), fr);
    CHECK_THROWS_AS(interval_order({sh1, nested, sh2}), invariant_error);
  }
}

TEST_CASE("support line selection") {
  const auto cfg = bary_config();
  const ClassFrame fr = make_frame(cfg, 0);

  SECTION("pieces on a chord keep the chord line") {
    const auto seg = convex_hull({pt64(0, -56), pt64(0, -24)});
    const Line l = support_line(seg, {&seg}, fr, rat(1, 8), true);
    CHECK(on_line(l, {rat(0), rat(2)}, {rat(0), rat(-2)}));
  }

  SECTION("a right end at the crossing on the negative side") {
    const auto w = box64(-24, -24, 0, 0);
    const auto ctx = detail::make_ctx(w, fr);
    REQUIRE(ctx.shape.whole.has_value());
    CHECK(ctx.shape.whole->hi == 1);
    const SupportCurve sc = end_support(fr, ctx, 0, true);
    REQUIRE(sc.kind == SupportCurve::Kind::Line);
    CHECK(on_line(sc.line, {rat(2), rat(0)}, {rat(-2), rat(0)}));
  }

  SECTION("a left end at the crossing on the positive side") {
    const auto w = box64(0, 0, 24, 24);
    const auto ctx = detail::make_ctx(w, fr);
    REQUIRE(ctx.shape.whole.has_value());
    CHECK(ctx.shape.whole->lo == 1);
    const SupportCurve sc = end_support(fr, ctx, 0, false);
    REQUIRE(sc.kind == SupportCurve::Kind::Line);
    CHECK(on_line(sc.line, {rat(0), rat(2)}, {rat(0), rat(-2)}));
  }

  SECTION("generic ends take the supporting line of the whole shape") {
    const auto w = box64(-8, -56, 8, -40);
    const auto ctx = detail::make_ctx(w, fr);
    const SupportCurve sc = end_support(fr, ctx, 0, true);
    REQUIRE(sc.kind == SupportCurve::Kind::Line);
    CHECK(on_line(sc.line, pt64(2, -40), pt64(-2, -40)));
  }
}

TEST_CASE("corner bypass curves") {
  const auto cfg = bary_config();
  const ClassFrame fr = make_frame(cfg, 0);

  SECTION("generic split shape") {
    const auto p = quad64(-8, -48, 8, -48, 56, 0, 40, 0);
    const auto ctx = detail::make_ctx(p, fr);
    const SupportCurve sc = split_support(fr, ctx);
    REQUIRE(sc.kind == SupportCurve::Kind::Path);
    REQUIRE(sc.path.size() == 4);
    CHECK(sc.path[0] == Pt{rat(-19, 8), rat(-3)});
    CHECK(sc.path[1] == pt64(0, -40));
    CHECK(sc.path[2] == pt64(40, 0));
    CHECK(sc.path[3] == Pt{rat(1), rat(0)});

    const auto member = box64(-28, -56, -4, -44);
    const auto tr = trace(sc, member);
    REQUIRE(tr.has_value());
    CHECK(tr->hi <= 1);
    CHECK(point_in(member, point_at(sc, tr->lo)));
    CHECK(point_in(member, point_at(sc, tr->hi)));
  }

  SECTION("slab split shape degenerates to its own line") {
    const auto p = slab64(44, 48);
    const auto ctx = detail::make_ctx(p, fr);
    const SupportCurve sc = split_support(fr, ctx);
    REQUIRE(sc.kind == SupportCurve::Kind::Path);
    REQUIRE(sc.path.size() == 4);
    CHECK(sc.path[1] == pt64(0, -44));
    CHECK(sc.path[2] == pt64(44, 0));
  }

  SECTION("pieces on the chords keep explicit rim segments") {
    const auto p = quad64(0, -52, 0, -48, 24, 0, 28, 0);
    const auto ctx = detail::make_ctx(p, fr);
    const SupportCurve sc = split_support(fr, ctx);
    REQUIRE(sc.path.size() == 4);
    CHECK(sc.path[0] == Pt{rat(0), rat(-1)});
    CHECK(sc.path[1] == pt64(0, -48));
    CHECK(sc.path[2] == pt64(24, 0));
    CHECK(sc.path[3] == Pt{rat(1), rat(0)});
  }
}

TEST_CASE("pair invariants and coverage") {
  const auto w1 = box64(-8, -60, 8, -56), w2 = box64(-8, -52, 8, -48);
  const auto p = quad64(-8, -48, 8, -48, 56, 0, 40, 0);

  SECTION("disjoint members are rejected") {
    CHECK_THROWS_AS(
        check_pair_invariants({w1, w2, p}, {box64(-40, -60, -24, -48),
                                            box64(-16, -60, -4, -48)}),
        invariant_error);
  }

  SECTION("a pair near one witness only is rejected") {
    CHECK_THROWS_AS(
        check_pair_invariants({w1, w2, p}, {box64(-40, -60, -4, -57),
                                            box64(-40, -59, -4, -57)}),
        invariant_error);
  }

  SECTION("coverage fails when a pair avoids both curves") {
    const auto cfg = bary_config();
    const ClassFrame fr = make_frame(cfg, 0);
    const auto ctx = detail::make_ctx(w1, fr);
    const SupportCurve t = end_support(fr, ctx, 0, true);
    CHECK(covers(t, t, {box64(-40, -60, -4, -48), box64(-40, -56, -4, -48)}));
    CHECK_FALSE(
        covers(t, t, {box64(-40, -54, -4, -50), box64(-40, -53, -4, -50)}));
  }
}

TEST_CASE("transversal pattern table") {
  const auto run = [](const Staged& s) {
    return pierce::pierce_class(s.fam, s.ev, 0, s.members);
  };

  SECTION("three whole traces") {
    const auto s = stage({box64(-8, -56, 8, -40), box64(-8, -36, 8, -20),
                          box64(-8, -16, 8, -4)},
                         {box64(-48, -44, -4, -36), box64(-48, -44, -4, -16),
                          box64(-48, -40, -4, -16)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "1");
    CHECK_FALSE(out.mirrored);
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(-4, -40));
    check_pierced(out, s);
  }

  SECTION("split last, wholes first") {
    const auto s = stage({box64(-8, -60, 8, -56), box64(-8, -52, 8, -48),
                          quad64(-8, -48, 8, -48, 56, 0, 40, 0)},
                         {box64(-40, -60, -4, -48), box64(-40, -56, -4, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "2.1");
    check_pierced(out, s);
  }

  SECTION("whole between the split pieces takes the bypass") {
    const auto s = stage({box64(-8, -60, 8, -56), box64(-8, -36, 8, -28),
                          quad64(-8, -48, 8, -48, 56, 0, 40, 0)},
                         {box64(-40, -60, -4, -48), box64(-16, -56, -4, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "2.2");
    REQUIRE(out.transversals.size() == 2);
    CHECK(out.transversals[0].kind == SupportCurve::Kind::Path);
    CHECK(out.transversals[0].path.size() == 4);
    check_pierced(out, s);
  }

  SECTION("whole after both split pieces takes a left support") {
    const auto s = stage({box64(-8, -60, 8, -56),
                          box64(60, -2, 62, 2),
                          quad64(-8, -48, 8, -48, 56, 0, 40, 0)},
                         {box64(-40, -60, -4, -48), box64(-40, -56, -2, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "2.3");
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(-4, -56));
    check_pierced(out, s);
  }

  SECTION("wholes inside the split gap") {
    const auto s = stage({box64(-8, -36, 8, -28), box64(-8, -20, 8, -16),
                          quad64(-8, -48, 8, -48, 56, 0, 40, 0)},
                         {box64(-40, -40, -4, -20), box64(-16, -32, -4, -16)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "2.4");
    check_pierced(out, s);
  }

  SECTION("wholes after the split match mirrored") {
    const auto s = stage({box64(58, -2, 60, 2), box64(62, -2, 63, 2),
                          quad64(-8, -48, 8, -48, 56, 0, 40, 0)},
                         {box64(58, 0, 64, 4), box64(58, 0, 62, 8)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "2.1m");
    CHECK(out.mirrored);
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(62, 4));
    check_pierced(out, s);
  }

  SECTION("nested splits around a leading whole") {
    const auto s = stage({box64(-8, -60, 8, -56), slab64(32, 40),
                          slab64(44, 48)},
                         {box64(-40, -60, -4, -44), box64(-40, -56, -4, -44)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "3.1");
    REQUIRE(out.transversals.size() == 2);
    CHECK(out.transversals[1].kind == SupportCurve::Kind::Path);
    check_pierced(out, s);
  }

  SECTION("parallel splits take a separator") {
    const auto s = stage({box64(-8, -60, 8, -56),
                          quad64(0, -52, 0, -48, 24, 0, 28, 0),
                          quad64(0, -36, 0, -32, 40, 0, 44, 0)},
                         {box64(-40, -60, 0, -52), box64(-40, -56, 0, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "3.2");
    REQUIRE(out.transversals.size() == 2);
    REQUIRE(out.transversals[1].kind == SupportCurve::Kind::Line);
    CHECK(on_line(out.transversals[1].line, {rat(0), rat(2)},
                  {rat(0), rat(-2)}));
    check_pierced(out, s);
  }

  SECTION("whole between nested split starts") {
    const auto s = stage({box64(-8, -43, 8, -41), slab64(32, 40),
                          slab64(44, 48)},
                         {box64(-40, -48, -4, -41), box64(-40, -44, -4, -40)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "3.3");
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(-4, -41));
    check_pierced(out, s);
  }

  SECTION("whole between parallel split starts") {
    const auto s = stage({box64(-8, -44, 8, -40),
                          quad64(0, -52, 0, -48, 24, 0, 28, 0),
                          quad64(0, -36, 0, -32, 40, 0, 44, 0)},
                         {box64(-40, -52, 0, -40), box64(-40, -48, 0, -36)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "3.4");
    check_pierced(out, s);
  }

  SECTION("whole inside both nested splits") {
    const auto s = stage({box64(-8, -28, 8, -20), slab64(32, 40),
                          slab64(44, 48)},
                         {box64(-40, -52, -4, -20), box64(-40, -44, -4, -20)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "3.5");
    check_pierced(out, s);
  }

  SECTION("whole inside both parallel splits") {
    const auto s = stage({box64(-8, -28, 8, -24),
                          quad64(0, -52, 0, -48, 24, 0, 28, 0),
                          quad64(0, -36, 0, -32, 40, 0, 44, 0)},
                         {box64(-40, -52, 0, -24), box64(-40, -56, 0, -24)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "3.6");
    REQUIRE(out.transversals.size() == 2);
    CHECK(out.transversals[0].path.size() == 4);
    CHECK(out.transversals[1].path.size() == 4);
    check_pierced(out, s);
  }

  SECTION("whole in the nested split tail matches mirrored") {
    const auto s = stage({box64(41, -2, 43, 2), slab64(32, 40),
                          slab64(44, 48)},
                         {box64(41, 0, 48, 4), box64(41, 0, 46, 8)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "3.3m");
    CHECK(out.mirrored);
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(41, 4));
    check_pierced(out, s);
  }

  SECTION("three nested splits") {
    const auto s = stage({slab64(32, 40), slab64(44, 48), slab64(52, 56)},
                         {box64(-40, -56, -4, -48), box64(-40, -52, -4, -46)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "4.1");
    check_pierced(out, s);
  }

  SECTION("three splits with one crossing pair") {
    const auto s = stage({quad64(0, -60, 0, -56, 36, 0, 40, 0),
                          quad64(0, -52, 0, -48, 44, 0, 48, 0),
                          quad64(0, -36, 0, -32, 24, 0, 28, 0)},
                         {box64(-40, -60, 0, -52), box64(-40, -56, 0, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "4.2");
    REQUIRE(out.transversals.size() == 2);
    REQUIRE(out.transversals[0].path.size() == 4);
    CHECK(out.transversals[0].path[1] == pt64(0, -56));
    CHECK(out.transversals[0].path[2] == pt64(36, 0));
    check_pierced(out, s);
  }

  SECTION("three parallel splits") {
    const auto s = stage({quad64(0, -60, 0, -56, 12, 0, 16, 0),
                          quad64(0, -52, 0, -48, 24, 0, 28, 0),
                          quad64(0, -36, 0, -32, 40, 0, 44, 0)},
                         {box64(-40, -60, 0, -48), box64(-40, -58, 0, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "4.3");
    REQUIRE(out.transversals.size() == 2);
    REQUIRE(out.transversals[1].kind == SupportCurve::Kind::Line);
    CHECK(on_line(out.transversals[1].line, {rat(0), rat(2)},
                  {rat(0), rat(-2)}));
    check_pierced(out, s);
  }

  SECTION("outer split around two parallel splits") {
    const auto s = stage({quad64(0, -62, 0, -60, 52, 0, 56, 0),
                          quad64(0, -52, 0, -48, 24, 0, 28, 0),
                          quad64(0, -36, 0, -32, 40, 0, 44, 0)},
                         {box64(-40, -62, 0, -52), box64(-40, -62, 0, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "4.4");
    check_pierced(out, s);
  }

  SECTION("split tail between the other two tails") {
    const auto s = stage({quad64(0, -62, 0, -60, 32, 0, 36, 0),
                          quad64(0, -52, 0, -48, 24, 0, 28, 0),
                          quad64(0, -36, 0, -32, 40, 0, 44, 0)},
                         {box64(-40, -62, 0, -52), box64(-40, -62, 0, -48)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "4.5");
    check_pierced(out, s);
  }

  SECTION("three splits match mirrored") {
    const auto s = stage({quad64(0, -60, 0, -56, 12, 0, 16, 0),
                          quad64(0, -52, 0, -48, 52, 0, 56, 0),
                          quad64(0, -36, 0, -32, 32, 0, 36, 0)},
                         {box64(12, 0, 40, 4), box64(12, 0, 44, 8)});
    const auto out = run(s);
    CHECK(out.route == "curves");
    CHECK(out.case_label == "4.5m");
    CHECK(out.mirrored);
    REQUIRE(out.transversals.size() == 2);
    REQUIRE(out.transversals[0].path.size() == 4);
    CHECK(out.transversals[0].path[0] == Pt{rat(1), rat(0)});
    CHECK(out.transversals[0].path[1] == pt64(52, 0));
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(40, 0));
    check_pierced(out, s);
  }
}

TEST_CASE("class piercing shortcut routes") {
  SECTION("empty class") {
    Staged s = stage({box64(-8, -56, 8, -40), box64(-8, -36, 8, -20),
                      box64(-8, -16, 8, -4)},
                     {});
    const auto out = pierce::pierce_class(s.fam, s.ev, 0, {});
    CHECK(out.route == "empty");
    CHECK(out.points.empty());
  }

  SECTION("singleton class") {
    const auto s = stage({box64(-8, -56, 8, -40), box64(-8, -36, 8, -20),
                          box64(-8, -16, 8, -4)},
                         {box64(-48, -44, -4, -36)});
    const auto out = pierce::pierce_class(s.fam, s.ev, 0, s.members);
    CHECK(out.route == "single");
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(-48, -44));
  }

  SECTION("witness inside the region forces a common point") {
    const auto s = stage({box64(8, -24, 24, -8), box64(-8, -36, 8, -20),
                          box64(-8, -16, 8, -4)},
                         {box64(-40, -40, -8, -8), box64(-24, -24, -4, -4)});
    const auto out = pierce::pierce_class(s.fam, s.ev, 0, s.members);
    CHECK(out.route == "helly");
    REQUIRE(out.points.size() == 1);
    CHECK(out.points[0] == pt64(-24, -24));
  }

  SECTION("unordered witness traces fall back to the oracle") {
    const auto s = stage({box64(-8, -56, 8, -40), box64(-8, -52, 8, -44),
                          box64(-8, -24, 8, -16)},
                         {box64(-40, -48, -4, -44), box64(-40, -46, -4, -42)});
    const auto out = pierce::pierce_class(s.fam, s.ev, 0, s.members);
    CHECK(out.route == "oracle");
    CHECK(out.note.find("admit no order") != std::string::npos);
    check_pierced(out, s);
  }

  SECTION("disjoint members fall back and still get two points") {
    const auto s = stage({box64(-8, -56, 8, -40), box64(-8, -36, 8, -20),
                          box64(-8, -16, 8, -4)},
                         {box64(-48, -44, -24, -36), box64(-16, -44, -4, -36)});
    const auto out = pierce::pierce_class(s.fam, s.ev, 0, s.members);
    CHECK(out.route == "oracle");
    CHECK(out.note.find("fail to intersect") != std::string::npos);
    CHECK(out.points.size() == 2);
    check_pierced(out, s);
  }
}

TEST_CASE("chord trace piercing with no witnessed region") {
  const auto cfg = bary_config();
  const auto b1 = box64(-16, -8, 8, 8), b2 = box64(-8, -16, 8, 8),
             b3 = box64(-8, -8, 16, 8), b4 = box64(-8, -8, 8, 16);

  SECTION("sets straddling both chords need one trace point") {
    instance::Family fam{{b1, b2, b3, b4}};
    const auto pts = pierce::easy_path(fam, cfg);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == Pt{rat(-1, 8), rat(0)});
  }

  SECTION("a region resident adds its own point") {
    instance::Family fam{{box64(8, -24, 24, -8), b1, b2, b4}};
    const auto pts = pierce::easy_path(fam, cfg);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == pt64(8, -24));
    CHECK(pts[1] == Pt{rat(-1, 8), rat(0)});
  }

  SECTION("a disjoint resident pair is pierced at both corners") {
    instance::Family fam{
        {box64(4, -12, 12, -4), box64(20, -28, 28, -20), b2, b4}};
    const auto pts = pierce::easy_path(fam, cfg);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == pt64(4, -12));
    CHECK(pts[1] == pt64(20, -28));
  }

  SECTION("residents of three regions are rejected") {
    instance::Family fam{{box64(8, -24, 24, -8), box64(-24, -24, -8, -8),
                          box64(-24, 8, -8, 24), b2}};
    CHECK_THROWS_AS(pierce::easy_path(fam, cfg), invariant_error);
  }

  SECTION("three residents of one region are rejected") {
    instance::Family fam{{box64(4, -12, 12, -4), box64(20, -28, 28, -20),
                          box64(36, -44, 44, -36), b2}};
    CHECK_THROWS_AS(pierce::easy_path(fam, cfg), invariant_error);
  }

  SECTION("a disjoint resident pair plus a second region is rejected") {
    instance::Family fam{{box64(4, -12, 12, -4), box64(20, -28, 28, -20),
                          box64(-24, -24, -8, -8), b2}};
    CHECK_THROWS_AS(pierce::easy_path(fam, cfg), invariant_error);
  }
}

TEST_CASE("hard probes split the family into classes") {
  const auto cfg = bary_config();
  const Pt c = kkm::chord_intersection(cfg);
  instance::Family fam{{box64(-8, -8, 8, 8), box64(8, -24, 24, -8),
                        box64(-24, -24, 24, -8), box64(-24, -16, -4, 16)}};
  const auto cl = pierce::partition_classes(fam, cfg, c);
  CHECK(cl.contains_crossing == std::vector<int>{0});
  CHECK(cl.members[0] == std::vector<int>{3});
  CHECK(cl.members[1] == std::vector<int>{1});
  CHECK(cl.members[2] == std::vector<int>{1, 2});
  CHECK(cl.members[3] == std::vector<int>{1, 2, 3});
}

TEST_CASE("end to end piercing stays within nine points") {
  SECTION("chord-straddling family") {
    instance::Family fam{{box64(-16, -8, 8, 8), box64(-8, -16, 8, 8),
                          box64(-8, -8, 16, 8), box64(-8, -8, 8, 16)}};
    const auto cert = pierce::pierce_all(fam);
    CHECK(cert.path == "easy");
    CHECK(cert.verified);
    REQUIRE(cert.points.size() == 1);
    CHECK(cert.points[0] == Pt{rat(-1, 8), rat(0)});
  }

  SECTION("one resident region") {
    instance::Family fam{{box64(8, -24, 24, -8), box64(-24, -24, 8, 8),
                          box64(-8, -8, 24, 24), box64(-16, -16, 16, 16)}};
    const auto cert = pierce::pierce_all(fam);
    CHECK(cert.path == "easy");
    CHECK(cert.verified);
    REQUIRE(cert.points.size() == 2);
    CHECK(cert.points[0] == Pt{rat(-1, 8), rat(0)});
    CHECK(cert.points[1] == pt64(8, -24));
  }

  SECTION("a disjoint resident pair") {
    instance::Family fam{{box64(4, -12, 12, -4), box64(20, -28, 28, -20),
                          box64(-28, -8, 8, 8), box64(-8, -28, 8, 28)}};
    const auto cert = pierce::pierce_all(fam);
    CHECK(cert.path == "easy");
    CHECK(cert.verified);
    REQUIRE(cert.points.size() == 3);
    CHECK(cert.points[0] == Pt{rat(-1, 8), rat(0)});
    CHECK(cert.points[1] == pt64(4, -12));
    CHECK(cert.points[2] == pt64(20, -28));
  }

  SECTION("two resident regions") {
    instance::Family fam{{box64(8, -24, 24, -8), box64(-24, 8, -8, 24),
                          box64(-16, -16, 16, 16), box64(-24, -24, 24, 24)}};
    const auto cert = pierce::pierce_all(fam);
    CHECK(cert.path == "easy");
    CHECK(cert.verified);
    REQUIRE(cert.points.size() == 3);
    CHECK(cert.points[0] == pt64(-24, 8));
    CHECK(cert.points[1] == Pt{rat(-1, 4), rat(0)});
    CHECK(cert.points[2] == pt64(8, -24));
  }
}

namespace {

// One-witness-everywhere family: a shared-corner cluster in the lower right
// plus a box holding everything, so the probe search always exhausts.
instance::Family contract_family() {
  const auto b16 = [](long long lox, long long loy, long long hix,
                      long long hiy) {
    return box64(4 * lox, 4 * loy, 4 * hix, 4 * hiy);
  };
  return instance::Family{{b16(6, -6, 7, -5), b16(7, -5, 8, -4),
                           b16(6, -5, 7, -4), b16(-9, -9, 9, 9)}};
}

}  // namespace

TEST_CASE("exhausted searches fall back to the oracle") {
  const auto fam = contract_family();
  const auto cert = pierce::pierce_all(fam, pierce::Mode::Constructive, 1);
  CHECK(cert.path == "fallback");
  CHECK(cert.fallback_count == 1);
  REQUIRE(cert.notes.size() == 1);
  CHECK(cert.notes[0].find("exhausted") != std::string::npos);
  CHECK(cert.evaluations == 35);
  CHECK(cert.verified);
  REQUIRE(cert.points.size() == 1);
  CHECK(cert.points[0] == Pt{rat(7, 16), rat(-5, 16)});
}

TEST_CASE("piercing modes") {
  const auto fam = contract_family();

  SECTION("oracle mode skips the probe search") {
    const auto cert = pierce::pierce_all(fam, pierce::Mode::Oracle);
    CHECK(cert.path == "fallback");
    CHECK(cert.evaluations == 0);
    CHECK_FALSE(cert.probe.has_value());
    REQUIRE(cert.notes.size() == 1);
    CHECK(cert.notes[0] == "oracle mode requested");
    CHECK(cert.verified);
    CHECK(cert.points.size() == 1);
  }

  SECTION("hybrid mode cross-checks the certificate size") {
    const auto cert = pierce::pierce_all(fam, pierce::Mode::Hybrid, 1);
    REQUIRE(cert.notes.size() == 2);
    CHECK(cert.notes[1] == "oracle cross-check minimum 1");
    CHECK(cert.verified);
  }
}

TEST_CASE("pipeline preconditions") {
  instance::Family tiny{{box64(-8, -8, 8, 8), box64(-8, -8, 8, 8),
                         box64(-8, -8, 8, 8)}};
  CHECK_THROWS_AS(pierce::pierce_all(tiny), invariant_error);

  instance::Family scattered{{box64(0, 0, 8, 8), box64(16, 16, 24, 24),
                              box64(32, 32, 40, 40), box64(48, 48, 56, 56)}};
  CHECK_THROWS_AS(pierce::pierce_all(scattered), invariant_error);
}

TEST_CASE("piercing generated families") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int n = 4 + (int)(seed % 7);
    const auto fam = instance::generate_cluster(seed, n);
    const auto cert = pierce::pierce_all(fam, pierce::Mode::Constructive, 2);
    CHECK(cert.verified);
    CHECK(cert.scaled_points.size() <= 9);
    CHECK(oracle::verify_piercing(fam, cert.points));
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int n = 4 + (int)(seed % 5);
    const auto fam = instance::generate_random_43(seed, n);
    const auto cert = pierce::pierce_all(fam, pierce::Mode::Constructive, 2);
    CHECK(cert.verified);
    CHECK(cert.scaled_points.size() <= 9);
    CHECK(oracle::verify_piercing(fam, cert.points));
  }
}

TEST_CASE("certificates are deterministic") {
  const auto fam = instance::generate_cluster(7, 8);
  const auto a = pierce::pierce_all(fam, pierce::Mode::Constructive, 2);
  const auto b = pierce::pierce_all(fam, pierce::Mode::Constructive, 2);
  CHECK(a.path == b.path);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.points == b.points);
  CHECK(a.scaled_points == b.scaled_points);
  CHECK(a.notes == b.notes);
}

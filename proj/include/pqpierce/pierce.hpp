#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqpierce/check.hpp"
#include "pqpierce/curves.hpp"
#include "pqpierce/geometry.hpp"
#include "pqpierce/instance.hpp"
#include "pqpierce/kkm.hpp"
#include "pqpierce/oracle.hpp"
#include "pqpierce/polygon.hpp"
#include "pqpierce/two_interval.hpp"

// End-to-end piercing pipeline. A family with the four-three property is
// normalized into the unit disk and probed. A probe with no witness region
// pierces with at most 8 points via chord traces; a probe with four witness
// regions pierces with the chord crossing plus at most two points per region
// class. Constructive steps are guarded by invariants; any violated
// invariant downgrades the affected step to the exact oracle, and the
// certificate records the downgrade.

namespace pqpierce::pierce {

enum class Mode { Constructive, Hybrid, Oracle };

// Result of piercing one region class.
struct ClassOutcome {
  std::vector<int> members;
  std::string route = "empty";  // empty|single|helly|curves|oracle
  std::string case_label;       // pattern tag for the curves route
  bool mirrored = false;
  std::vector<geom::Pt> points;                    // normalized frame
  std::vector<curves::SupportCurve> transversals;  // curves route only
  std::string note;                                // downgrade reason
};

struct Certificate {
  std::string path = "fallback";  // easy|hard|fallback
  int evaluations = 0;
  std::optional<kkm::Probe> probe;
  std::array<std::optional<std::array<int, 3>>, 4> witnesses;
  instance::Similarity transform;
  std::optional<geom::Pt> crossing;  // chord crossing, normalized frame
  std::vector<int> contains_crossing;
  std::array<ClassOutcome, 4> classes;
  std::vector<geom::Pt> scaled_points;  // normalized frame, lex sorted
  std::vector<geom::Pt> points;         // original frame, same order
  int fallback_count = 0;
  std::vector<std::string> notes;
  bool verified = false;
};

// Piercing for a probe with no witness region: one point inside each
// occupied region (or two when a single region holds a disjoint pair), then
// an exact minimum piercing of the chord traces of everything else.
inline std::vector<geom::Pt> easy_path(const instance::Family& fam,
                                       const kkm::ChordConfig& cfg) {
  const int n = fam.size();
  std::array<std::vector<int>, 4> residents;
  std::vector<int> occupied;
  std::vector<bool> inside(n, false);
  for (int q = 0; q < 4; ++q) {
    for (int i = 0; i < n; ++i)
      if (cfg.regions[q].relation(fam.sets[i]) ==
          geom::RegionRelation::ContainedOpen) {
        residents[q].push_back(i);
        inside[i] = true;
      }
    if (!residents[q].empty()) occupied.push_back(q);
  }
  PQ_CHECK(occupied.size() <= 2,
           "sets inside three regions give three pairwise disjoint sets");
  bool split_pair = false;
  for (int q : occupied) {
    PQ_CHECK(residents[q].size() <= 2,
             "three sets inside one region force a witness triple");
    if (residents[q].size() == 2 &&
        geom::intersect(fam.sets[residents[q][0]], fam.sets[residents[q][1]])
            .empty())
      split_pair = true;
  }

  std::vector<geom::Pt> pts;
  if (split_pair) {
    PQ_CHECK(occupied.size() == 1,
             "a disjoint resident pair must own the only occupied region");
    for (int i : residents[occupied[0]])
      pts.push_back(geom::lex_least_vertex(fam.sets[i]));
  } else {
    for (int q : occupied) {
      geom::ConvexPolygon common = fam.sets[residents[q][0]];
      for (std::size_t k = 1; k < residents[q].size(); ++k)
        common = geom::intersect(common, fam.sets[residents[q][k]]);
      PQ_CHECK(!common.empty(), "resident sets of one region must intersect");
      pts.push_back(geom::lex_least_vertex(common));
    }
  }

  std::vector<two_interval::TwoInterval> items;
  for (int i = 0; i < n; ++i) {
    two_interval::TwoInterval it;
    it.part[0] = curves::segment_trace(fam.sets[i], cfg.f0, cfg.f2);
    it.part[1] = curves::segment_trace(fam.sets[i], cfg.f1, cfg.f3);
    if (it.empty()) {
      PQ_CHECK(inside[i],
               "a set avoiding both chords must sit inside one region");
      continue;
    }
    items.push_back(it);
  }
  const int nu = two_interval::matching_number(items);
  PQ_CHECK(nu <= 3, "four chord traces are pairwise disjoint");
  const auto axpts = two_interval::min_piercing_points(items);
  PQ_CHECK((int)axpts.size() <= 2 * nu,
           "chord trace piercing exceeds twice its matching number");
  for (const auto& ap : axpts) {
    const geom::Pt a = ap.axis == 0 ? cfg.f0 : cfg.f1;
    const geom::Pt b = ap.axis == 0 ? cfg.f2 : cfg.f3;
    pts.push_back(a + ap.t * (b - a));
  }
  PQ_CHECK(pts.size() <= 8, "easy route exceeded eight points");
  return pts;
}

// Class structure of a hard probe: sets containing the chord crossing are
// pierced by it; every other set misses at least one region entirely and
// joins that region's class.
struct Classes {
  std::vector<int> contains_crossing;
  std::array<std::vector<int>, 4> members;
};

inline Classes partition_classes(const instance::Family& fam,
                                 const kkm::ChordConfig& cfg,
                                 const geom::Pt& crossing) {
  Classes cl;
  for (int i = 0; i < fam.size(); ++i) {
    if (geom::point_in(fam.sets[i], crossing)) {
      cl.contains_crossing.push_back(i);
      continue;
    }
    bool placed = false;
    for (int q = 0; q < 4; ++q)
      if (cfg.regions[q].relation(fam.sets[i]) ==
          geom::RegionRelation::Disjoint) {
        cl.members[q].push_back(i);
        placed = true;
      }
    PQ_CHECK(placed, "a set missing the crossing must miss some region");
  }
  return cl;
}

// At most two points for the members of one class. Routes, in order: empty
// and singleton classes are immediate; a witness set inside the region
// forces a common point of all members; otherwise transversal curves reduce
// members to 2-intervals. Any invariant failure downgrades to the oracle.
inline ClassOutcome pierce_class(const instance::Family& fam,
                                 const kkm::Evaluation& ev, int q,
                                 const std::vector<int>& members) {
  ClassOutcome out;
  out.members = members;
  if (members.empty()) return out;
  if (members.size() == 1) {
    out.route = "single";
    out.points = {geom::lex_least_vertex(fam.sets[members[0]])};
    return out;
  }

  PQ_CHECK(ev.witness[q].has_value(), "hard probe lost a witness triple");
  const std::array<int, 3> w = *ev.witness[q];
  const std::array<geom::ConvexPolygon, 3> wit{
      fam.sets[w[0]], fam.sets[w[1]], fam.sets[w[2]]};
  std::vector<geom::ConvexPolygon> mem;
  for (int i : members) mem.push_back(fam.sets[i]);

  try {
    bool inner_witness = false;
    for (const auto& ws : wit)
      if (ev.config.regions[q].relation(ws) ==
          geom::RegionRelation::ContainedOpen)
        inner_witness = true;
    if (inner_witness) {
      geom::ConvexPolygon common = mem[0];
      for (std::size_t k = 1; k < mem.size(); ++k)
        common = geom::intersect(common, mem[k]);
      PQ_CHECK(!common.empty(),
               "members of a class with an inner witness must share a point");
      out.route = "helly";
      out.points = {geom::lex_least_vertex(common)};
      return out;
    }

    const curves::ClassFrame frame = curves::make_frame(ev.config, q);
    curves::check_pair_invariants(wit, mem);
    const curves::TransversalPlan plan =
        curves::select_transversals(frame, wit, mem);

    std::vector<two_interval::TwoInterval> items;
    for (const auto& m : mem) {
      two_interval::TwoInterval it;
      it.part[0] = curves::trace(plan.t1, m);
      it.part[1] = curves::trace(plan.t2, m);
      PQ_CHECK(!it.empty(), "a class member misses both transversal curves");
      items.push_back(it);
    }
    PQ_CHECK(two_interval::matching_number(items) == 1,
             "class traces admit two disjoint items");
    const auto axpts = two_interval::min_piercing_points(items);
    PQ_CHECK(axpts.size() <= 2, "a class needs more than two curve points");
    out.route = "curves";
    out.case_label = plan.label;
    out.mirrored = plan.mirrored;
    out.transversals = {plan.t1, plan.t2};
    for (const auto& ap : axpts)
      out.points.push_back(
          curves::point_at(ap.axis == 0 ? plan.t1 : plan.t2, ap.t));
    return out;
  } catch (const invariant_error& e) {
    ClassOutcome fb;
    fb.members = members;
    fb.route = "oracle";
    fb.note = e.what();
    const auto sol = oracle::min_piercing_subset(fam, members, 2);
    PQ_CHECK(sol.has_value(),
             "a class needs more than two points, against the class bound");
    fb.points = *sol;
    return fb;
  }
}

inline Certificate pierce_all(const instance::Family& fam,
                              Mode mode = Mode::Constructive,
                              int max_depth = 3) {
  PQ_CHECK(fam.size() >= 4, "pipeline needs at least four sets");
  PQ_CHECK(!instance::check_43(fam).has_value(),
           "family lacks the four-three property");

  Certificate cert;
  cert.transform = instance::disk_normalizer(fam);
  const instance::Family sfam = instance::apply(cert.transform, fam);

  const auto oracle_all = [&](const std::string& why) {
    const auto sol = oracle::min_piercing(sfam, 9);
    PQ_CHECK(sol.has_value(),
             "no nine point piercing exists, against the main bound");
    cert.path = "fallback";
    cert.scaled_points = *sol;
    ++cert.fallback_count;
    cert.notes.push_back(why);
  };

  if (mode == Mode::Oracle) {
    oracle_all("oracle mode requested");
  } else {
    instance::IntersectionCache cache(sfam);
    const kkm::SearchResult sr = kkm::kkm_search(sfam, cache, max_depth);
    cert.evaluations = sr.evaluations;
    if (sr.kind == kkm::SearchKind::Easy) {
      cert.probe = sr.eval->config.x;
      try {
        cert.scaled_points = easy_path(sfam, sr.eval->config);
        cert.path = "easy";
      } catch (const invariant_error& e) {
        oracle_all(std::string("easy route aborted: ") + e.what());
      }
    } else if (sr.kind == kkm::SearchKind::Hard) {
      cert.probe = sr.eval->config.x;
      cert.witnesses = sr.eval->witness;
      try {
        const geom::Pt c = kkm::chord_intersection(sr.eval->config);
        const Classes cl = partition_classes(sfam, sr.eval->config, c);
        cert.crossing = c;
        cert.contains_crossing = cl.contains_crossing;
        std::vector<geom::Pt> pts{c};
        for (int q = 0; q < 4; ++q) {
          cert.classes[q] = pierce_class(sfam, *sr.eval, q, cl.members[q]);
          if (cert.classes[q].route == "oracle") {
            ++cert.fallback_count;
            cert.notes.push_back("class " + std::to_string(q + 1) +
                                 " downgraded: " + cert.classes[q].note);
          }
          for (const auto& p : cert.classes[q].points) pts.push_back(p);
        }
        PQ_CHECK(pts.size() <= 9, "hard route exceeded nine points");
        cert.path = "hard";
        cert.scaled_points = pts;
      } catch (const invariant_error& e) {
        oracle_all(std::string("hard route aborted: ") + e.what());
      }
    } else {
      oracle_all("probe search exhausted with no deciding probe");
    }
  }

  std::sort(cert.scaled_points.begin(), cert.scaled_points.end(),
            geom::lex_less);
  cert.scaled_points.erase(
      std::unique(cert.scaled_points.begin(), cert.scaled_points.end()),
      cert.scaled_points.end());
  PQ_CHECK(cert.scaled_points.size() <= 9, "piercing exceeds nine points");
  for (const auto& p : cert.scaled_points)
    cert.points.push_back(cert.transform.invert(p));
  cert.verified = oracle::verify_piercing(fam, cert.points);
  PQ_CHECK(cert.verified, "piercing set failed final verification");

  if (mode == Mode::Hybrid) {
    const auto best =
        oracle::min_piercing(sfam, (int)cert.scaled_points.size());
    PQ_CHECK(best.has_value(),
             "oracle cross-check found no piercing within certificate size");
    cert.notes.push_back("oracle cross-check minimum " +
                         std::to_string(best->size()));
  }
  return cert;
}

}  // namespace pqpierce::pierce

#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqpierce/pierce.hpp"

// JSON documents for families and piercing certificates. Rationals travel as
// "p/q" strings (plain integers stay plain) so every file stays exact and
// round-trips bit for bit. Curves are stored as vertex lists; a line is the
// two-point list {base, base + dir} of its rational basis.

namespace pqpierce::io {

using Json = nlohmann::ordered_json;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational rational_from(const Json& j) {
  if (j.is_number_integer())
    return Rational(BigInt((long long)j.get<std::int64_t>()));
  if (j.is_string()) {
    const auto r = parse_rational(j.get<std::string>());
    if (r) return *r;
  }
  throw parse_error("expected a rational: integer or \"p/q\" string");
}

inline Json rational_to(const Rational& r) {
  if (denominator(r) == 1 && abs_r(r) <= rat(1LL << 40))
    return Json((std::int64_t)numerator(r).convert_to<long long>());
  return Json(format_rational(r));
}

inline geom::Pt pt_from(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw parse_error("expected a point: [x, y]");
  return {rational_from(j[0]), rational_from(j[1])};
}

inline Json pt_to(const geom::Pt& p) {
  return Json::array({rational_to(p.x), rational_to(p.y)});
}

inline Json pts_to(const std::vector<geom::Pt>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(pt_to(p));
  return a;
}

inline std::vector<geom::Pt> pts_from(const Json& j) {
  if (!j.is_array()) throw parse_error("expected a point list");
  std::vector<geom::Pt> ps;
  for (const auto& e : j) ps.push_back(pt_from(e));
  return ps;
}

// ---------------------------------------------------------------- instances

inline Json family_to_json(const instance::Family& fam,
                           const std::string& name) {
  Json doc;
  doc["name"] = name;
  Json sets = Json::array();
  for (const auto& s : fam.sets) sets.push_back(pts_to(s.vs));
  doc["sets"] = std::move(sets);
  return doc;
}

// Vertex lists are rebuilt as hulls, so hand-written documents may list
// vertices in any order; serialized documents round-trip unchanged.
inline instance::Family family_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array())
    throw parse_error("instance document needs a \"sets\" array");
  instance::Family fam;
  for (const auto& js : doc["sets"]) {
    const auto vs = pts_from(js);
    if (vs.empty()) throw parse_error("a set needs at least one vertex");
    fam.sets.push_back(geom::convex_hull(vs));
  }
  return fam;
}

inline std::string instance_name(const Json& doc) {
  if (doc.is_object() && doc.contains("name") && doc["name"].is_string())
    return doc["name"].get<std::string>();
  return "unnamed";
}

// ------------------------------------------------------------- certificates

inline Json curve_to_json(const curves::SupportCurve& sc) {
  Json j;
  if (sc.kind == curves::SupportCurve::Kind::Line) {
    j["kind"] = "line";
    const auto [base, dir] = curves::line_basis(sc.line);
    j["points"] = pts_to({base, base + dir});
  } else {
    j["kind"] = "path";
    j["points"] = pts_to(sc.path);
  }
  return j;
}

inline curves::SupportCurve curve_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("points"))
    throw parse_error("curve needs \"kind\" and \"points\"");
  curves::SupportCurve sc;
  const auto pts = pts_from(j["points"]);
  if (j["kind"] == "line") {
    if (pts.size() != 2 || pts[0] == pts[1])
      throw parse_error("a line curve needs two distinct points");
    sc.kind = curves::SupportCurve::Kind::Line;
    sc.line = geom::line_through(pts[0], pts[1]);
  } else if (j["kind"] == "path") {
    if (pts.size() < 2) throw parse_error("a path curve needs two vertices");
    sc.kind = curves::SupportCurve::Kind::Path;
    sc.path = pts;
  } else {
    throw parse_error("curve kind must be \"line\" or \"path\"");
  }
  return sc;
}

inline Json certificate_to_json(const pierce::Certificate& cert) {
  Json doc;
  doc["bound"] = 9;
  doc["path"] = cert.path;
  doc["points"] = pts_to(cert.points);
  doc["scaled_points"] = pts_to(cert.scaled_points);
  doc["transform"] = {{"scale", rational_to(cert.transform.scale)},
                      {"center", pt_to(cert.transform.center)}};
  doc["evaluations"] = cert.evaluations;
  if (cert.probe) {
    Json p = Json::array();
    for (const auto& x : *cert.probe) p.push_back(rational_to(x));
    doc["probe"] = std::move(p);
  }
  if (cert.path == "hard") {
    Json ws = Json::array();
    for (const auto& w : cert.witnesses)
      ws.push_back(w ? Json((*w)) : Json(nullptr));
    doc["witnesses"] = std::move(ws);
    doc["crossing"] = pt_to(*cert.crossing);
    doc["contains_crossing"] = cert.contains_crossing;
    Json cls = Json::array();
    for (const auto& co : cert.classes) {
      Json jc;
      jc["members"] = co.members;
      jc["route"] = co.route;
      if (co.route == "curves") {
        jc["case"] = co.case_label;
        jc["mirrored"] = co.mirrored;
        Json cs = Json::array();
        for (const auto& t : co.transversals) cs.push_back(curve_to_json(t));
        jc["curves"] = std::move(cs);
      }
      jc["points"] = pts_to(co.points);
      if (!co.note.empty()) jc["note"] = co.note;
      cls.push_back(std::move(jc));
    }
    doc["classes"] = std::move(cls);
  }
  doc["fallbacks"] = cert.fallback_count;
  doc["notes"] = cert.notes;
  doc["verified"] = cert.verified;
  return doc;
}

inline pierce::Certificate certificate_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("path") || !doc.contains("points"))
    throw parse_error("certificate document needs \"path\" and \"points\"");
  pierce::Certificate cert;
  cert.path = doc["path"].get<std::string>();
  cert.points = pts_from(doc["points"]);
  cert.scaled_points = pts_from(doc.at("scaled_points"));
  cert.transform.scale = rational_from(doc.at("transform").at("scale"));
  cert.transform.center = pt_from(doc.at("transform").at("center"));
  cert.evaluations = doc.at("evaluations").get<int>();
  if (doc.contains("probe")) {
    kkm::Probe p;
    const auto& jp = doc["probe"];
    if (!jp.is_array() || jp.size() != 4)
      throw parse_error("probe needs four coordinates");
    for (int i = 0; i < 4; ++i) p[i] = rational_from(jp[i]);
    cert.probe = p;
  }
  if (doc.contains("classes")) {
    const auto& jw = doc.at("witnesses");
    for (int q = 0; q < 4; ++q)
      if (!jw.at(q).is_null())
        cert.witnesses[q] = jw.at(q).get<std::array<int, 3>>();
    cert.crossing = pt_from(doc.at("crossing"));
    cert.contains_crossing =
        doc.at("contains_crossing").get<std::vector<int>>();
    const auto& jcls = doc["classes"];
    if (!jcls.is_array() || jcls.size() != 4)
      throw parse_error("a hard certificate needs four classes");
    for (int q = 0; q < 4; ++q) {
      auto& co = cert.classes[q];
      const auto& jc = jcls[q];
      co.members = jc.at("members").get<std::vector<int>>();
      co.route = jc.at("route").get<std::string>();
      if (co.route == "curves") {
        co.case_label = jc.at("case").get<std::string>();
        co.mirrored = jc.at("mirrored").get<bool>();
        for (const auto& t : jc.at("curves"))
          co.transversals.push_back(curve_from_json(t));
      }
      co.points = pts_from(jc.at("points"));
      if (jc.contains("note")) co.note = jc.at("note").get<std::string>();
    }
  }
  cert.fallback_count = doc.at("fallbacks").get<int>();
  cert.notes = doc.at("notes").get<std::vector<std::string>>();
  cert.verified = doc.at("verified").get<bool>();
  return cert;
}

// ------------------------------------------------------------------- files

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw parse_error("invalid JSON in " + path);
  return doc;
}

inline void save_json(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace pqpierce::io

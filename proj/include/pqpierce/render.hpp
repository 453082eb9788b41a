#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pqpierce/instance.hpp"
#include "pqpierce/kkm.hpp"
#include "pqpierce/pierce.hpp"

// Deterministic SVG scenes: the unit circle, the chords and labeled regions
// of a probe, the family as translucent polygons, certificate transversals,
// and piercing points as crosses. Geometry stays rational until the final
// text emission, which rounds by exact integer division, so identical inputs
// produce identical bytes.

namespace pqpierce::render {

namespace detail {

constexpr long long kScale = 240;

// Decimal form of r with four fraction digits, round half away from zero.
inline std::string svg_num(const Rational& r) {
  const BigInt scaled = numerator(r) * 10000;
  const BigInt den = denominator(r);
  const bool neg = scaled < 0;
  const BigInt mag = ((neg ? -scaled : scaled) * 2 + den) / (den * 2);
  const BigInt ip = mag / 10000, fp = mag % 10000;
  std::string frac = fp.str();
  frac.insert(frac.begin(), 4 - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string s = ip.str();
  if (!frac.empty()) s += "." + frac;
  return (neg && mag != 0) ? "-" + s : s;
}

// Page coordinates: y points down in SVG.
inline std::string px(const geom::Pt& p) { return svg_num(kScale * p.x); }
inline std::string py(const geom::Pt& p) { return svg_num(-kScale * p.y); }
inline std::string xy(const geom::Pt& p) { return px(p) + "," + py(p); }

inline const std::array<const char*, 10>& palette() {
  static const std::array<const char*, 10> colors = {
      "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
      "#76b7b2", "#edc948", "#9c755f", "#ff9da7", "#bab0ac"};
  return colors;
}

inline void emit_polygon(std::string& out, const geom::ConvexPolygon& c,
                         const char* color) {
  if (c.vs.empty()) return;
  if (c.vs.size() == 1) {
    out += "<circle cx=\"" + px(c.vs[0]) + "\" cy=\"" + py(c.vs[0]) +
           "\" r=\"2\" fill=\"" + color + "\"/>\n";
    return;
  }
  out += "<polygon points=\"";
  for (std::size_t i = 0; i < c.vs.size(); ++i) {
    if (i) out += " ";
    out += xy(c.vs[i]);
  }
  out += std::string("\" fill=\"") + color +
         "\" fill-opacity=\"0.3\" stroke=\"" + color +
         "\" stroke-width=\"1\"/>\n";
}

inline void emit_segment(std::string& out, const geom::Pt& a,
                         const geom::Pt& b, const char* color,
                         const char* width) {
  out += std::string("<line x1=\"") + px(a) + "\" y1=\"" + py(a) +
         "\" x2=\"" + px(b) + "\" y2=\"" + py(b) + "\" stroke=\"" + color +
         "\" stroke-width=\"" + width + "\"/>\n";
}

// Chord of the display square cut by a line; skips lines missing the square.
inline void emit_line(std::string& out, const geom::Line& l,
                      const char* color, const char* width) {
  const auto square =
      geom::convex_hull({{rat(-3, 2), rat(-3, 2)},
                         {rat(3, 2), rat(-3, 2)},
                         {rat(3, 2), rat(3, 2)},
                         {rat(-3, 2), rat(3, 2)}});
  const auto half = geom::clip(square, geom::halfplane_nonneg(l));
  std::vector<geom::Pt> on;
  for (const auto& v : half.vs)
    if (l.side(v) == 0) on.push_back(v);
  if (on.size() < 2) return;
  emit_segment(out, on.front(), on.back(), color, width);
}

inline void emit_curve(std::string& out, const curves::SupportCurve& sc,
                       const char* color) {
  if (sc.kind == curves::SupportCurve::Kind::Line) {
    emit_line(out, sc.line, color, "1.6");
    return;
  }
  out += "<polyline points=\"";
  for (std::size_t i = 0; i < sc.path.size(); ++i) {
    if (i) out += " ";
    out += xy(sc.path[i]);
  }
  out += std::string("\" fill=\"none\" stroke=\"") + color +
         "\" stroke-width=\"1.6\"/>\n";
}

inline void emit_cross(std::string& out, const geom::Pt& p) {
  const Rational d = rat(1, 40);
  emit_segment(out, {p.x - d, p.y - d}, {p.x + d, p.y + d}, "#c21807", "2.5");
  emit_segment(out, {p.x - d, p.y + d}, {p.x + d, p.y - d}, "#c21807", "2.5");
}

inline void emit_label(std::string& out, const geom::Pt& p,
                       const std::string& text) {
  out += "<text x=\"" + px(p) + "\" y=\"" + py(p) +
         "\" font-family=\"monospace\" font-size=\"16\" fill=\"#444444\" "
         "text-anchor=\"middle\">" +
         text + "</text>\n";
}

}  // namespace detail

// Scene in the unit-disk frame: circle, optional chords with region labels,
// family polygons, transversal curves, piercing crosses.
inline std::string scene_svg(const instance::Family& scaled,
                             const std::optional<kkm::ChordConfig>& cfg,
                             const std::vector<curves::SupportCurve>& curve_set,
                             const std::vector<geom::Pt>& crosses) {
  using namespace detail;
  std::string out;
  out +=
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
      "height=\"640\" viewBox=\"-320 -320 640 640\">\n"
      "<rect x=\"-320\" y=\"-320\" width=\"640\" height=\"640\" "
      "fill=\"#ffffff\"/>\n"
      "<circle cx=\"0\" cy=\"0\" r=\"240\" fill=\"none\" "
      "stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
  if (cfg) {
    if (cfg->f0 != cfg->f2)
      emit_segment(out, cfg->f0, cfg->f2, "#333333", "1.2");
    if (cfg->f1 != cfg->f3)
      emit_segment(out, cfg->f1, cfg->f3, "#333333", "1.2");
    Rational prefix = 0;
    for (int q = 0; q < 4; ++q) {
      const Rational next = prefix + cfg->x[q];
      if (!cfg->regions[q].is_empty) {
        const geom::Pt mid = geom::circle_param((prefix + next) / 2);
        emit_label(out, {rat(4, 5) * mid.x, rat(4, 5) * mid.y},
                   "R" + std::to_string(q + 1));
      }
      prefix = next;
    }
  }
  for (int i = 0; i < scaled.size(); ++i)
    emit_polygon(out, scaled.sets[i], palette()[i % palette().size()]);
  for (std::size_t i = 0; i < curve_set.size(); ++i)
    emit_curve(out, curve_set[i], i % 2 == 0 ? "#6a3d9a" : "#1f78b4");
  for (const auto& p : crosses) emit_cross(out, p);
  out += "</svg>\n";
  return out;
}

// Family alone: normalized into the disk and shown against the barycentric
// chords. An empty family renders the labeled regions only.
inline std::string render_family(const instance::Family& fam) {
  const auto cfg = kkm::make_config(kkm::barycenter());
  if (fam.size() == 0) return scene_svg(fam, cfg, {}, {});
  const auto sim = instance::disk_normalizer(fam);
  return scene_svg(instance::apply(sim, fam), cfg, {}, {});
}

// Family plus certificate: the certificate's own transform and probe, its
// class transversals, and its piercing points.
inline std::string render_certificate(const instance::Family& fam,
                                      const pierce::Certificate& cert) {
  std::optional<kkm::ChordConfig> cfg;
  if (cert.probe) cfg = kkm::make_config(*cert.probe);
  std::vector<curves::SupportCurve> curve_set;
  for (const auto& co : cert.classes)
    for (const auto& t : co.transversals) curve_set.push_back(t);
  return scene_svg(instance::apply(cert.transform, fam), cfg, curve_set,
                   cert.scaled_points);
}

}  // namespace pqpierce::render

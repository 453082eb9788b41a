// Command line for the piercing toolkit: instance generation, property
// checking, the piercing pipeline with certificates, the exact oracle,
// SVG rendering, corpus benchmarking, and a randomized hunt for probes
// that split a family into four witnessed classes.
//
// Exit codes: 0 success, 1 failed check or unverified certificate,
// 2 parse error, 3 violated invariant.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pqpierce/io.hpp"
#include "pqpierce/log.hpp"
#include "pqpierce/render.hpp"

namespace {

using namespace pqpierce;

instance::Family load_family(const std::string& path) {
  return io::family_from_json(io::load_json(path));
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::parse_error("cannot write " + path);
  out << body;
}

instance::Family run_generator(const std::string& kind, std::uint64_t seed,
                               int n) {
  if (kind == "cluster") return instance::generate_cluster(seed, n);
  if (kind == "random") return instance::generate_random_43(seed, n);
  throw io::parse_error("unknown generator: " + kind);
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(
    const std::string& spec) {
  const auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      const std::uint64_t s = std::stoull(spec);
      return {s, s};
    }
    const std::uint64_t lo = std::stoull(spec.substr(0, dots));
    const std::uint64_t hi = std::stoull(spec.substr(dots + 2));
    if (lo > hi) throw io::parse_error("empty seed range: " + spec);
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw io::parse_error("seed range must be N or LO..HI: " + spec);
  } catch (const std::out_of_range&) {
    throw io::parse_error("seed out of range: " + spec);
  }
}

pierce::Mode parse_mode(const std::string& mode) {
  if (mode == "constructive") return pierce::Mode::Constructive;
  if (mode == "hybrid") return pierce::Mode::Hybrid;
  if (mode == "oracle") return pierce::Mode::Oracle;
  throw io::parse_error("unknown mode: " + mode);
}

std::string format_point(const geom::Pt& p) {
  return "(" + format_rational(p.x) + ", " + format_rational(p.y) + ")";
}

int cmd_generate(const std::string& generator, std::uint64_t seed, int n,
                 const std::string& output) {
  const auto fam = run_generator(generator, seed, n);
  const std::string name =
      generator + "-" + std::to_string(seed) + "-" + std::to_string(n);
  io::save_json(output, io::family_to_json(fam, name));
  log::trace(1, "generated " + name + " -> " + output);
  return 0;
}

int cmd_check(const std::string& input) {
  const auto fam = load_family(input);
  instance::IntersectionCache cache(fam);
  const auto bad = instance::check_43(fam, cache);
  std::cout << "sets: " << fam.size() << "\n";
  if (bad) {
    std::cout << "four-three property: violated by quadruple (" << (*bad)[0]
              << ", " << (*bad)[1] << ", " << (*bad)[2] << ", " << (*bad)[3]
              << ")\n";
    return 1;
  }
  std::cout << "four-three property: holds\n";
  return 0;
}

int cmd_pierce(const std::string& input, const std::string& output,
               const std::string& mode, int max_depth,
               const std::string& render_path) {
  const auto fam = load_family(input);
  const auto cert = pierce::pierce_all(fam, parse_mode(mode), max_depth);
  log::trace(1, "pierce took " + std::to_string(cert.evaluations) +
                    " probe evaluations, path " + cert.path);
  if (!output.empty()) io::save_json(output, io::certificate_to_json(cert));
  if (!render_path.empty())
    write_text(render_path, render::render_certificate(fam, cert));
  std::cout << "path: " << cert.path << "\n";
  std::cout << "points: " << cert.points.size() << "\n";
  for (const auto& p : cert.points) std::cout << "  " << format_point(p) << "\n";
  for (const auto& note : cert.notes) std::cout << "note: " << note << "\n";
  std::cout << "verified: " << (cert.verified ? "yes" : "no") << "\n";
  const bool ok = cert.verified && cert.points.size() <= 9;
  return ok ? 0 : 1;
}

int cmd_oracle(const std::string& input) {
  const auto fam = load_family(input);
  const auto best = oracle::min_piercing(fam, 9);
  PQ_CHECK(best.has_value(),
           "no nine point piercing exists, against the main bound");
  std::cout << "tau: " << best->size() << "\n";
  for (const auto& p : *best) std::cout << "  " << format_point(p) << "\n";
  return 0;
}

int cmd_render(const std::string& input, const std::string& certificate,
               const std::string& output) {
  const auto fam = load_family(input);
  std::string svg;
  if (certificate.empty()) {
    svg = render::render_family(fam);
  } else {
    const auto cert = io::certificate_from_json(io::load_json(certificate));
    svg = render::render_certificate(fam, cert);
  }
  write_text(output, svg);
  return 0;
}

int cmd_bench(const std::string& seeds, int n, const std::string& generator,
              const std::string& mode, int max_depth, bool with_tau) {
  const auto [lo, hi] = parse_seed_range(seeds);
  std::size_t max_cert = 0, max_tau = 0, constructive = 0, total = 0;
  std::cout << "seed\tn\tpath\tpoints\tfallbacks\ttau\n";
  for (std::uint64_t seed = lo; seed <= hi; ++seed) {
    const auto fam = run_generator(generator, seed, n);
    const auto cert = pierce::pierce_all(fam, parse_mode(mode), max_depth);
    std::string tau = "-";
    if (with_tau) {
      const auto best = oracle::min_piercing(fam, 9);
      PQ_CHECK(best.has_value(),
               "no nine point piercing exists, against the main bound");
      max_tau = std::max(max_tau, best->size());
      tau = std::to_string(best->size());
    }
    max_cert = std::max(max_cert, cert.points.size());
    if (cert.fallback_count == 0) ++constructive;
    ++total;
    std::cout << seed << "\t" << fam.size() << "\t" << cert.path << "\t"
              << cert.points.size() << "\t" << cert.fallback_count << "\t"
              << tau << "\n";
  }
  std::cout << "max certificate: " << max_cert << "\n";
  if (with_tau) std::cout << "max tau: " << max_tau << "\n";
  std::cout << "constructive: " << constructive << "/" << total << "\n";
  return 0;
}

int cmd_hardsearch(const std::string& seeds, int n,
                   const std::string& generator, int max_depth) {
  const auto [lo, hi] = parse_seed_range(seeds);
  std::size_t hard = 0, easy = 0, exhausted = 0;
  for (std::uint64_t seed = lo; seed <= hi; ++seed) {
    instance::Family fam;
    try {
      fam = run_generator(generator, seed, n);
    } catch (const invariant_error&) {
      continue;  // generator budget ran out for this seed
    }
    instance::IntersectionCache cache(fam);
    const auto sim = instance::disk_normalizer(fam);
    const auto scaled = instance::apply(sim, fam);
    instance::IntersectionCache scache(scaled);
    const auto found = kkm::kkm_search(scaled, scache, max_depth);
    switch (found.kind) {
      case kkm::SearchKind::Easy:
        ++easy;
        break;
      case kkm::SearchKind::Hard: {
        ++hard;
        std::cout << "hard probe at seed " << seed << ":";
        for (const auto& x : found.eval->config.x)
          std::cout << " " << format_rational(x);
        std::cout << "\n";
        break;
      }
      case kkm::SearchKind::Exhausted:
        ++exhausted;
        break;
    }
  }
  std::cout << "easy: " << easy << "  hard: " << hard
            << "  exhausted: " << exhausted << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"piercing toolkit for planar convex families"};
  app.require_subcommand(1);

  std::string input, output, certificate, render_path;
  std::string generator = "cluster", mode = "constructive", seeds = "1..20";
  std::uint64_t seed = 1;
  int n = 8, max_depth = 3;
  bool with_tau = false;

  const auto generators = CLI::IsMember({"cluster", "random"});
  const auto modes = CLI::IsMember({"constructive", "hybrid", "oracle"});

  auto* gen = app.add_subcommand("generate", "write a generated instance");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--n", n, "number of sets");
  gen->add_option("--generator", generator, "cluster or random")
      ->check(generators);
  gen->add_option("--output", output, "instance file")->required();

  auto* chk = app.add_subcommand("check", "verify the four-three property");
  chk->add_option("--input", input, "instance file")->required();

  auto* prc = app.add_subcommand("pierce", "compute a piercing certificate");
  prc->add_option("--input", input, "instance file")->required();
  prc->add_option("--output", output, "certificate file");
  prc->add_option("--mode", mode, "constructive, hybrid, or oracle")
      ->check(modes);
  prc->add_option("--max-depth", max_depth, "probe subdivision depth");
  prc->add_option("--render", render_path, "also write an SVG scene");

  auto* orc = app.add_subcommand("oracle", "exact minimum piercing");
  orc->add_option("--input", input, "instance file")->required();

  auto* rnd = app.add_subcommand("render", "write an SVG scene");
  rnd->add_option("--input", input, "instance file")->required();
  rnd->add_option("--certificate", certificate, "certificate overlay");
  rnd->add_option("--output", output, "SVG file")->required();

  auto* bch = app.add_subcommand("bench", "corpus statistics table");
  bch->add_option("--seeds", seeds, "seed or LO..HI range");
  bch->add_option("--n", n, "number of sets");
  bch->add_option("--generator", generator, "cluster or random")
      ->check(generators);
  bch->add_option("--mode", mode, "constructive, hybrid, or oracle")
      ->check(modes);
  bch->add_option("--max-depth", max_depth, "probe subdivision depth");
  bch->add_flag("--tau", with_tau, "add an exact oracle tau column");

  auto* hs = app.add_subcommand("hardsearch",
                                "hunt for probes with four witness regions");
  hs->add_option("--seeds", seeds, "seed or LO..HI range");
  hs->add_option("--n", n, "number of sets");
  hs->add_option("--generator", generator, "cluster or random")
      ->check(generators);
  hs->add_option("--max-depth", max_depth, "probe subdivision depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(generator, seed, n, output);
    if (chk->parsed()) return cmd_check(input);
    if (prc->parsed())
      return cmd_pierce(input, output, mode, max_depth, render_path);
    if (orc->parsed()) return cmd_oracle(input);
    if (rnd->parsed()) return cmd_render(input, certificate, output);
    if (bch->parsed())
      return cmd_bench(seeds, n, generator, mode, max_depth, with_tau);
    if (hs->parsed()) return cmd_hardsearch(seeds, n, generator, max_depth);
  } catch (const io::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

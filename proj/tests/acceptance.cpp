// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
//   acceptance [--workdir DIR] [--only K]

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "torusrot/chains.hpp"
#include "torusrot/classify.hpp"
#include "torusrot/cli.hpp"
#include "torusrot/errors.hpp"
#include "torusrot/geom.hpp"
#include "torusrot/maps.hpp"
#include "torusrot/random.hpp"
#include "torusrot/recurrence.hpp"
#include "torusrot/regions.hpp"
#include "torusrot/rotation.hpp"

using namespace torusrot;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const char* kFayad = "fayad:slope=1.6180339887,amp=1,steps=64";
const char* kDisk = "diskrot:cx=0.5,cy=0.5,r=0.3,theta=3.1";

// 1 ---------------------------------------------------------------------------
Outcome equivariance_suite() {
  Outcome o;
  for (const char* spec : {"rigid:ax=0.3,ay=0.7", "shear:c=0.1", "twoshear:a=0.3,b=0.3", kFayad, kDisk}) {
    const double e = equivariance_error(make_map(spec), 1000, 1);
    o.require(e <= 1e-9, std::string(spec) + " error " + sci(e));
    o.note(std::string(spec).substr(0, std::string(spec).find(':')) + " " + sci(e));
  }
  return o;
}

// 2 ---------------------------------------------------------------------------
Outcome rotation_anchors() {
  Outcome o;
  const Vec2 alpha{0.3, 0.7};
  const auto rigid = rotation_set_estimate(make_map("rigid:ax=0.3,ay=0.7"), 100, 8);
  double hd = 0.0;
  for (Vec2 p : rigid.hull) hd = std::max(hd, distance(p, alpha));
  o.require(hd <= 1e-12, "rigid Hausdorff " + sci(hd));
  o.note("rigid Hausdorff " + sci(hd));
  const auto shear = rotation_set_estimate(make_map("shear:c=0.1"), 1000, 32);
  double far = 0.0;
  for (Vec2 p : shear.hull) far = std::max(far, norm(p));
  o.require(far <= 2e-3, "shear hull radius " + sci(far));
  o.note("shear hull radius " + sci(far));
  return o;
}

// 3 ---------------------------------------------------------------------------
Outcome index_suite() {
  Outcome o;
  const double w = index_of_arc(Polyline::regular_polygon({0, 0}, 1.0, 64), {0, 0});
  o.require(std::abs(w - 1.0) <= 1e-9, "64-gon index " + sci(w));
  Rng rng(3);
  double worst_add = 0.0, worst_seg = 0.0;
  int additivity = 0, segments = 0;
  while (additivity < 1000) {
    const auto p = testgen::random_walk(rng, rng.in_box({-1, 1, -1, 1}), 5, 1.0);
    const auto q = testgen::random_walk(rng, p.back(), 5, 1.0);
    const Vec2 z = rng.in_box({-3, 3, -3, 3});
    worst_add = std::max(worst_add, std::abs(index_of_arc(p.concat(q), z) - index_of_arc(p, z) - index_of_arc(q, z)));
    ++additivity;
  }
  while (segments < 1000) {
    const Vec2 a = rng.in_box({-3, 3, -3, 3}), b = rng.in_box({-3, 3, -3, 3}), z = rng.in_box({-3, 3, -3, 3});
    if (point_segment_distance(z, a, b) < 1e-9) continue;
    worst_seg = std::max(worst_seg, std::abs(index_of_arc(Polyline::segment(a, b), z)));
    ++segments;
  }
  o.require(worst_add <= 1e-12, "additivity " + sci(worst_add));
  o.require(worst_seg < 0.5, "segment bound " + sci(worst_seg));
  o.note("64-gon |I-1| " + sci(std::abs(w - 1.0)) + ", additivity " + sci(worst_add) + ", max |I(segment)| " +
         sci(worst_seg));
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome brouwer_suite() {
  Outcome o;
  const int count = 1000;
  Rng rng(4);

  int douady_bad = 0;
  for (int k = 0; k < count; ++k) {
    const auto inst = testgen::douady_instance(rng);
    if (!arcs_intersect(inst.gamma, inst.gamma.translated(inst.v))) ++douady_bad;
  }

  int free_bad = 0, free_done = 0;
  while (free_done < count) {
    const auto K = testgen::random_continuum(rng, {0, 0}, rng.uniform(0.3, 1.5));
    const Vec2 v = testgen::random_vector(rng, 0.1, 2.0);
    if (unions_intersect(K, testgen::translated(K, v))) continue;
    ++free_done;
    for (int n = -10; n <= 10; ++n) {
      if (n != 0 && unions_intersect(K, testgen::translated(K, n * v))) {
        ++free_bad;
        break;
      }
    }
  }

  int orbit_bad = 0, orbit_done = 0, orbit_touching = 0;
  while (orbit_done < count) {
    const Vec2 v = testgen::random_vector(rng, 0.5, 2.0);
    const auto gamma = testgen::random_arc_to_translate(rng, {0, 0}, v, 4, 1.0);
    if (!gamma) continue;
    const std::vector<Polyline> alpha{find_translation_arc(*gamma, v).arc};
    const auto K = testgen::random_continuum(rng, rng.in_box({-2, 2, -2, 2}), rng.uniform(0.2, 1.0));
    if (unions_intersect(K, alpha) || unions_intersect(K, testgen::translated(K, v))) continue;
    ++orbit_done;
    bool forward = false, backward = false;
    for (int i = 0; i <= 20; ++i) {
      forward = forward || unions_intersect(K, testgen::translated(alpha, i * v));
      backward = backward || unions_intersect(K, testgen::translated(alpha, -i * v));
    }
    if (forward && backward) ++orbit_bad;
    if (forward || backward) ++orbit_touching;
  }

  int arc_bad = 0, arc_done = 0;
  while (arc_done < count) {
    const Vec2 v = testgen::random_vector(rng, 0.3, 2.0);
    const auto gamma = testgen::random_arc_to_translate(rng, rng.in_box({-1, 1, -1, 1}), v, 6, 1.5);
    if (!gamma) continue;
    ++arc_done;
    if (!is_translation_arc(find_translation_arc(*gamma, v).arc, v)) ++arc_bad;
  }

  o.require(douady_bad == 0, std::to_string(douady_bad) + " Douady counterexamples");
  o.require(free_bad == 0, std::to_string(free_bad) + " free-translate counterexamples");
  o.require(orbit_bad == 0, std::to_string(orbit_bad) + " half-orbit counterexamples");
  o.require(arc_bad == 0, std::to_string(arc_bad) + " translation-arc counterexamples");
  o.note("instances " + std::to_string(count) + " x4, counterexamples " + std::to_string(douady_bad) + "/" +
         std::to_string(free_bad) + "/" + std::to_string(orbit_bad) + "/" + std::to_string(arc_bad) + ", " +
         std::to_string(orbit_touching) + " continua meet one half orbit");
  return o;
}

// 5 ---------------------------------------------------------------------------
Vec2 frac(Vec2 z) { return {z.x - std::floor(z.x), z.y - std::floor(z.y)}; }

Outcome fill_suite() {
  Outcome o;
  const Box w{-2, 2, -2, 2};
  Rng rng(5);
  int idempotence_bad = 0, equivalence_bad = 0, pairs = 0, with_holes = 0;
  const auto shifts = LatticeSet::punctured().enumerate(window_reach(w));
  for (int k = 0; k < 200; ++k) {
    const auto e = testgen::random_connected_region(rng, w, 8);
    const auto f = fill_region(e);
    if (!(f == e)) ++with_holes;
    if (!(fill_region(f) == f)) ++idempotence_bad;
    for (const LatticeVec v : shifts) {
      ++pairs;
      if (e.meets_translate(v) != f.meets_translate(v)) ++equivalence_bad;
    }
  }
  o.require(idempotence_bad == 0, std::to_string(idempotence_bad) + " non-idempotent fills");
  o.require(equivalence_bad == 0, std::to_string(equivalence_bad) + " translate mismatches");

  const auto disks = region_from_predicate(w, 16, [](Vec2 z) { return distance(frac(z), {0.5, 0.5}) < 0.2; });
  const auto strip = region_from_predicate(w, 16, [](Vec2 z) { return std::abs(frac(z).y - 0.5) < 0.1; });
  const auto sc = essentiality_class(strip);
  o.require(essentiality_class(disks).kind == Essentiality::Inessential, "disk fixture");
  o.require(sc.kind == Essentiality::EssentialNotFully && sc.generators.size() == 1 &&
                canonical_sign(sc.generators[0]) == LatticeVec{1, 0},
            "strip fixture");
  o.require(essentiality_class(disks.complement()).kind == Essentiality::FullyEssential, "complement fixture");
  o.note("200 regions (" + std::to_string(with_holes) + " with holes), " + std::to_string(pairs) +
         " translate pairs, 3 essentiality fixtures");
  return o;
}

// 6 ---------------------------------------------------------------------------
std::int64_t far_cells(const GridRegion& a, const GridRegion& b) {
  std::int64_t far = 0;
  for (const Cell c : a.cells()) {
    if (b.at(c)) continue;
    bool near = false;
    for (int di = -1; di <= 1 && !near; ++di) {
      for (int dj = -1; dj <= 1 && !near; ++dj) near = b.in_grid(c.i + di, c.j + dj) && b.at(c.i + di, c.j + dj);
    }
    if (!near) ++far;
  }
  return far;
}

GridRegion image_raster(const TorusLift& f, const GridRegion& region) {
  GridRegion out(region.window(), region.resolution());
  for (std::int64_t j = 0; j < out.height(); ++j) {
    for (std::int64_t i = 0; i < out.width(); ++i) {
      const auto pre = region.cell_of(f.inverse_apply(out.cell_center(i, j)));
      if (pre && region.at(*pre)) out.set(i, j);
    }
  }
  return out;
}

Outcome omega_suite() {
  Outcome o;
  const Box w{-4, 4, -4, 4};
  const int R = 64;
  const std::int64_t N = 50;
  const auto half = [&](Vec2 v) { return region_from_predicate(w, R, [&](Vec2 c) { return dot(c, v) >= 0; }); };

  const auto id = TorusLift::identity();
  const auto shear = make_map("shear:c=0.1");
  for (Vec2 v : {Vec2{1, 0}, Vec2{1, 1}}) o.require(omega_region(id, v, N, w, R) == half(v), "identity half-plane");
  o.require(omega_region(make_map("rigid:ax=0.3,ay=0"), {1, 0}, N, w, R).empty(), "rigid drift empty");
  o.require(omega_region(shear, {0, 1}, N, w, R) == half({0, 1}), "shear vertical half-plane");

  std::int64_t worst_inv = 0;
  for (const TorusLift* f : {&id, &shear}) {
    for (Vec2 v : {Vec2{1, 0}, Vec2{0, 1}}) {
      const auto om = omega_region(*f, v, N, w, R);
      const auto img = image_raster(*f, om);
      worst_inv = std::max({worst_inv, far_cells(img, om), far_cells(om, img)});
    }
  }
  o.require(worst_inv == 0, "invariance: " + std::to_string(worst_inv) + " cells beyond one-cell layer");

  std::int64_t worst_mono = 0;
  int translate_checks = 0;
  for (const char* spec : {"shear:c=0.1", "twoshear:a=0.05,b=0.05", kDisk}) {
    const auto f = make_map(spec);
    for (Vec2 v : {Vec2{1, 0}, Vec2{0, 1}}) {
      const auto b = b_region(f, v, N, w, R);
      const auto om = omega_region(f, v, N, w, R);
      for (LatticeVec u : {LatticeVec{1, 0}, LatticeVec{0, 1}, LatticeVec{-1, 0}, LatticeVec{0, -1}, LatticeVec{1, 1}}) {
        if (dot(u.to_vec(), v) < 0) continue;
        worst_mono = std::max({worst_mono, far_cells(b.translated(u), b), far_cells(om.translated(u), om)});
        translate_checks += 2;
      }
    }
  }
  o.require(worst_mono == 0, "monotonicity: " + std::to_string(worst_mono) + " cells beyond one-cell layer");
  o.note("exact half-planes and empty drift set; invariance and " + std::to_string(translate_checks) +
         " translate inclusions within one cell");
  return o;
}

// 7 ---------------------------------------------------------------------------
Outcome chain_suite() {
  Outcome o;
  struct Entry {
    const char* name;
    ChainSample chain;
    ChainCase expect;
  };
  std::vector<Entry> corpus{
      {"balls", testgen::ball_chain(), ChainCase::Case1SigmaFreeModLine},
      {"ray", testgen::ray_chain(), ChainCase::Case2AsymptoticDirection},
      {"strip", testgen::strip_chain(), ChainCase::Case3BoundedDeviation},
      {"vertical-shear", build_disk_chain(make_map("twoshear:a=0,b=0.1"), {0, 0.3}, 4, 200, {-4, 4, -4, 4}, 32,
                                          LatticeSet::minus_line({0, 1})),
       ChainCase::Case3BoundedDeviation},
  };
  const double R = 2.0;
  int qc_checked = 0, witnesses = 0;
  for (auto& e : corpus) {
    const auto verdict = classify_chain(e.chain);
    o.require(verdict.kind == e.expect, std::string(e.name) + " classified " + to_string(verdict.kind));
    if (verdict.kind == ChainCase::Case3BoundedDeviation) {
      o.require(verdict.witness.present, std::string(e.name) + " separation witness");
      ++witnesses;
    }
    if (is_r_dense(e.chain.sigma, R, e.chain.window())) {
      o.require(chain_quasiconvexity(e.chain, R + 0.5), std::string(e.name) + " quasiconvexity");
      ++qc_checked;
    }
    if (std::string(e.name) == "ray") {
      const double off = std::acos(std::min(1.0, dot(verdict.u, testgen::ray_direction()))) * 180 / std::numbers::pi;
      o.require(off <= 2.0, "ray direction off by " + sci(off) + " deg");
    }
    if (std::string(e.name) == "strip") o.require(std::abs(verdict.v.y) > 0.999 && verdict.M <= 1.0, "strip v, M");
  }
  o.note(std::to_string(corpus.size()) + " chains classified as built, quasiconvex at r=2.5 for " +
         std::to_string(qc_checked) + ", " + std::to_string(witnesses) + " Case3 witnesses present");
  return o;
}

// 8 ---------------------------------------------------------------------------
Outcome classifier_suite() {
  Outcome o;
  const auto disk = classify_map(make_map(kDisk));
  o.require(disk.kind == TrichotomyCase::FullyEssentialFix, "diskrot -> " + to_string(disk.kind));
  const auto still = classify_map(make_map("rigid:ax=0,ay=0"));
  o.require(still.kind == TrichotomyCase::AllBounded, "rigid(0) -> " + to_string(still.kind));
  const auto shear = classify_map(make_map("shear:c=0.1"));
  o.require(shear.kind == TrichotomyCase::Annular && shear.annular == LatticeVec{0, 1},
            "shear -> " + to_string(shear.kind));

  const auto fayad_lift = make_map(kFayad);
  const auto fayad = classify_map(fayad_lift);
  o.require(fayad.kind == TrichotomyCase::Inconclusive, "fayad -> " + to_string(fayad.kind));
  const Vec2 normal = perp(Vec2{1, kGoldenRatio}) / std::hypot(1.0, kGoldenRatio);
  const double off =
      std::acos(std::min(1.0, std::abs(dot(fayad.evidence.irrational_candidate.direction, normal)))) * 180 /
      std::numbers::pi;
  o.require(off <= 5.0, "candidate direction off by " + sci(off) + " deg");

  const auto est = rotation_set_estimate(fayad_lift, 2000, 32);
  const auto check = pseudo_rotation_check(est, 5e-3);
  o.require(check.irrotational, "fayad irrotational at n=2000, tol 5e-3 (hull diameter " + sci(check.diameter) +
                                    ", centroid (" + sci(check.vector.x) + ", " + sci(check.vector.y) + "))");
  o.note("diskrot/rigid/shear/fayad verdicts " + to_string(disk.kind) + "/" + to_string(still.kind) + "/" +
         to_string(shear.kind) + "/" + to_string(fayad.kind) + ", candidate off " + sci(off) + " deg");
  return o;
}

// 9 ---------------------------------------------------------------------------
Outcome recurrence_suite() {
  Outcome o;
  const auto sampler = MeasureSampler::lebesgue_random(9);
  const double id = lifted_recurrence_fraction(TorusLift::identity(), sampler, 1000, 10000, 0.05).recurrent_fraction;
  o.require(id == 1.0, "identity fraction " + sci(id));
  const double drift =
      lifted_recurrence_fraction(make_map("rigid:ax=0.5,ay=0"), sampler, 1000, 10000, 0.1).recurrent_fraction;
  o.require(drift == 0.0, "rigid drift fraction " + sci(drift));
  std::string disk_note;
  for (double eps : {1e-3, 0.01, 0.05}) {
    const double d = lifted_recurrence_fraction(make_map(kDisk), sampler, 1000, 10000, eps).recurrent_fraction;
    o.require(d >= 0.99, "diskrot fraction " + sci(d) + " at eps " + sci(eps));
    disk_note += (disk_note.empty() ? "" : "/") + sci(d);
  }
  const auto survey = atkinson_survey(make_map("twoshear:a=0.05,b=0.05"), {1, 0}, 100, 100000, 0.05, 0);
  o.require(survey.hit_rate >= 0.9, "Atkinson hit rate " + sci(survey.hit_rate));
  o.note("identity 1, drift 0, diskrot " + disk_note + ", Atkinson hit rate " + sci(survey.hit_rate));
  return o;
}

// 10 --------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism_suite(const fs::path& workdir) {
  Outcome o;
  // {argv with @ standing for the run directory, files to compare}
  struct Command {
    std::vector<std::string> args;
    std::vector<std::string> files;
  };
  const std::vector<Command> commands{
      {{"rotset", "--map", "rigid:ax=0.25,ay=0", "--n", "100", "--grid", "8", "--out", "@/r.json", "--svg", "@/r.svg"},
       {"r.json"}},
      {{"rotset", "--map", "twoshear:a=0.3,b=0.3", "--n", "200", "--grid", "16", "--out", "@/r2.json"}, {"r2.json"}},
      {{"classify", "--map", kDisk, "--out", "@/v.json"}, {"v.json"}},
      {{"classify", "--map", "shear:c=0.1", "--out", "@/v2.json"}, {"v2.json"}},
      {{"recur", "--map", "rigid:ax=0.5,ay=0", "--samples", "100", "--N", "1000", "--eps", "0.1", "--out", "@/rep.json",
        "--csv", "@/rep.csv"},
       {"rep.json", "rep.csv"}},
      {{"recur", "--map", kDisk, "--samples", "200", "--N", "10000", "--eps", "0.01", "--seed", "7", "--out",
        "@/rep2.json", "--csv", "@/rep2.csv"},
       {"rep2.json", "rep2.csv"}},
      {{"atkinson", "--map", "twoshear:a=0.05,b=0.05", "--x", "0.3,0.6", "--N", "100000", "--out", "@/a.csv", "--json",
        "@/a.json"},
       {"a.csv", "a.json"}},
      {{"omega", "--map", "shear:c=0.1", "--v", "1,0", "--N", "50", "--out", "@/o.trgr", "--json", "@/o.json"},
       {"o.json", "o.trgr"}},
      {{"ueps", "--map", "twoshear:a=0.1,b=0.1", "--z", "0.3,0.3", "--eps", "0.1", "--N", "100", "--out", "@/u.trgr",
        "--json", "@/u.json"},
       {"u.json", "u.trgr"}},
      {{"chain", "--map", "twoshear:a=0,b=0.1", "--z", "0,0.3", "--depth", "4", "--N", "200", "--resolution", "32",
        "--sigma", "minus:0,1", "--out", "@/c.json"},
       {"c.json", "c.level3.trgr"}},
  };
  int compared = 0;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    std::string stdout_text[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = workdir / ("run" + std::to_string(run));
      fs::create_directories(dir);
      std::vector<std::string> args;
      for (const auto& a : commands[k].args) args.push_back(a.rfind("@/", 0) == 0 ? (dir / a.substr(2)).string() : a);
      std::ostringstream out, err;
      const int code = run_command(args, out, err);
      o.require(code == kExitOk, commands[k].args[0] + " exited " + std::to_string(code) + ": " + err.str());
      stdout_text[run] = out.str();
    }
    o.require(stdout_text[0] == stdout_text[1], commands[k].args[0] + " stdout differs");
    for (const auto& f : commands[k].files) {
      const std::string a = slurp(workdir / "run0" / f), b = slurp(workdir / "run1" / f);
      o.require(!a.empty() && a == b, f + " differs between runs");
      ++compared;
    }
  }
  o.note(std::to_string(commands.size()) + " commands, " + std::to_string(compared) + " files byte-identical");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string workdir = (fs::temp_directory_path() / "torusrot_acceptance").string();
  int only = 0;
  app.add_option("--workdir", workdir, "Scratch directory for CLI outputs");
  app.add_option("--only", only, "Run a single criterion (1-10)")->check(CLI::Range(0, 10));
  CLI11_PARSE(app, argc, argv);
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"equivariance suite", 10, equivariance_suite},
      {"rotation-set anchors", 30, rotation_anchors},
      {"index suite", 60, index_suite},
      {"translation property suite", 120, brouwer_suite},
      {"fill/essentiality suite", 60, fill_suite},
      {"omega-set suite", 120, omega_suite},
      {"chain trichotomy suite", 120, chain_suite},
      {"classifier end-to-end", 300, classifier_suite},
      {"recurrence suite", 300, recurrence_suite},
      {"determinism", 600, [&] { return determinism_suite(workdir); }},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && static_cast<int>(k + 1) != only) continue;
    const auto& c = criteria[k];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.limit_s, "runtime over " + sci(c.limit_s) + " s");
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %zu %s: %s (%.1f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", k + 1, c.name,
                o.detail.c_str(), secs, c.limit_s);
  }
  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}

#include "torusrot/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "torusrot/chains.hpp"
#include "torusrot/classify.hpp"
#include "torusrot/errors.hpp"
#include "torusrot/parallel.hpp"
#include "torusrot/recurrence.hpp"
#include "torusrot/regions.hpp"
#include "torusrot/report.hpp"
#include "torusrot/rotation.hpp"

namespace torusrot {

namespace {

const std::vector<std::string> kSubcommands{"rotset", "classify", "omega", "ueps", "chain", "recur", "atkinson"};

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(x)) {
      throw InvalidArgument(std::string(what) + ": bad number '" + item + "'");
    }
    out.push_back(x);
  }
  if (out.size() != expected) {
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(expected) + " comma-separated numbers");
  }
  return out;
}

Vec2 parse_vec(const std::string& text, const char* what) {
  const auto v = parse_numbers(text, 2, what);
  return {v[0], v[1]};
}

Box parse_window(const std::string& text) {
  const auto v = parse_numbers(text, 4, "--window");
  return {v[0], v[1], v[2], v[3]};
}

LatticeSet parse_sigma(const std::string& text) {
  if (text == "punctured" || text == "all") return LatticeSet::punctured();
  if (text.rfind("minus:", 0) == 0) return LatticeSet::minus_line(parse_vec(text.substr(6), "--sigma"));
  throw InvalidArgument("--sigma: expected 'punctured' or 'minus:dx,dy'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string hull_svg(const RotationSetEstimate& est) {
  double extent = 1.0;
  for (Vec2 p : est.hull) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  const double s = 0.9 / extent;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1 -1 2 2\" width=\"400\" height=\"400\">\n"
      << "<g transform=\"scale(1,-1)\">\n"
      << "<line x1=\"-1\" y1=\"0\" x2=\"1\" y2=\"0\" stroke=\"#bbb\" stroke-width=\"0.005\"/>\n"
      << "<line x1=\"0\" y1=\"-1\" x2=\"0\" y2=\"1\" stroke=\"#bbb\" stroke-width=\"0.005\"/>\n";
  if (est.hull.size() >= 3) {
    svg << "<polygon points=\"";
    for (std::size_t k = 0; k < est.hull.size(); ++k) {
      svg << (k ? " " : "") << fmt(s * est.hull[k].x) << ',' << fmt(s * est.hull[k].y);
    }
    svg << "\" fill=\"#4a90d9\" fill-opacity=\"0.35\" stroke=\"#1f4e79\" stroke-width=\"0.006\"/>\n";
  } else if (est.hull.size() == 2) {
    svg << "<line x1=\"" << fmt(s * est.hull[0].x) << "\" y1=\"" << fmt(s * est.hull[0].y) << "\" x2=\""
        << fmt(s * est.hull[1].x) << "\" y2=\"" << fmt(s * est.hull[1].y)
        << "\" stroke=\"#1f4e79\" stroke-width=\"0.01\"/>\n";
  }
  for (Vec2 p : est.hull) {
    svg << "<circle cx=\"" << fmt(s * p.x) << "\" cy=\"" << fmt(s * p.y) << "\" r=\"0.012\" fill=\"#1f4e79\"/>\n";
  }
  svg << "</g>\n<text x=\"-0.97\" y=\"-0.9\" font-size=\"0.06\">scale " << fmt(s) << "</text>\n</svg>\n";
  return svg.str();
}

std::string config_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string joined;
    for (std::size_t k = 0; k < v.size(); ++k) joined += (k ? "," : "") + config_value(v[k]);
    return joined;
  }
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_real(v.get<double>());
  throw InvalidArgument("--config: unsupported value " + v.dump());
}

struct Common {
  std::string map;
  std::string out;
};

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw InvalidArgument("--config requires a path");
      path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream f(path);
  if (!f) throw InvalidArgument("--config: cannot open " + path);
  Json cfg;
  try {
    cfg = Json::parse(f);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("--config: ") + e.what());
  }
  if (!cfg.is_object()) throw InvalidArgument("--config: top level must be an object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back("--" + key);
      continue;
    }
    injected.push_back("--" + key);
    injected.push_back(config_value(value));
  }
  auto pos = std::find_if(rest.begin(), rest.end(), [](const std::string& a) {
    return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
  });
  if (pos == rest.end()) {
    rest.insert(rest.begin(), injected.begin(), injected.end());
  } else {
    rest.insert(pos + 1, injected.begin(), injected.end());
  }
  return rest;
}

int run_command(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation sets, regions and recurrence for lifts of torus homeomorphisms", "torusrot"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "Worker threads (0: TORUSROT_THREADS or hardware)");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--config", "JSON file whose keys mirror the flags");  // consumed by expand_config

  Common common;
  auto add_common = [&](CLI::App* sub, bool out_required) {
    sub->add_option("--map", common.map, "Map spec, e.g. shear:c=0.1")->required();
    auto* o = sub->add_option("--out", common.out, "Output path");
    if (out_required) o->required();
  };

  std::string window_text = "-4,4,-4,4";
  int resolution = 64;
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--window", window_text, "x0,x1,y0,y1 (integers)");
    sub->add_option("--resolution", resolution, "Cells per unit");
  };

  // rotset
  auto* rotset = app.add_subcommand("rotset", "Rotation set estimate");
  add_common(rotset, false);
  std::int64_t rot_n = 1000;
  int rot_grid = 32;
  double rot_tol = 1e-3;
  std::string svg_path;
  rotset->add_option("--n", rot_n, "Iterates")->check(CLI::PositiveNumber);
  rotset->add_option("--grid", rot_grid, "Base points per side")->check(CLI::PositiveNumber);
  rotset->add_option("--tol", rot_tol, "Pseudo-rotation tolerance")->check(CLI::PositiveNumber);
  rotset->add_option("--svg", svg_path, "SVG hull plot");

  // classify
  auto* classify = app.add_subcommand("classify", "Trichotomy verdict");
  add_common(classify, false);
  add_grid(classify);
  ClassifyParams cparams;
  classify->add_option("--samples", cparams.samples)->check(CLI::PositiveNumber);
  classify->add_option("--N", cparams.N)->check(CLI::PositiveNumber);
  classify->add_option("--denom-max", cparams.denom_max)->check(CLI::PositiveNumber);
  classify->add_option("--M", cparams.M_threshold)->check(CLI::PositiveNumber);

  // omega
  auto* omega = app.add_subcommand("omega", "omega_v / B_v raster");
  add_common(omega, false);
  add_grid(omega);
  std::string v_text = "1,0";
  std::int64_t omega_N = 50;
  std::string variant = "omega";
  std::string png_path, json_path;
  omega->add_option("--v", v_text, "Half-plane normal vx,vy");
  omega->add_option("--N", omega_N)->check(CLI::NonNegativeNumber);
  omega->add_option("--variant", variant)->check(CLI::IsMember({"omega", "b"}));
  omega->add_option("--png", png_path);
  omega->add_option("--json", json_path);

  // ueps
  auto* ueps = app.add_subcommand("ueps", "U_eps(z) raster");
  add_common(ueps, false);
  add_grid(ueps);
  std::string z_text = "0.5,0.5";
  double eps = 0.1;
  std::int64_t ueps_N = 200;
  ueps->add_option("--z", z_text, "Base point x,y");
  ueps->add_option("--eps", eps)->check(CLI::PositiveNumber);
  ueps->add_option("--N", ueps_N)->check(CLI::NonNegativeNumber);
  ueps->add_option("--png", png_path);
  ueps->add_option("--json", json_path);

  // chain
  auto* chain = app.add_subcommand("chain", "Dynamical chain and its trichotomy case");
  add_common(chain, true);
  add_grid(chain);
  int depth = 4;
  std::int64_t chain_N = 200;
  std::string sigma_text = "punctured";
  chain->add_option("--z", z_text, "Base point x,y");
  chain->add_option("--depth", depth)->check(CLI::Range(2, 64));
  chain->add_option("--N", chain_N)->check(CLI::NonNegativeNumber);
  chain->add_option("--sigma", sigma_text, "punctured | minus:dx,dy");

  // recur
  auto* recur = app.add_subcommand("recur", "Lifted recurrence fraction");
  add_common(recur, false);
  std::string sampler_kind = "random";
  std::string base_text = "0.5,0.5";
  int samples = 1000;
  std::int64_t recur_N = 10000;
  double recur_eps = 0.05;
  std::string csv_path;
  std::int64_t caveat_n = 100;
  recur->add_option("--sampler", sampler_kind)->check(CLI::IsMember({"random", "grid", "orbit", "point"}));
  recur->add_option("--base", base_text, "Base point for orbit/point samplers");
  recur->add_option("--samples", samples)->check(CLI::PositiveNumber);
  recur->add_option("--N", recur_N)->check(CLI::PositiveNumber);
  recur->add_option("--eps", recur_eps)->check(CLI::PositiveNumber);
  recur->add_option("--csv", csv_path);
  recur->add_option("--caveat-n", caveat_n, "Horizon of the attached rotation-set diameter")
      ->check(CLI::PositiveNumber);

  // atkinson
  auto* atkinson = app.add_subcommand("atkinson", "Directional recurrence search");
  add_common(atkinson, false);
  std::string v0_text = "1,0";
  std::string x_text = "0.5,0.5";
  std::int64_t atk_N = 10000;
  double atk_eps = 0.05;
  atkinson->add_option("--v0", v0_text);
  atkinson->add_option("--x", x_text);
  atkinson->add_option("--N", atk_N)->check(CLI::PositiveNumber);
  atkinson->add_option("--eps", atk_eps)->check(CLI::PositiveNumber);
  atkinson->add_option("--json", json_path);

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInvalid;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    set_thread_count(threads);
    const TorusLift lift = parse_map_spec(common.map);

    if (rotset->parsed()) {
      const auto est = rotation_set_estimate(lift, rot_n, rot_grid);
      const auto check = pseudo_rotation_check(est, rot_tol);
      Json j = rotation_json(est, check);
      j["map_spec"] = lift.spec();
      j["grid"] = rot_grid;
      j["tol"] = rot_tol;
      emit(common.out, dump(j), out);
      if (!svg_path.empty()) write_file(svg_path, hull_svg(est));
    } else if (classify->parsed()) {
      cparams.window = parse_window(window_text);
      cparams.resolution = resolution;
      cparams.seed = seed;
      const auto verdict = classify_map(lift, cparams);
      emit(common.out, dump(verdict_json(lift.spec(), verdict, cparams)), out);
    } else if (omega->parsed()) {
      const Vec2 v = parse_vec(v_text, "--v");
      const Box window = parse_window(window_text);
      const auto region = variant == "omega" ? omega_region(lift, v, omega_N, window, resolution)
                                             : b_region(lift, v, omega_N, window, resolution);
      Json j = region_summary_json(region);
      j["map_spec"] = lift.spec();
      j["variant"] = variant;
      j["v"] = vec_json(v);
      j["N"] = omega_N;
      if (!common.out.empty()) save_raster(common.out, region);
      if (!png_path.empty()) save_png(png_path, region);
      if (!json_path.empty()) {
        write_file(json_path, dump(j));
      } else if (common.out.empty()) {
        out << dump(j);
      }
    } else if (ueps->parsed()) {
      const Vec2 z = parse_vec(z_text, "--z");
      const auto result = u_epsilon_region(lift, z, eps, ueps_N, parse_window(window_text), resolution);
      Json j = region_summary_json(result.region);
      j["map_spec"] = lift.spec();
      j["z"] = vec_json(z);
      j["eps"] = eps;
      j["N"] = ueps_N;
      j["period"] = result.period ? Json(*result.period) : Json(nullptr);
      j["free"] = result.free;
      if (!common.out.empty()) save_raster(common.out, result.region);
      if (!png_path.empty()) save_png(png_path, result.region);
      if (!json_path.empty()) {
        write_file(json_path, dump(j));
      } else if (common.out.empty()) {
        out << dump(j);
      }
    } else if (chain->parsed()) {
      const Vec2 z = parse_vec(z_text, "--z");
      const auto sample =
          build_disk_chain(lift, z, depth, chain_N, parse_window(window_text), resolution, parse_sigma(sigma_text));
      const auto verdict = classify_chain(sample);
      const std::filesystem::path manifest(common.out);
      std::vector<std::string> files;
      for (std::size_t k = 0; k < sample.levels.size(); ++k) {
        const std::string name = manifest.stem().string() + ".level" + std::to_string(k) + ".trgr";
        save_raster((manifest.parent_path() / name).string(), sample.levels[k]);
        files.push_back(name);
      }
      Json j = chain_manifest_json(sample, files, verdict);
      j["map_spec"] = lift.spec();
      j["N"] = chain_N;
      write_file(common.out, dump(j));
    } else if (recur->parsed()) {
      MeasureSampler sampler = MeasureSampler::lebesgue_random(seed);
      if (sampler_kind == "grid") sampler = MeasureSampler::lebesgue_grid();
      if (sampler_kind == "orbit") sampler = MeasureSampler::orbit(parse_vec(base_text, "--base"));
      if (sampler_kind == "point") sampler = MeasureSampler::point_mass(parse_vec(base_text, "--base"));
      auto report = lifted_recurrence_fraction(lift, sampler, samples, recur_N, recur_eps);
      report.rotation_diameter = rotation_set_estimate(lift, caveat_n, 8).diameter;
      Json j = recurrence_json(report);
      j["map_spec"] = lift.spec();
      j["sampler"] = sampler_kind;
      j["seed"] = seed;
      emit(common.out, dump(j), out);
      if (!csv_path.empty()) {
        std::ostringstream csv;
        write_recurrence_csv(csv, report);
        write_file(csv_path, csv.str());
      }
    } else if (atkinson->parsed()) {
      const auto hits = atkinson_search(lift, parse_vec(v0_text, "--v0"), parse_vec(x_text, "--x"), atk_N, atk_eps);
      std::ostringstream csv;
      write_atkinson_csv(csv, hits);
      emit(common.out, csv.str(), out);
      if (!json_path.empty()) {
        Json j = atkinson_json(hits);
        j["map_spec"] = lift.spec();
        write_file(json_path, dump(j));
      }
    }
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace torusrot

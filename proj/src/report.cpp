#include "torusrot/report.hpp"

#include "torusrot/errors.hpp"

namespace torusrot {

Json vec_json(Vec2 v) { return Json::array({v.x, v.y}); }

Json lattice_json(LatticeVec v) { return Json::array({v.a, v.b}); }

Json window_json(const Box& b) { return Json::array({b.x0, b.x1, b.y0, b.y1}); }

Json rotation_json(const RotationSetEstimate& est, const PseudoRotationCheck& check) {
  Json hull = Json::array();
  for (Vec2 p : est.hull) hull.push_back(vec_json(p));
  return {{"n", est.n},
          {"sample_count", est.sample_count},
          {"diameter", est.diameter},
          {"hull", hull},
          {"pseudo_rotation", check.pseudo_rotation},
          {"irrotational", check.irrotational},
          {"vector", vec_json(check.vector)}};
}

Json measure_json(const MeasureEstimate& est) {
  return {{"mean", vec_json(est.mean)},
          {"standard_error", vec_json(est.standard_error)},
          {"count", est.count},
          {"reliable", est.reliable}};
}

Json essentiality_json(const EssentialityClass& c) {
  Json gens = Json::array();
  for (LatticeVec g : c.generators) gens.push_back(lattice_json(g));
  return {{"class", to_string(c.kind)}, {"rank", c.rank}, {"generators", gens}};
}

Json region_summary_json(const GridRegion& region) {
  Json ess = nullptr;
  const Box& w = region.window();
  if (w.x1 - w.x0 >= 3.0 && w.y1 - w.y0 >= 3.0 && is_torus_periodic(region)) {
    ess = essentiality_json(essentiality_class(region));
  }
  return {{"window", window_json(w)},
          {"resolution", region.resolution()},
          {"width", region.width()},
          {"height", region.height()},
          {"cells_total", region.cell_total()},
          {"cells_marked", region.count()},
          {"components", label_components(region, Connectivity::Four).count},
          {"touches_boundary", region.touches_boundary()},
          {"essentiality", ess}};
}

Json chain_verdict_json(const ChainVerdict& v) {
  Json params = Json::object();
  Json evidence = Json::object();
  switch (v.kind) {
    case ChainCase::Case1SigmaFreeModLine: {
      params["w"] = lattice_json(v.w);
      Json blocked = Json::array();
      for (LatticeVec b : v.non_free) blocked.push_back(lattice_json(b));
      evidence["free_level"] = v.free_level;
      evidence["non_free"] = blocked;
      break;
    }
    case ChainCase::Case2AsymptoticDirection:
      params["u"] = vec_json(v.u);
      evidence["spread_deg"] = v.spread_deg;
      evidence["direction_intervals"] = v.direction_intervals;
      break;
    case ChainCase::Case3BoundedDeviation:
    case ChainCase::Undetermined:
      if (v.kind == ChainCase::Case3BoundedDeviation) {
        params["v"] = vec_json(v.v);
        params["M"] = v.M;
      }
      evidence["direction_intervals"] = v.direction_intervals;
      evidence["separation_witness"] = {{"present", v.witness.present},
                                        {"upper_cells", v.witness.upper_cells},
                                        {"lower_cells", v.witness.lower_cells},
                                        {"upper_components", v.witness.upper_components},
                                        {"lower_components", v.witness.lower_components}};
      break;
  }
  if (!v.note.empty()) evidence["note"] = v.note;
  return {{"case", to_string(v.kind)}, {"parameters", params}, {"evidence", evidence}};
}

Json chain_manifest_json(const ChainSample& chain, const std::vector<std::string>& level_files,
                         const ChainVerdict& verdict) {
  if (level_files.size() != chain.levels.size()) throw InvalidArgument("chain manifest: one file per level");
  Json levels = Json::array();
  for (std::size_t k = 0; k < chain.levels.size(); ++k) {
    levels.push_back({{"index", k}, {"file", level_files[k]}, {"cells", chain.levels[k].count()}});
  }
  return {{"window", window_json(chain.window())},
          {"resolution", chain.levels.front().resolution()},
          {"anchor", vec_json(chain.anchor)},
          {"sigma", chain.sigma.describe()},
          {"levels", levels},
          {"verdict", chain_verdict_json(verdict)}};
}

Json recurrence_json(const RecurrenceReport& r) {
  Json out = {{"sample_count", r.sample_count},
              {"horizon", r.horizon},
              {"epsilon", r.epsilon},
              {"recurrent_fraction", r.recurrent_fraction}};
  Json returns = Json::array();
  for (const auto& n : r.first_return) returns.push_back(n ? Json(*n) : Json(nullptr));
  out["first_return"] = returns;
  out["rotation_diameter"] = r.rotation_diameter ? Json(*r.rotation_diameter) : Json(nullptr);
  return out;
}

Json atkinson_json(const std::vector<AtkinsonHit>& hits) {
  Json list = Json::array();
  for (const auto& h : hits) {
    list.push_back({{"n", h.n}, {"torus_distance", h.torus_distance}, {"directional_sum", h.directional_sum}});
  }
  return {{"count", hits.size()}, {"hits", list}};
}

Json verdict_json(const std::string& map_spec, const TrichotomyVerdict& verdict, const ClassifyParams& p) {
  const auto& ev = verdict.evidence;
  Json annular = Json::array();
  for (LatticeVec v : ev.annular_directions) annular.push_back(lattice_json(v));
  Json out = {{"map_spec", map_spec},
              {"case", to_string(verdict.kind)},
              {"evidence",
               {{"fix_class", essentiality_json(ev.fix_class)},
                {"fixed_cells", ev.fixed_cells},
                {"fixed_tolerance", ev.fixed_tolerance},
                {"max_extent", ev.max_extent},
                {"annular_directions", annular},
                {"irrational_candidate",
                 {{"direction", vec_json(ev.irrational_candidate.direction)},
                  {"extent", ev.irrational_candidate.extent}}},
                {"equivariance_error", ev.equivariance_error}}},
              {"parameters",
               {{"samples", p.samples},
                {"N", p.N},
                {"denom_max", p.denom_max},
                {"M_threshold", p.M_threshold},
                {"window", window_json(p.window)},
                {"resolution", p.resolution},
                {"seed", p.seed}}}};
  if (verdict.kind == TrichotomyCase::Annular) out["direction"] = lattice_json(verdict.annular);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace torusrot

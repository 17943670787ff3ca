#include "torusrot/classify.hpp"

#include "torusrot/errors.hpp"

namespace torusrot {

std::string to_string(TrichotomyCase c) {
  switch (c) {
    case TrichotomyCase::FullyEssentialFix:
      return "FullyEssentialFix";
    case TrichotomyCase::AllBounded:
      return "AllBounded";
    case TrichotomyCase::Annular:
      return "Annular";
    case TrichotomyCase::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

TrichotomyVerdict classify_map(const TorusLift& lift, const ClassifyParams& params) {
  if (params.samples < 1) throw InvalidArgument("classify_map: samples must be >= 1");
  if (params.N < 1) throw InvalidArgument("classify_map: N must be >= 1");
  if (params.denom_max < 1) throw InvalidArgument("classify_map: denom_max must be >= 1");
  if (!(params.M_threshold > 0.0)) throw InvalidArgument("classify_map: M_threshold must be positive");

  TrichotomyVerdict verdict;
  auto& ev = verdict.evidence;
  ev.equivariance_error = equivariance_error(lift, 64, params.seed);
  if (!(ev.equivariance_error <= 1e-6)) throw InvalidArgument("classify_map: lift fails the equivariance check");

  ev.fixed_tolerance = default_fixed_tolerance(lift);
  const auto fixed = fixed_region(lift, ev.fixed_tolerance, params.window, params.resolution);
  ev.fixed_cells = fixed.count();
  ev.fix_class = essentiality_class(fixed);

  const auto orbits = sample_orbits(lift, params.samples, params.N, params.seed);
  ev.max_extent = orbits.max_extent();
  ev.annular_directions = annularity_scan(orbits, params.denom_max, params.M_threshold);
  ev.irrational_candidate = best_bounded_direction(orbits);

  if (ev.max_extent <= ev.fixed_tolerance) {
    verdict.kind = TrichotomyCase::AllBounded;
  } else if (ev.fix_class.kind == Essentiality::FullyEssential) {
    verdict.kind = TrichotomyCase::FullyEssentialFix;
  } else if (!ev.annular_directions.empty()) {
    verdict.kind = TrichotomyCase::Annular;
    verdict.annular = ev.annular_directions.front();
  } else if (ev.max_extent <= params.M_threshold) {
    verdict.kind = TrichotomyCase::AllBounded;
  } else {
    verdict.kind = TrichotomyCase::Inconclusive;
  }
  return verdict;
}

}  // namespace torusrot

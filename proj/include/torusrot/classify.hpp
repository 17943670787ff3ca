#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torusrot/geom.hpp"
#include "torusrot/maps.hpp"
#include "torusrot/regions.hpp"
#include "torusrot/rotation.hpp"

namespace torusrot {

enum class TrichotomyCase { FullyEssentialFix, AllBounded, Annular, Inconclusive };

std::string to_string(TrichotomyCase c);

struct ClassifyParams {
  int samples = 32;
  std::int64_t N = 10000;
  int denom_max = 5;
  double M_threshold = 10.0;
  Box window{-4.0, 4.0, -4.0, 4.0};
  int resolution = 64;
  std::uint64_t seed = 0;
};

struct TrichotomyEvidence {
  EssentialityClass fix_class;
  std::int64_t fixed_cells = 0;
  double fixed_tolerance = 0.0;
  double max_extent = 0.0;
  std::vector<LatticeVec> annular_directions;
  BoundedDirection irrational_candidate;
  double equivariance_error = 0.0;
};

struct TrichotomyVerdict {
  TrichotomyCase kind = TrichotomyCase::Inconclusive;
  LatticeVec annular{0, 0};  // set for Annular
  TrichotomyEvidence evidence;
};

// Order: stationary sampled orbits -> AllBounded; fully essential fixed set
// -> FullyEssentialFix; a bounded rational direction -> Annular (first in
// primitive_directions order); bounded extents -> AllBounded; else
// Inconclusive. Every evidence field is filled regardless of the outcome.
TrichotomyVerdict classify_map(const TorusLift& lift, const ClassifyParams& params = {});

}  // namespace torusrot

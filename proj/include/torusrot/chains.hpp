#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torusrot/geom.hpp"
#include "torusrot/maps.hpp"
#include "torusrot/regions.hpp"

namespace torusrot {

// Decreasing sequence of connected rasters together with the translation set
// sigma. `anchor` is the base point the chain shrinks towards.
struct ChainSample {
  std::vector<GridRegion> levels;
  LatticeSet sigma = LatticeSet::punctured();
  Vec2 anchor{};

  const GridRegion& deepest() const { return levels.back(); }
  const Box& window() const { return levels.front().window(); }
};

// Checks nesting, connectivity and a shared grid; throws InvalidArgument.
ChainSample make_chain(std::vector<GridRegion> levels, LatticeSet sigma, Vec2 anchor);

// levels[n] = U_{1/(n+1)}(z), each intersected with the previous level and
// cut back to the component of z.
ChainSample build_disk_chain(const TorusLift& lift, Vec2 z, int depth, std::int64_t N, const Box& window,
                             int resolution, LatticeSet sigma = LatticeSet::punctured());

// Least level index n with levels[n] and levels[n] + v disjoint.
std::optional<int> chain_free_check(const ChainSample& chain, LatticeVec v);

// Largest |a|, |b| for which a translate can still meet the window.
std::int64_t window_reach(const Box& window);

enum class ChainCase { Case1SigmaFreeModLine, Case2AsymptoticDirection, Case3BoundedDeviation, Undetermined };

std::string to_string(ChainCase c);

struct SeparationWitness {
  bool present = false;
  std::int64_t upper_cells = 0;  // complement cells with p_v >= M + 1
  std::int64_t lower_cells = 0;  // complement cells with p_v <= -(M + 1)
  int upper_components = 0;
  int lower_components = 0;
};

struct ChainVerdict {
  ChainCase kind = ChainCase::Undetermined;
  // Case1
  LatticeVec w{1, 0};
  int free_level = -1;
  std::vector<LatticeVec> non_free;
  // Case2
  Vec2 u{};
  double spread_deg = 0.0;
  int direction_intervals = 0;
  // Case3
  Vec2 v{};
  double M = 0.0;
  SeparationWitness witness;
  std::string note;
};

inline constexpr double kAsymptoticWidthDeg = 10.0;

ChainVerdict classify_chain(const ChainSample& chain);

bool chain_quasiconvexity(const ChainSample& chain, double r);

}  // namespace torusrot

#include "torusrot/chains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "torusrot/errors.hpp"

namespace torusrot {

namespace {

int component_count(const GridRegion& g) { return label_components(g, Connectivity::Four).count; }

Vec2 canonical_unit(Vec2 v) {
  v = v / norm(v);
  if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -v;
  return v + Vec2{0.0, 0.0};  // clears negative zeros
}

LatticeVec primitive_of(LatticeVec v) {
  const auto g = gcd_abs(v.a, v.b);
  return canonical_sign(LatticeVec{v.a / g, v.b / g});
}

}  // namespace

ChainSample make_chain(std::vector<GridRegion> levels, LatticeSet sigma, Vec2 anchor) {
  if (levels.empty()) throw InvalidArgument("make_chain: at least one level required");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!levels[k].same_grid(levels[0])) throw InvalidArgument("make_chain: levels must share a grid");
    if (component_count(levels[k]) != 1) throw InvalidArgument("make_chain: every level must be connected");
    if (k > 0 && !levels[k].subset_of(levels[k - 1])) throw InvalidArgument("make_chain: levels must decrease");
  }
  return ChainSample{std::move(levels), std::move(sigma), anchor};
}

ChainSample build_disk_chain(const TorusLift& lift, Vec2 z, int depth, std::int64_t N, const Box& window,
                             int resolution, LatticeSet sigma) {
  if (depth < 2) throw InvalidArgument("build_disk_chain: depth must be >= 2");
  std::vector<GridRegion> levels;
  for (int n = 0; n < depth; ++n) {
    GridRegion level = u_epsilon_region(lift, z, 1.0 / (n + 1), N, window, resolution).region;
    if (!levels.empty()) level = connected_component(level & levels.back(), z);
    levels.push_back(std::move(level));
  }
  return make_chain(std::move(levels), std::move(sigma), z);
}

std::optional<int> chain_free_check(const ChainSample& chain, LatticeVec v) {
  for (std::size_t n = 0; n < chain.levels.size(); ++n) {
    const GridRegion& level = chain.levels[n];
    if (!level.meets_translate(v)) return static_cast<int>(n);
  }
  return std::nullopt;
}

std::int64_t window_reach(const Box& window) {
  return static_cast<std::int64_t>(std::max(window.x1 - window.x0, window.y1 - window.y0));
}

std::string to_string(ChainCase c) {
  switch (c) {
    case ChainCase::Case1SigmaFreeModLine:
      return "Case1SigmaFreeModLine";
    case ChainCase::Case2AsymptoticDirection:
      return "Case2AsymptoticDirection";
    case ChainCase::Case3BoundedDeviation:
      return "Case3BoundedDeviation";
    case ChainCase::Undetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

ChainVerdict classify_chain(const ChainSample& chain) {
  if (chain.levels.empty()) throw InvalidArgument("classify_chain: empty chain");
  std::vector<LatticeVec> sigma;
  for (LatticeVec v : chain.sigma.enumerate(window_reach(chain.window()))) {
    if (!v.is_zero()) sigma.push_back(v);
  }
  for (LatticeVec v : sigma) {
    if (!chain_free_check(chain, v)) {
      throw PreconditionError("classify_chain: chain is not eventually free for (" + std::to_string(v.a) + "," +
                              std::to_string(v.b) + ")");
    }
  }

  ChainVerdict verdict;

  // Case 1: a level inside the window whose non-free sigma vectors lie on one line.
  for (std::size_t n = 0; n < chain.levels.size(); ++n) {
    const GridRegion& level = chain.levels[n];
    if (level.touches_boundary()) continue;
    std::vector<LatticeVec> blocked;
    for (LatticeVec v : sigma) {
      if (level.meets_translate(v)) blocked.push_back(v);
    }
    const bool collinear = std::all_of(blocked.begin(), blocked.end(), [&](LatticeVec v) {
      return v.a * blocked.front().b - v.b * blocked.front().a == 0;
    });
    if (collinear) {
      verdict.kind = ChainCase::Case1SigmaFreeModLine;
      verdict.free_level = static_cast<int>(n);
      verdict.non_free = blocked;
      verdict.w = blocked.empty() ? LatticeVec{1, 0} : primitive_of(blocked.front());
      return verdict;
    }
  }

  const GridRegion& deepest = chain.deepest();
  std::vector<Vec2> rel;
  for (Vec2 c : deepest.cell_centers()) rel.push_back(c - chain.anchor);
  if (rel.empty()) {
    verdict.note = "deepest level is empty";
    return verdict;
  }

  // Case 2: directions seen far from the anchor form one narrow interval.
  const Box& w = chain.window();
  const double edge =
      std::min({chain.anchor.x - w.x0, w.x1 - chain.anchor.x, chain.anchor.y - w.y0, w.y1 - chain.anchor.y});
  if (edge > 0.0) {
    const auto dirs = boundary_directions(rel, 0.5 * edge);
    verdict.direction_intervals = static_cast<int>(dirs.size());
    if (dirs.size() == 1) {
      const auto& iv = dirs.intervals().front();
      verdict.spread_deg = iv.width * 180.0 / std::numbers::pi;
      if (verdict.spread_deg <= kAsymptoticWidthDeg) {
        const double mid = iv.start + 0.5 * iv.width;
        verdict.kind = ChainCase::Case2AsymptoticDirection;
        verdict.u = {std::cos(mid), std::sin(mid)};
        return verdict;
      }
    }
  }

  // Case 3: principal-axis strip and a complement split on either side.
  Vec2 mean{};
  for (Vec2 p : rel) mean = mean + p;
  mean = mean / static_cast<double>(rel.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (Vec2 p : rel) {
    const Vec2 d = p - mean;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  const double axis = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  verdict.v = canonical_unit({-std::sin(axis), std::cos(axis)});
  for (Vec2 p : rel) verdict.M = std::max(verdict.M, std::abs(dot(p, verdict.v)));

  const auto holes = label_components(deepest, Connectivity::Eight, true);
  std::set<std::int32_t> upper, lower;
  auto& wit = verdict.witness;
  for (std::int64_t j = 0; j < deepest.height(); ++j) {
    for (std::int64_t i = 0; i < deepest.width(); ++i) {
      const auto l = holes.at(deepest, {i, j});
      if (l < 0) continue;
      const double p = dot(deepest.cell_center(i, j) - chain.anchor, verdict.v);
      if (p >= verdict.M + 1.0) {
        upper.insert(l);
        ++wit.upper_cells;
      } else if (p <= -(verdict.M + 1.0)) {
        lower.insert(l);
        ++wit.lower_cells;
      }
    }
  }
  wit.upper_components = static_cast<int>(upper.size());
  wit.lower_components = static_cast<int>(lower.size());
  const bool disjoint = std::none_of(upper.begin(), upper.end(), [&](std::int32_t l) { return lower.count(l) > 0; });
  wit.present = !upper.empty() && !lower.empty() && disjoint;
  if (wit.present) {
    verdict.kind = ChainCase::Case3BoundedDeviation;
  } else {
    verdict.note = upper.empty() || lower.empty() ? "strip sides fall outside the window"
                                                  : "complement connects both sides of the strip";
  }
  return verdict;
}

bool chain_quasiconvexity(const ChainSample& chain, double r) {
  if (!(r > 0.0)) throw InvalidArgument("chain_quasiconvexity: r must be positive");
  if (chain.levels.empty()) throw InvalidArgument("chain_quasiconvexity: empty chain");
  return is_r_quasiconvex(chain.deepest().cell_centers(), r);
}

}  // namespace torusrot

#include "torusrot/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "torusrot/errors.hpp"
#include "torusrot/parallel.hpp"
#include "torusrot/random.hpp"

namespace torusrot {

namespace {

Vec2 mod1(Vec2 z) { return {z.x - std::floor(z.x), z.y - std::floor(z.y)}; }

// Hull vertices closer than this (relative to the data scale) are merged;
// averages of a rigid translation differ only by rounding.
double hull_merge_eps(std::span<const Vec2> pts) {
  double scale = 1.0;
  for (Vec2 p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  return 1e-12 * scale;
}

}  // namespace

RotationSetEstimate rotation_set_estimate(const TorusLift& lift, std::int64_t n, int grid) {
  if (n < 1) throw InvalidArgument("rotation_set_estimate: n must be >= 1");
  if (grid < 1) throw InvalidArgument("rotation_set_estimate: grid must be >= 1");
  const auto g = static_cast<std::size_t>(grid);
  RotationSetEstimate est;
  est.n = n;
  est.sample_count = static_cast<std::int64_t>(g * g);
  est.averages.resize(g * g);
  parallel_for(g, [&](std::size_t j) {
    for (std::size_t i = 0; i < g; ++i) {
      const Vec2 z{static_cast<double>(i) / grid, static_cast<double>(j) / grid};
      est.averages[j * g + i] = lift.iterate_displacement(z, n) / static_cast<double>(n);
    }
  });
  est.hull = convex_hull(est.averages, hull_merge_eps(est.averages));
  est.diameter = polygon_diameter(est.hull);
  return est;
}

MeasureSampler MeasureSampler::lebesgue_random(std::uint64_t seed) {
  MeasureSampler s(Kind::LebesgueRandom);
  s.seed_ = seed;
  return s;
}

MeasureSampler MeasureSampler::orbit(Vec2 base) {
  MeasureSampler s(Kind::OrbitBirkhoff);
  s.point_ = base;
  return s;
}

MeasureSampler MeasureSampler::point_mass(Vec2 point) {
  MeasureSampler s(Kind::PointMass);
  s.point_ = point;
  return s;
}

std::vector<Vec2> MeasureSampler::points(const TorusLift& lift, std::int64_t count) const {
  if (count < 1) throw InvalidArgument("MeasureSampler: count must be >= 1");
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(count));
  switch (kind_) {
    case Kind::LebesgueGrid: {
      const auto side = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(count))));
      for (std::int64_t k = 0; k < count; ++k) {
        out.push_back({(static_cast<double>(k % side) + 0.5) / side, (static_cast<double>(k / side) + 0.5) / side});
      }
      break;
    }
    case Kind::LebesgueRandom: {
      Rng rng(seed_);
      for (std::int64_t k = 0; k < count; ++k) out.push_back(rng.unit_square());
      break;
    }
    case Kind::OrbitBirkhoff: {
      Vec2 z = mod1(point_);
      for (std::int64_t k = 0; k < count; ++k) {
        out.push_back(z);
        z = mod1(lift.apply(z));
      }
      break;
    }
    case Kind::PointMass:
      out.assign(static_cast<std::size_t>(count), mod1(point_));
      break;
  }
  return out;
}

MeasureEstimate rho_measure_estimate(const TorusLift& lift, const MeasureSampler& sampler, std::int64_t count) {
  const auto pts = sampler.points(lift, count);
  std::vector<Vec2> phi(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) { phi[k] = lift.apply(pts[k]) - pts[k]; });

  MeasureEstimate est;
  est.count = count;
  est.reliable = count >= 30;
  const double n = static_cast<double>(count);
  est.mean = pairwise_sum(phi) / n;
  if (count > 1) {
    std::vector<double> dx(phi.size()), dy(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k) {
      dx[k] = (phi[k].x - est.mean.x) * (phi[k].x - est.mean.x);
      dy[k] = (phi[k].y - est.mean.y) * (phi[k].y - est.mean.y);
    }
    est.standard_error = {std::sqrt(pairwise_sum(dx) / (n - 1.0) / n), std::sqrt(pairwise_sum(dy) / (n - 1.0) / n)};
  }
  return est;
}

double displacement_extent(const TorusLift& lift, Vec2 z, Vec2 v, Vec2 alpha, std::int64_t N) {
  if (N < 1) throw InvalidArgument("displacement_extent: N must be >= 1");
  if (norm(v) == 0.0) throw InvalidArgument("displacement_extent: direction must be nonzero");
  double extent = 0.0;
  Vec2 w = z;
  for (std::int64_t n = 1; n <= N; ++n) {
    w = lift.apply(w);
    extent = std::max(extent, std::abs(dot(w - z - static_cast<double>(n) * alpha, v)));
  }
  return extent;
}

double OrbitBundle::max_extent() const {
  double m = 0.0;
  for (const auto& orbit : displacements) {
    for (Vec2 d : orbit) m = std::max(m, norm(d));
  }
  return m;
}

double OrbitBundle::directional_extent(Vec2 v) const {
  double m = 0.0;
  for (const auto& orbit : displacements) {
    for (Vec2 d : orbit) m = std::max(m, std::abs(dot(d, v)));
  }
  return m;
}

OrbitBundle sample_orbits(const TorusLift& lift, int samples, std::int64_t N, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("sample_orbits: samples must be >= 1");
  if (N < 1) throw InvalidArgument("sample_orbits: N must be >= 1");
  Rng rng(seed);
  std::vector<Vec2> starts;
  for (int s = 0; s < samples; ++s) starts.push_back(rng.unit_square());

  OrbitBundle bundle;
  bundle.horizon = N;
  bundle.displacements.resize(starts.size());
  parallel_for(starts.size(), [&](std::size_t s) {
    auto& out = bundle.displacements[s];
    out.resize(static_cast<std::size_t>(N) + 1);
    Vec2 w = starts[s];
    out[0] = {};
    for (std::int64_t n = 1; n <= N; ++n) {
      w = lift.apply(w);
      out[static_cast<std::size_t>(n)] = w - starts[s];
    }
  });
  return bundle;
}

std::vector<LatticeVec> primitive_directions(int denom_max) {
  if (denom_max < 1) throw InvalidArgument("primitive_directions: denom_max must be >= 1");
  std::vector<LatticeVec> out;
  for (std::int64_t a = 0; a <= denom_max; ++a) {
    for (std::int64_t b = -denom_max; b <= denom_max; ++b) {
      const LatticeVec v{a, b};
      if (is_primitive(v) && canonical_sign(v) == v) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end(), [](LatticeVec p, LatticeVec q) {
    const auto dp = std::max(std::abs(p.a), std::abs(p.b));
    const auto dq = std::max(std::abs(q.a), std::abs(q.b));
    return dp != dq ? dp < dq : p < q;
  });
  return out;
}

std::vector<LatticeVec> annularity_scan(const OrbitBundle& orbits, int denom_max, double M_threshold) {
  std::vector<LatticeVec> out;
  for (LatticeVec v : primitive_directions(denom_max)) {
    if (orbits.directional_extent(v.to_vec()) <= M_threshold) out.push_back(v);
  }
  return out;
}

std::vector<LatticeVec> annularity_scan(const TorusLift& lift, int denom_max, std::int64_t N, int samples,
                                        double M_threshold, std::uint64_t seed) {
  return annularity_scan(sample_orbits(lift, samples, N, seed), denom_max, M_threshold);
}

BoundedDirection best_bounded_direction(const OrbitBundle& orbits) {
  // Width of the symmetric hull of all displacements in direction u equals
  // the extent in that direction.
  std::vector<Vec2> cloud;
  for (const auto& orbit : orbits.displacements) {
    for (Vec2 d : orbit) {
      cloud.push_back(d);
      cloud.push_back(-d);
    }
  }
  const auto hull = convex_hull(cloud);
  auto extent = [&](double theta) {
    const Vec2 u{std::cos(theta), std::sin(theta)};
    double m = 0.0;
    for (Vec2 h : hull) m = std::max(m, std::abs(dot(h, u)));
    return m;
  };
  constexpr int kCoarse = 7200;
  const double step = std::numbers::pi / kCoarse;
  double best_theta = 0.0;
  double best = extent(0.0);
  for (int k = 1; k < kCoarse; ++k) {
    const double e = extent(k * step);
    if (e < best) {
      best = e;
      best_theta = k * step;
    }
  }
  double lo = best_theta - step;
  double hi = best_theta + step;
  for (int i = 0; i < 100; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (extent(m1) <= extent(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double theta = 0.5 * (lo + hi);
  if (extent(theta) < best) {
    best = extent(theta);
    best_theta = theta;
  }
  Vec2 u{std::cos(best_theta), std::sin(best_theta)};
  if (u.x < 0.0 || (u.x == 0.0 && u.y < 0.0)) u = -u;
  return {u, best};
}

PseudoRotationCheck pseudo_rotation_check(const RotationSetEstimate& estimate, double tol) {
  PseudoRotationCheck out;
  out.diameter = estimate.diameter;
  out.vector = polygon_centroid(estimate.hull);
  out.pseudo_rotation = estimate.diameter <= tol;
  out.irrotational = out.pseudo_rotation && norm(out.vector) <= tol;
  return out;
}

}  // namespace torusrot

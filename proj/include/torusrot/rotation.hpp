#pragma once

#include <cstdint>
#include <vector>

#include "torusrot/geom.hpp"
#include "torusrot/maps.hpp"

namespace torusrot {

// Inner approximation of the rotation set from single-horizon displacement
// averages (f^n(z) - z)/n over a grid of base points.
struct RotationSetEstimate {
  std::vector<Vec2> hull;  // convex, counterclockwise
  std::int64_t n = 0;
  std::int64_t sample_count = 0;
  double diameter = 0.0;
  std::vector<Vec2> averages;  // every recorded (f^n(z) - z)/n
};

RotationSetEstimate rotation_set_estimate(const TorusLift& lift, std::int64_t n, int grid);

// Proxy for an invariant probability measure on the torus.
class MeasureSampler {
 public:
  enum class Kind { LebesgueGrid, LebesgueRandom, OrbitBirkhoff, PointMass };

  static MeasureSampler lebesgue_grid() { return MeasureSampler(Kind::LebesgueGrid); }
  static MeasureSampler lebesgue_random(std::uint64_t seed);
  static MeasureSampler orbit(Vec2 base);
  static MeasureSampler point_mass(Vec2 point);

  Kind kind() const { return kind_; }
  // N points in [0,1)^2: the first N midpoints of a ceil(sqrt N)^2 grid,
  // N seeded uniforms, the orbit of the base point reduced mod 1, or N
  // copies of the atom.
  std::vector<Vec2> points(const TorusLift& lift, std::int64_t count) const;

 private:
  explicit MeasureSampler(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::uint64_t seed_ = 0;
  Vec2 point_{};
};

struct MeasureEstimate {
  Vec2 mean{};
  Vec2 standard_error{};
  std::int64_t count = 0;
  // Below 30 samples the standard error is reported but not trusted.
  bool reliable = false;
};

// Mean of the displacement f(x) - x over sampler points with componentwise
// standard errors.
MeasureEstimate rho_measure_estimate(const TorusLift& lift, const MeasureSampler& sampler, std::int64_t count);

// max over 0 <= n <= N of |<f^n(z) - z - n alpha, v>|.
double displacement_extent(const TorusLift& lift, Vec2 z, Vec2 v, Vec2 alpha, std::int64_t N);

// Displacement histories f^n(z) - z, n = 0..N, for seeded random z in [0,1)^2.
struct OrbitBundle {
  std::int64_t horizon = 0;
  std::vector<std::vector<Vec2>> displacements;

  double max_extent() const;
  double directional_extent(Vec2 v) const;
};

OrbitBundle sample_orbits(const TorusLift& lift, int samples, std::int64_t N, std::uint64_t seed);

// Primitive v (one per +-pair) with max(|a|,|b|) <= denom_max, ordered by
// max(|a|,|b|) and then lexicographically.
std::vector<LatticeVec> primitive_directions(int denom_max);

std::vector<LatticeVec> annularity_scan(const OrbitBundle& orbits, int denom_max, double M_threshold);
std::vector<LatticeVec> annularity_scan(const TorusLift& lift, int denom_max, std::int64_t N, int samples,
                                        double M_threshold, std::uint64_t seed = 0);

struct BoundedDirection {
  Vec2 direction{};  // unit vector, canonical sign
  double extent = 0.0;
};

// Unit direction u minimizing max |<f^n(z) - z, u>| over the bundle.
BoundedDirection best_bounded_direction(const OrbitBundle& orbits);

struct PseudoRotationCheck {
  bool pseudo_rotation = false;
  bool irrotational = false;
  Vec2 vector{};  // hull centroid
  double diameter = 0.0;
};

PseudoRotationCheck pseudo_rotation_check(const RotationSetEstimate& estimate, double tol = 1e-3);

}  // namespace torusrot

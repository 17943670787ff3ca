#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "torusrot/geom.hpp"
#include "torusrot/maps.hpp"
#include "torusrot/rotation.hpp"

namespace torusrot {

struct AtkinsonHit {
  std::int64_t n = 0;
  double torus_distance = 0.0;
  double directional_sum = 0.0;  // <f^n(x) - x, v0> in the plane
};

// Distance in R^2 / Z^2.
double torus_distance(Vec2 a, Vec2 b);

// Every n in [1, N] with torus distance and |directional sum| below eps.
std::vector<AtkinsonHit> atkinson_search(const TorusLift& lift, Vec2 v0, Vec2 x, std::int64_t N, double eps);

struct AtkinsonSurvey {
  std::vector<Vec2> points;
  std::vector<std::optional<AtkinsonHit>> first_hit;
  double hit_rate = 0.0;
};

// First Atkinson hit for `samples` seeded uniform points of [0,1)^2.
AtkinsonSurvey atkinson_survey(const TorusLift& lift, Vec2 v0, int samples, std::int64_t N, double eps,
                               std::uint64_t seed);

struct RecurrenceReport {
  std::int64_t sample_count = 0;
  std::int64_t horizon = 0;
  double epsilon = 0.0;
  double recurrent_fraction = 0.0;
  std::vector<Vec2> points;
  std::vector<std::optional<std::int64_t>> first_return;
  // Smallest |f^n(x) - x| for 1 <= n <= (first return or N).
  std::vector<double> min_distance;
  // Rotation-set diameter attached by callers as a caveat; nullopt if unset.
  std::optional<double> rotation_diameter;
};

RecurrenceReport lifted_recurrence_fraction(const TorusLift& lift, const MeasureSampler& sampler, int samples,
                                            std::int64_t N, double eps);

void write_recurrence_csv(std::ostream& out, const RecurrenceReport& report);
void write_atkinson_csv(std::ostream& out, const std::vector<AtkinsonHit>& hits);

}  // namespace torusrot

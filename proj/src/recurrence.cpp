#include "torusrot/recurrence.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "torusrot/errors.hpp"
#include "torusrot/parallel.hpp"
#include "torusrot/random.hpp"

namespace torusrot {

namespace {

double wrap(double t) { return t - std::round(t); }

std::string num(double x) { return format_real(x); }

void check_search(Vec2 v0, std::int64_t N, double eps) {
  if (!(norm(v0) > 0.0)) throw InvalidArgument("atkinson_search: v0 must be nonzero");
  if (N < 1) throw InvalidArgument("atkinson_search: N must be >= 1");
  if (!(eps > 0.0)) throw InvalidArgument("atkinson_search: eps must be positive");
}

template <class Visit>
void scan_atkinson(const TorusLift& lift, Vec2 v0, Vec2 x, std::int64_t N, double eps, Visit&& visit) {
  Vec2 w = x;
  for (std::int64_t n = 1; n <= N; ++n) {
    w = lift.apply(w);
    const Vec2 d = w - x;
    const double td = norm({wrap(d.x), wrap(d.y)});
    const double ds = dot(d, v0);
    if (td < eps && std::abs(ds) < eps && !visit(AtkinsonHit{n, td, ds})) return;
  }
}

}  // namespace

double torus_distance(Vec2 a, Vec2 b) {
  const Vec2 d = a - b;
  return norm({wrap(d.x), wrap(d.y)});
}

std::vector<AtkinsonHit> atkinson_search(const TorusLift& lift, Vec2 v0, Vec2 x, std::int64_t N, double eps) {
  check_search(v0, N, eps);
  std::vector<AtkinsonHit> hits;
  scan_atkinson(lift, v0, x, N, eps, [&](const AtkinsonHit& h) {
    hits.push_back(h);
    return true;
  });
  return hits;
}

AtkinsonSurvey atkinson_survey(const TorusLift& lift, Vec2 v0, int samples, std::int64_t N, double eps,
                               std::uint64_t seed) {
  check_search(v0, N, eps);
  if (samples < 1) throw InvalidArgument("atkinson_survey: samples must be >= 1");
  AtkinsonSurvey survey;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) survey.points.push_back(rng.unit_square());
  survey.first_hit.resize(survey.points.size());
  parallel_for(survey.points.size(), [&](std::size_t s) {
    scan_atkinson(lift, v0, survey.points[s], N, eps, [&](const AtkinsonHit& h) {
      survey.first_hit[s] = h;
      return false;
    });
  });
  std::int64_t hits = 0;
  for (const auto& h : survey.first_hit) hits += h ? 1 : 0;
  survey.hit_rate = static_cast<double>(hits) / samples;
  return survey;
}

RecurrenceReport lifted_recurrence_fraction(const TorusLift& lift, const MeasureSampler& sampler, int samples,
                                            std::int64_t N, double eps) {
  if (samples < 1) throw InvalidArgument("lifted_recurrence_fraction: samples must be >= 1");
  if (N < 1) throw InvalidArgument("lifted_recurrence_fraction: N must be >= 1");
  if (!(eps > 0.0)) throw InvalidArgument("lifted_recurrence_fraction: eps must be positive");
  RecurrenceReport report;
  report.sample_count = samples;
  report.horizon = N;
  report.epsilon = eps;
  report.points = sampler.points(lift, samples);
  report.first_return.resize(report.points.size());
  report.min_distance.assign(report.points.size(), std::numeric_limits<double>::infinity());
  parallel_for(report.points.size(), [&](std::size_t s) {
    const Vec2 x = report.points[s];
    Vec2 w = x;
    for (std::int64_t n = 1; n <= N; ++n) {
      w = lift.apply(w);
      const double d = distance(w, x);
      report.min_distance[s] = std::min(report.min_distance[s], d);
      if (d < eps) {
        report.first_return[s] = n;
        break;
      }
    }
  });
  std::int64_t returned = 0;
  for (const auto& r : report.first_return) returned += r ? 1 : 0;
  report.recurrent_fraction = static_cast<double>(returned) / samples;
  return report;
}

void write_recurrence_csv(std::ostream& out, const RecurrenceReport& report) {
  out << "index,x,y,first_return_n,min_distance\n";
  for (std::size_t s = 0; s < report.points.size(); ++s) {
    out << s << ',' << num(report.points[s].x) << ',' << num(report.points[s].y) << ',';
    if (report.first_return[s]) out << *report.first_return[s];
    out << ',' << num(report.min_distance[s]) << '\n';
  }
}

void write_atkinson_csv(std::ostream& out, const std::vector<AtkinsonHit>& hits) {
  out << "n,torus_distance,directional_sum\n";
  for (const auto& h : hits) out << h.n << ',' << num(h.torus_distance) << ',' << num(h.directional_sum) << '\n';
}

}  // namespace torusrot

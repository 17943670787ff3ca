#include <doctest.h>

#include <sstream>
#include <string>

#include "torusrot/maps.hpp"
#include "torusrot/recurrence.hpp"
#include "torusrot/rotation.hpp"

using namespace torusrot;

TEST_CASE("torus distance") {
  CHECK(torus_distance({0.05, 0.0}, {0.95, 0.0}) == doctest::Approx(0.1));
  CHECK(torus_distance({3.2, -1.1}, {0.2, 0.9}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(torus_distance({0.5, 0.5}, {0.0, 0.0}) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("Atkinson search examples") {
  const auto still = atkinson_search(TorusLift::identity(), {1, 0}, {0.3, 0.4}, 50, 0.01);
  REQUIRE(still.size() == 50);
  for (std::size_t k = 0; k < still.size(); ++k) {
    CHECK(still[k].n == static_cast<std::int64_t>(k + 1));
    CHECK(still[k].torus_distance == 0.0);
    CHECK(still[k].directional_sum == 0.0);
  }
  CHECK(atkinson_search(make_map("rigid:ax=0.5,ay=0"), {1, 0}, {0.3, 0.4}, 1000, 0.1).empty());
}

TEST_CASE("Atkinson survey on an area-preserving twist") {
  const auto survey = atkinson_survey(make_map("twoshear:a=0.05,b=0.05"), {1, 0}, 100, 100000, 0.05, 0);
  CHECK(survey.points.size() == 100);
  CHECK(survey.hit_rate >= 0.9);
  for (const auto& hit : survey.first_hit) {
    if (!hit) continue;
    CHECK(hit->torus_distance < 0.05);
    CHECK(std::abs(hit->directional_sum) < 0.05);
  }
}

TEST_CASE("lifted recurrence examples") {
  const auto still = lifted_recurrence_fraction(TorusLift::identity(), MeasureSampler::lebesgue_random(1), 50, 10, 0.01);
  CHECK(still.recurrent_fraction == 1.0);
  for (const auto& n : still.first_return) CHECK(n == std::optional<std::int64_t>(1));

  const auto drift = lifted_recurrence_fraction(make_map("rigid:ax=0.5,ay=0"), MeasureSampler::lebesgue_random(1), 50,
                                                1000, 0.1);
  CHECK(drift.recurrent_fraction == 0.0);

  const auto disk = make_map("diskrot:cx=0.5,cy=0.5,r=0.3,theta=3.1");
  const auto fixed = lifted_recurrence_fraction(disk, MeasureSampler::lebesgue_grid(), 400, 1, 1e-3);
  for (std::size_t k = 0; k < fixed.points.size(); ++k) {
    if (distance(fixed.points[k], {0.5, 0.5}) > 0.3) CHECK(fixed.first_return[k] == std::optional<std::int64_t>(1));
  }
  for (double eps : {1e-3, 0.01, 0.05}) {
    const auto r = lifted_recurrence_fraction(disk, MeasureSampler::lebesgue_random(2), 1000, 10000, eps);
    CAPTURE(eps);
    CHECK(r.recurrent_fraction >= 0.99);
  }
}

TEST_CASE("lift recurrence implies torus recurrence") {
  const auto f = make_map("twoshear:a=0.05,b=0.05");
  const auto r = lifted_recurrence_fraction(f, MeasureSampler::lebesgue_random(3), 200, 2000, 0.05);
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    if (!r.first_return[k]) continue;
    const Vec2 x = r.points[k];
    const Vec2 y = f.iterate(x, *r.first_return[k]);
    CHECK(distance(x, y) < 0.05);
    CHECK(torus_distance(x, y) <= distance(x, y));
  }
}

TEST_CASE("recurrent fraction is monotone") {
  const auto f = make_map("twoshear:a=0.2,b=0.2");
  const auto sampler = MeasureSampler::lebesgue_random(4);
  double prev = 0.0;
  for (std::int64_t N : {10, 100, 1000, 3000}) {
    const double frac = lifted_recurrence_fraction(f, sampler, 200, N, 0.05).recurrent_fraction;
    CHECK(frac >= prev);
    prev = frac;
  }
  prev = 0.0;
  for (double eps : {0.005, 0.02, 0.05, 0.1}) {
    const double frac = lifted_recurrence_fraction(f, sampler, 200, 1000, eps).recurrent_fraction;
    CHECK(frac >= prev);
    prev = frac;
  }
}

TEST_CASE("irrotational families recur more than drifting ones") {
  const auto sampler = MeasureSampler::lebesgue_random(5);
  const double drift = lifted_recurrence_fraction(make_map("rigid:ax=0.5,ay=0"), sampler, 1000, 10000, 0.05).recurrent_fraction;
  CHECK(drift == 0.0);
  for (const char* spec : {"diskrot:cx=0.5,cy=0.5,r=0.3,theta=3.1", "twoshear:a=0.05,b=0.05"}) {
    CHECK(lifted_recurrence_fraction(make_map(spec), sampler, 1000, 10000, 0.05).recurrent_fraction > drift);
  }
}

TEST_CASE("CSV output") {
  const auto r = lifted_recurrence_fraction(TorusLift::identity(), MeasureSampler::lebesgue_grid(), 4, 5, 0.1);
  std::ostringstream out;
  write_recurrence_csv(out, r);
  const std::string text = out.str();
  CHECK(text.rfind("index,x,y,first_return_n,min_distance\n", 0) == 0);
  CHECK(text.find("0,0.25,0.25,1,0\n") != std::string::npos);

  std::ostringstream hits;
  write_atkinson_csv(hits, atkinson_search(TorusLift::identity(), {0, 1}, {0.1, 0.1}, 2, 0.1));
  CHECK(hits.str() == "n,torus_distance,directional_sum\n1,0,0\n2,0,0\n");
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "torusrot/classify.hpp"
#include "torusrot/maps.hpp"

using namespace torusrot;

namespace {

ClassifyParams doubled() {
  ClassifyParams p;
  p.samples *= 2;
  p.N *= 2;
  return p;
}

}  // namespace

TEST_CASE("shipped presets") {
  const auto disk = classify_map(make_map("diskrot:cx=0.5,cy=0.5,r=0.3,theta=3.1"));
  CHECK(disk.kind == TrichotomyCase::FullyEssentialFix);
  CHECK(disk.evidence.fix_class.kind == Essentiality::FullyEssential);

  const auto still = classify_map(TorusLift::identity());
  CHECK(still.kind == TrichotomyCase::AllBounded);
  CHECK(still.evidence.max_extent == 0.0);

  const auto shear = classify_map(make_map("shear:c=0.1"));
  REQUIRE(shear.kind == TrichotomyCase::Annular);
  CHECK(shear.annular == LatticeVec{0, 1});

  const auto two = classify_map(make_map("twoshear:a=0.05,b=0.05"));
  CHECK(two.kind == TrichotomyCase::Annular);
  CHECK(to_string(TrichotomyCase::FullyEssentialFix) == "FullyEssentialFix");
}

TEST_CASE("Fayad example is inconclusive with an irrational candidate") {
  const auto fayad = classify_map(make_map("fayad:slope=1.6180339887,amp=1,steps=64"));
  CHECK(fayad.kind == TrichotomyCase::Inconclusive);
  CHECK(fayad.evidence.annular_directions.empty());
  CHECK(fayad.evidence.fix_class.kind == Essentiality::Inessential);
  const Vec2 flow = Vec2{1, kGoldenRatio} / std::hypot(1.0, kGoldenRatio);
  const double off = std::asin(std::min(1.0, std::abs(dot(fayad.evidence.irrational_candidate.direction, flow))));
  CHECK(off * 180 / std::numbers::pi <= 5.0);
}

TEST_CASE("verdicts are stable when the horizon and sample count double") {
  for (const char* spec : {"diskrot:cx=0.5,cy=0.5,r=0.3,theta=3.1", "rigid:ax=0,ay=0", "shear:c=0.1",
                           "fayad:slope=1.6180339887,amp=1,steps=64"}) {
    CAPTURE(spec);
    const auto lift = make_map(spec);
    const auto a = classify_map(lift);
    const auto b = classify_map(lift, doubled());
    CHECK(a.kind == b.kind);
    CHECK(a.annular == b.annular);
  }
}

TEST_CASE("classification is deterministic") {
  const auto lift = make_map("twoshear:a=0.1,b=0.07");
  ClassifyParams p;
  p.N = 2000;
  p.seed = 9;
  const auto a = classify_map(lift, p);
  const auto b = classify_map(lift, p);
  CHECK(a.kind == b.kind);
  CHECK(a.evidence.max_extent == b.evidence.max_extent);
  CHECK(a.evidence.irrational_candidate.direction == b.evidence.irrational_candidate.direction);
}

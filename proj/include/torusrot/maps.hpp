#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "torusrot/geom.hpp"

namespace torusrot {

inline constexpr double kGoldenRatio = 1.6180339887498949;

// Lift families. Each is equivariant under integer translations.
namespace family {

// z -> z + offset
struct Rigid {
  Vec2 offset{};
};

// (x, y) -> (x + c sin(2 pi x), y); injective for |c| < 1/(2 pi).
struct Shear {
  double c = 0.0;
};

// (x, y) -> (x + a sin(2 pi y), y), then (x, y) -> (x, y + b sin(2 pi x)).
struct TwoShear {
  double a = 0.0;
  double b = 0.0;
};

// Time-one map of phi(z) * (1, slope) with phi = amp (sin^2(pi x) + sin^2(pi y)),
// integrated by fixed-step RK4.
struct Fayad {
  double slope = kGoldenRatio;
  double amp = 1.0;
  int steps = 64;
};

// Identity off the lifted disks B_r(center + Z^2); inside, rotation about the
// disk centre by theta * bump(|z - c| / r).
struct DiskRot {
  Vec2 center{0.5, 0.5};
  double r = 0.3;
  double theta = 3.1;
};

}  // namespace family

class TorusLift;

namespace family {
// parts[0] is applied first.
struct Composite {
  std::vector<TorusLift> parts;
};
}  // namespace family

enum class FamilyKind { Rigid, Shear, TwoShear, Fayad, DiskRot, Composite };

class TorusLift {
 public:
  using Params = std::variant<family::Rigid, family::Shear, family::TwoShear, family::Fayad,
                              family::DiskRot, family::Composite>;

  // Validates parameters; throws InvalidArgument when the map would not be a
  // homeomorphism (non-injective shear, overlapping disks, ...).
  explicit TorusLift(Params params);

  static TorusLift identity() { return TorusLift(family::Rigid{}); }
  static TorusLift translation(Vec2 w) { return TorusLift(family::Rigid{w}); }
  // first, then second
  static TorusLift compose(TorusLift first, TorusLift second);

  FamilyKind kind() const { return static_cast<FamilyKind>(params_.index()); }
  const Params& params() const { return params_; }

  Vec2 apply(Vec2 z) const;
  Vec2 inverse_apply(Vec2 z) const;
  // f^n(z) - z; negative n iterates the inverse.
  Vec2 iterate_displacement(Vec2 z, std::int64_t n) const;
  Vec2 iterate(Vec2 z, std::int64_t n) const;

  // Canonical map-spec string (parses back to an equal lift).
  std::string spec() const;

 private:
  Params params_;
};

// Parses the `family:key=val,...` mini-language:
//   rigid:ax=<f>,ay=<f>      shear:c=<f>          twoshear:a=<f>,b=<f>
//   fayad:slope=<f>,amp=<f>,steps=<i>             diskrot:cx=<f>,cy=<f>,r=<f>,theta=<f>
// Missing keys take the family defaults; unknown keys are rejected.
TorusLift parse_map_spec(std::string_view text);
inline TorusLift make_map(std::string_view spec) { return parse_map_spec(spec); }

// max over random z in [0,1)^2 and v in {(1,0), (0,1), (2,-3)} of
// |f(z + v) - f(z) - v|.
double equivariance_error(const TorusLift& lift, int samples, std::uint64_t seed);

// Smooth radial profile: 1 at 0, 0 for s >= 1.
double bump(double s);

}  // namespace torusrot

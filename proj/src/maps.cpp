#include "torusrot/maps.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "torusrot/errors.hpp"
#include "torusrot/random.hpp"

namespace torusrot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// x - floor(x): the fractional part used to evaluate periodic data.
inline double frac(double x) { return x - std::floor(x); }

Vec2 fayad_field(const family::Fayad& f, Vec2 z) {
  const double sx = std::sin(kPi * frac(z.x));
  const double sy = std::sin(kPi * frac(z.y));
  const double phi = f.amp * (sx * sx + sy * sy);
  return {phi, phi * f.slope};
}

Vec2 fayad_flow(const family::Fayad& f, Vec2 z, double direction) {
  const double h = direction / f.steps;
  for (int i = 0; i < f.steps; ++i) {
    const Vec2 k1 = fayad_field(f, z);
    const Vec2 k2 = fayad_field(f, z + (0.5 * h) * k1);
    const Vec2 k3 = fayad_field(f, z + (0.5 * h) * k2);
    const Vec2 k4 = fayad_field(f, z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

// The flow moves points along d = (1, slope), so f(w) = w + sigma(w) d and the
// inverse of z is z - tau d with tau = sigma(z - tau d). Backward RK4 seeds tau;
// secant steps then make the result invert the discrete forward map.
Vec2 fayad_inverse(const family::Fayad& f, Vec2 z) {
  const Vec2 d{1.0, f.slope};
  const double dd = dot(d, d);
  auto residual = [&](double tau) {
    const Vec2 w = z - tau * d;
    return dot(fayad_flow(f, w, 1.0) - w, d) / dd - tau;
  };
  double t0 = dot(z - fayad_flow(f, z, -1.0), d) / dd;
  double g0 = residual(t0);
  if (g0 == 0.0) return z - t0 * d;
  double t1 = t0 + g0;
  for (int i = 0; i < 8; ++i) {
    const double g1 = residual(t1);
    if (g1 == 0.0 || g1 == g0) break;
    const double t2 = t1 - g1 * (t1 - t0) / (g1 - g0);
    t0 = t1;
    g0 = g1;
    t1 = t2;
    if (std::abs(t1 - t0) <= 1e-16 * std::max(1.0, std::abs(t1))) break;
  }
  return z - t1 * d;
}

// x' = x + c sin(2 pi x) solved for x by safeguarded Newton.
double shear_inverse(double c, double xp) {
  double x = xp - c * std::sin(kTwoPi * xp);
  for (int i = 0; i < 60; ++i) {
    const double g = x + c * std::sin(kTwoPi * x) - xp;
    const double dg = 1.0 + kTwoPi * c * std::cos(kTwoPi * x);
    const double step = g / dg;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

Vec2 disk_rotate(const family::DiskRot& d, Vec2 z, double sign) {
  const Vec2 rel = z - d.center;
  const Vec2 w{std::round(rel.x), std::round(rel.y)};
  const Vec2 local = rel - w;
  const double rho = norm(local);
  if (rho >= d.r) return z;
  const double angle = sign * d.theta * bump(rho / d.r);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return d.center + w + Vec2{c * local.x - s * local.y, s * local.x + c * local.y};
}

}  // namespace

double bump(double s) {
  if (s < 0.0) s = -s;
  if (s >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

TorusLift::TorusLift(Params params) : params_(std::move(params)) {
  std::visit(Overloaded{
                 [](const family::Rigid& r) {
                   if (!is_finite(r.offset)) throw InvalidArgument("rigid: non-finite offset");
                 },
                 [](const family::Shear& s) {
                   if (!(std::abs(s.c) < 1.0 / kTwoPi)) {
                     throw InvalidArgument("shear: amplitude must satisfy |c| < 1/(2 pi) for injectivity");
                   }
                 },
                 [](const family::TwoShear& t) {
                   if (!std::isfinite(t.a) || !std::isfinite(t.b)) throw InvalidArgument("twoshear: non-finite amplitude");
                 },
                 [](const family::Fayad& f) {
                   if (!std::isfinite(f.slope) || !std::isfinite(f.amp)) throw InvalidArgument("fayad: non-finite parameter");
                   if (f.amp < 0.0) throw InvalidArgument("fayad: amp must be nonnegative");
                   if (f.steps < 1) throw InvalidArgument("fayad: steps must be >= 1");
                 },
                 [](const family::DiskRot& d) {
                   if (!is_finite(d.center) || !std::isfinite(d.theta)) throw InvalidArgument("diskrot: non-finite parameter");
                   if (!(d.r > 0.0 && d.r < 0.5)) throw InvalidArgument("diskrot: radius must lie in (0, 1/2)");
                 },
                 [](const family::Composite& c) {
                   if (c.parts.empty()) throw InvalidArgument("composite: no parts");
                 },
             },
             params_);
}

TorusLift TorusLift::compose(TorusLift first, TorusLift second) {
  family::Composite c;
  c.parts.push_back(std::move(first));
  c.parts.push_back(std::move(second));
  return TorusLift(std::move(c));
}

Vec2 TorusLift::apply(Vec2 z) const {
  return std::visit(Overloaded{
                        [z](const family::Rigid& r) { return z + r.offset; },
                        [z](const family::Shear& s) { return Vec2{z.x + s.c * std::sin(kTwoPi * z.x), z.y}; },
                        [z](const family::TwoShear& t) {
                          const double x = z.x + t.a * std::sin(kTwoPi * z.y);
                          return Vec2{x, z.y + t.b * std::sin(kTwoPi * x)};
                        },
                        [z](const family::Fayad& f) { return fayad_flow(f, z, 1.0); },
                        [z](const family::DiskRot& d) { return disk_rotate(d, z, 1.0); },
                        [z](const family::Composite& c) {
                          Vec2 w = z;
                          for (const auto& part : c.parts) w = part.apply(w);
                          return w;
                        },
                    },
                    params_);
}

Vec2 TorusLift::inverse_apply(Vec2 z) const {
  return std::visit(Overloaded{
                        [z](const family::Rigid& r) { return z - r.offset; },
                        [z](const family::Shear& s) { return Vec2{shear_inverse(s.c, z.x), z.y}; },
                        [z](const family::TwoShear& t) {
                          const double y = z.y - t.b * std::sin(kTwoPi * z.x);
                          return Vec2{z.x - t.a * std::sin(kTwoPi * y), y};
                        },
                        [z](const family::Fayad& f) { return fayad_inverse(f, z); },
                        [z](const family::DiskRot& d) { return disk_rotate(d, z, -1.0); },
                        [z](const family::Composite& c) {
                          Vec2 w = z;
                          for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) w = it->inverse_apply(w);
                          return w;
                        },
                    },
                    params_);
}

Vec2 TorusLift::iterate(Vec2 z, std::int64_t n) const {
  Vec2 w = z;
  if (n >= 0) {
    for (std::int64_t i = 0; i < n; ++i) w = apply(w);
  } else {
    for (std::int64_t i = 0; i < -n; ++i) w = inverse_apply(w);
  }
  return w;
}

Vec2 TorusLift::iterate_displacement(Vec2 z, std::int64_t n) const { return iterate(z, n) - z; }

std::string TorusLift::spec() const {
  return std::visit(
      Overloaded{
          [](const family::Rigid& r) { return "rigid:ax=" + format_real(r.offset.x) + ",ay=" + format_real(r.offset.y); },
          [](const family::Shear& s) { return "shear:c=" + format_real(s.c); },
          [](const family::TwoShear& t) { return "twoshear:a=" + format_real(t.a) + ",b=" + format_real(t.b); },
          [](const family::Fayad& f) {
            return "fayad:slope=" + format_real(f.slope) + ",amp=" + format_real(f.amp) +
                   ",steps=" + std::to_string(f.steps);
          },
          [](const family::DiskRot& d) {
            return "diskrot:cx=" + format_real(d.center.x) + ",cy=" + format_real(d.center.y) +
                   ",r=" + format_real(d.r) + ",theta=" + format_real(d.theta);
          },
          [](const family::Composite& c) {
            std::string out = "composite(";
            for (std::size_t i = 0; i < c.parts.size(); ++i) out += (i ? ";" : "") + c.parts[i].spec();
            return out + ")";
          },
      },
      params_);
}

namespace {

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidArgument("map spec: bad number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("map spec: bad integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TorusLift parse_map_spec(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string_view name = trim(text.substr(0, colon));
  std::map<std::string, std::string, std::less<>> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) throw InvalidArgument("map spec: empty parameter in '" + std::string(text) + "'");
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw InvalidArgument("map spec: expected key=value, got '" + std::string(item) + "'");
      const std::string key(trim(item.substr(0, eq)));
      if (!kv.emplace(key, std::string(trim(item.substr(eq + 1)))).second) {
        throw InvalidArgument("map spec: duplicate key '" + key + "'");
      }
    }
  }

  auto take = [&](std::string_view key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const double v = parse_real(key, it->second);
    kv.erase(it);
    return v;
  };
  auto finish = [&](TorusLift lift) {
    if (!kv.empty()) throw InvalidArgument("map spec: unknown key '" + kv.begin()->first + "' for family '" + std::string(name) + "'");
    return lift;
  };

  if (name == "rigid") {
    const double ax = take("ax", 0.0);
    return finish(TorusLift(family::Rigid{{ax, take("ay", 0.0)}}));
  }
  if (name == "shear") return finish(TorusLift(family::Shear{take("c", 0.1)}));
  if (name == "twoshear") {
    const double a = take("a", 0.05);
    return finish(TorusLift(family::TwoShear{a, take("b", 0.05)}));
  }
  if (name == "fayad") {
    family::Fayad f;
    f.slope = take("slope", kGoldenRatio);
    f.amp = take("amp", 1.0);
    if (const auto it = kv.find("steps"); it != kv.end()) {
      f.steps = parse_int("steps", it->second);
      kv.erase(it);
    }
    return finish(TorusLift(f));
  }
  if (name == "diskrot") {
    family::DiskRot d;
    d.center.x = take("cx", d.center.x);
    d.center.y = take("cy", d.center.y);
    d.r = take("r", d.r);
    d.theta = take("theta", d.theta);
    return finish(TorusLift(d));
  }
  throw InvalidArgument("map spec: unknown family '" + std::string(name) + "'");
}

double equivariance_error(const TorusLift& lift, int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("equivariance_error: samples must be >= 1");
  static constexpr Vec2 kShifts[] = {{1.0, 0.0}, {0.0, 1.0}, {2.0, -3.0}};
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = rng.dyadic32();
    const Vec2 z{x, rng.dyadic32()};
    const Vec2 fz = lift.apply(z);
    for (Vec2 v : kShifts) worst = std::max(worst, norm(lift.apply(z + v) - fz - v));
  }
  return worst;
}

}  // namespace torusrot

#include "torusrot/geom.hpp"

#include <algorithm>
#include <charconv>
#include <cassert>
#include <numeric>
#include <sstream>

#include "torusrot/errors.hpp"

namespace torusrot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Points of [c,d] shared with [a,b], as parameters u on [c,d]: at most one
// value for a crossing, the two ends of the overlap for collinear segments.
std::vector<double> segment_meet_params(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
  const Vec2 d1 = b - a;
  const Vec2 d2 = d - c;
  const double l1 = norm(d1);
  const double l2 = norm(d2);
  const double denom = cross(d1, d2);
  if (std::abs(denom) > 1e-12 * l1 * l2) {
    const double t = cross(c - a, d2) / denom;
    const double u = cross(c - a, d1) / denom;
    const double dt = tol / l1;
    const double du = tol / l2;
    if (t < -dt || t > 1.0 + dt || u < -du || u > 1.0 + du) return {};
    return {std::clamp(u, 0.0, 1.0)};
  }
  if (std::abs(cross(d1, c - a)) / l1 > tol) return {};
  const double tc = dot(c - a, d1) / (l1 * l1);
  const double td = dot(d - a, d1) / (l1 * l1);
  const double lo = std::max(0.0, std::min(tc, td));
  const double hi = std::min(1.0, std::max(tc, td));
  const double slack = tol / l1;
  if (lo > hi + slack) return {};
  auto to_u = [&](double t) { return std::clamp((t - tc) / (td - tc), 0.0, 1.0); };
  if (hi - lo <= slack) return {to_u(0.5 * (lo + hi))};
  return {to_u(lo), to_u(hi)};
}

// Parameter range on [a,b] of points within tol of [c,d]; empty when none.
std::optional<std::pair<double, double>> near_range(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
  const Vec2 dir = b - a;
  auto g = [&](double t) { return point_segment_distance(a + t * dir, c, d); };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) <= g(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double tmin = 0.5 * (lo + hi);
  if (g(tmin) > tol) return std::nullopt;
  auto boundary = [&](double inside, double outside) {
    if (g(outside) <= tol) return outside;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (inside + outside);
      (g(mid) <= tol ? inside : outside) = mid;
    }
    return inside;
  };
  return std::make_pair(boundary(tmin, 0.0), boundary(tmin, 1.0));
}

}  // namespace

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

bool is_primitive(LatticeVec v) { return !v.is_zero() && gcd_abs(v.a, v.b) == 1; }

LatticeVec canonical_sign(LatticeVec v) {
  if (v.a < 0 || (v.a == 0 && v.b < 0)) return -v;
  return v;
}

double project(Vec2 x, Vec2 v) {
  const double n = norm(v);
  if (n == 0.0) throw InvalidArgument("project: direction must be nonzero");
  return dot(x, v) / n;
}

double angle_of(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double o1 = cross(b - a, c - a);
  const double o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c);
  const double o4 = cross(d - c, b - c);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return 0.0;
  }
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
  return segment_segment_distance(a, b, c, d) <= tol;
}

// ---------------------------------------------------------------- Polyline

Polyline::Polyline(std::vector<Vec2> vertices, bool closed) : vertices_(std::move(vertices)), closed_(closed) {
  if (vertices_.size() < 2) throw InvalidArgument("Polyline: need at least two vertices");
  cumulative_.reserve(vertices_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) throw InvalidArgument("Polyline: non-finite vertex");
    if (i == 0) continue;
    if (vertices_[i] == vertices_[i - 1]) throw InvalidArgument("Polyline: repeated consecutive vertex");
    cumulative_.push_back(cumulative_.back() + distance(vertices_[i], vertices_[i - 1]));
  }
  if (closed_ && vertices_.front() != vertices_.back()) {
    throw InvalidArgument("Polyline: closed polyline must end at its first vertex");
  }
}

Polyline Polyline::loop(std::vector<Vec2> vertices) {
  if (!vertices.empty()) vertices.push_back(vertices.front());
  return Polyline(std::move(vertices), true);
}

Polyline Polyline::regular_polygon(Vec2 center, double radius, int sides, double phase) {
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double a = phase + kTwoPi * k / sides;
    v.push_back(center + radius * Vec2{std::cos(a), std::sin(a)});
  }
  return loop(std::move(v));
}

Vec2 Polyline::point_at(double t) const {
  const double target = std::clamp(t, 0.0, 1.0) * length();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  if (i >= segment_count()) return vertices_.back();
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double u = (target - cumulative_[i]) / seg;
  return vertices_[i] + u * (vertices_[i + 1] - vertices_[i]);
}

double Polyline::parameter_of(std::size_t segment, double u) const {
  const double seg = cumulative_[segment + 1] - cumulative_[segment];
  return (cumulative_[segment] + u * seg) / length();
}

Polyline Polyline::reversed() const {
  std::vector<Vec2> v(vertices_.rbegin(), vertices_.rend());
  return Polyline(std::move(v), closed_);
}

Polyline Polyline::translated(Vec2 v) const {
  std::vector<Vec2> out;
  out.reserve(vertices_.size());
  for (Vec2 p : vertices_) out.push_back(p + v);
  Polyline result(std::move(out), false);
  result.closed_ = closed_ && result.vertices_.front() == result.vertices_.back();
  return result;
}

Polyline Polyline::concat(const Polyline& other) const {
  if (distance(back(), other.front()) > kGeomTol) {
    throw InvalidArgument("Polyline::concat: arcs do not share the junction point");
  }
  std::vector<Vec2> v = vertices_;
  v.insert(v.end(), other.vertices_.begin() + 1, other.vertices_.end());
  return Polyline(std::move(v), false);
}

Polyline Polyline::sub_arc(double s, double t) const {
  if (s > t) return sub_arc(t, s).reversed();
  const double total = length();
  std::vector<Vec2> v;
  auto push = [&](Vec2 p) {
    if (v.empty() || distance(v.back(), p) > 1e-12 * std::max(1.0, total)) v.push_back(p);
  };
  push(point_at(s));
  for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
    const double ti = cumulative_[i] / total;
    if (ti > s && ti < t) push(vertices_[i]);
  }
  const Vec2 end = point_at(t);
  if (v.size() >= 2 && distance(v.back(), end) <= 1e-12 * std::max(1.0, total)) v.pop_back();
  v.push_back(end);
  if (v.size() < 2) throw InvalidArgument("Polyline::sub_arc: degenerate parameter interval");
  return Polyline(std::move(v), false);
}

Polyline Polyline::refined(double max_len) const {
  std::vector<Vec2> v{vertices_.front()};
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / max_len)));
    for (int k = 1; k <= pieces; ++k) v.push_back(k == pieces ? b : a + (static_cast<double>(k) / pieces) * (b - a));
  }
  return Polyline(std::move(v), closed_);
}

double index_of_arc(const Polyline& gamma, Vec2 z) {
  const auto& v = gamma.vertices();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (point_segment_distance(z, v[i], v[i + 1]) <= kGeomTol) {
      throw DegenerateGeometryError("index_of_arc: point lies on the arc");
    }
    // Seen from a point off a straight segment the sweep is below half a turn,
    // so atan2 of (cross, dot) recovers it without branch ambiguity.
    const Vec2 a = v[i] - z;
    const Vec2 b = v[i + 1] - z;
    total += std::atan2(cross(a, b), dot(a, b));
  }
  const double revolutions = total / kTwoPi;
  return gamma.closed() ? std::round(revolutions) : revolutions;
}

TranslationArc find_translation_arc(const Polyline& gamma, Vec2 v) {
  if (norm(v) == 0.0) throw InvalidArgument("find_translation_arc: zero translation");
  if (distance(gamma.back() - gamma.front(), v) > kGeomTol * std::max(1.0, norm(v))) {
    throw InvalidArgument("find_translation_arc: arc endpoints do not differ by v");
  }
  const auto& pts = gamma.vertices();
  const std::size_t n = gamma.segment_count();
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  double best_t = 1.0;
  // gamma(t) - gamma(s) = v  <=>  gamma(t) lies on (segment i + v) with gamma(s) on segment i.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i] + v;
    const Vec2 b = pts[i + 1] + v;
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2 c = pts[j];
      const Vec2 d = pts[j + 1];
      if (segment_segment_distance(a, b, c, d) > kGeomTol) continue;
      for (double u : segment_meet_params(a, b, c, d, kGeomTol)) {
        const Vec2 q = c + u * (d - c);
        const Vec2 p = q - v;
        const Vec2 seg = pts[i + 1] - pts[i];
        const double w = std::clamp(dot(p - pts[i], seg) / dot(seg, seg), 0.0, 1.0);
        const double s = gamma.parameter_of(i, w);
        const double t = gamma.parameter_of(j, u);
        const double gap = std::abs(s - t);
        if (gap > 0.0 && (gap < best || (gap == best && s < best_s))) {
          best = gap;
          best_s = s;
          best_t = t;
        }
      }
    }
  }
  if (!std::isfinite(best)) throw ResolutionError("find_translation_arc: no parameter pair solves gamma(t) - gamma(s) = v");
  return {best_s, best_t, gamma.sub_arc(best_s, best_t)};
}

bool is_translation_arc(const Polyline& alpha, Vec2 v, double tol) {
  const Vec2 x = alpha.front();
  const Vec2 end = x + v;
  if (distance(alpha.back(), end) > tol) return false;
  const Polyline shifted = alpha.translated(v);
  const auto& p = alpha.vertices();
  const auto& q = shifted.vertices();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    for (std::size_t j = 0; j + 1 < q.size(); ++j) {
      if (segment_segment_distance(p[i], p[i + 1], q[j], q[j + 1]) > kGeomTol) continue;
      const auto range = near_range(p[i], p[i + 1], q[j], q[j + 1], kGeomTol);
      if (!range) continue;
      const Vec2 lo = p[i] + range->first * (p[i + 1] - p[i]);
      const Vec2 hi = p[i] + range->second * (p[i + 1] - p[i]);
      if (distance(lo, end) > tol || distance(hi, end) > tol) return false;
    }
  }
  return true;
}

bool arcs_intersect(const Polyline& p, const Polyline& q, double tol) {
  const auto& a = p.vertices();
  const auto& b = q.vertices();
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const double ax0 = std::min(a[i].x, a[i + 1].x) - tol, ax1 = std::max(a[i].x, a[i + 1].x) + tol;
    const double ay0 = std::min(a[i].y, a[i + 1].y) - tol, ay1 = std::max(a[i].y, a[i + 1].y) + tol;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      if (std::max(b[j].x, b[j + 1].x) < ax0 || std::min(b[j].x, b[j + 1].x) > ax1) continue;
      if (std::max(b[j].y, b[j + 1].y) < ay0 || std::min(b[j].y, b[j + 1].y) > ay1) continue;
      if (segments_intersect(a[i], a[i + 1], b[j], b[j + 1], tol)) return true;
    }
  }
  return false;
}

bool unions_intersect(std::span<const Polyline> p, std::span<const Polyline> q, double tol) {
  for (const auto& a : p) {
    for (const auto& b : q) {
      if (arcs_intersect(a, b, tol)) return true;
    }
  }
  return false;
}

bool point_in_loop(const Polyline& loop, Vec2 z) {
  const auto& v = loop.vertices();
  bool inside = false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[i + 1];
    if ((a.y > z.y) != (b.y > z.y)) {
      const double x = a.x + (z.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x > z.x) inside = !inside;
    }
  }
  return inside;
}

// ------------------------------------------------------------ convex hulls

std::vector<Vec2> convex_hull(std::span<const Vec2> points, double eps) {
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() <= 1) return p;

  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);

  if (eps > 0.0) {
    if (polygon_diameter(hull) <= eps) {
      Vec2 mean{};
      for (Vec2 h : hull) mean += h;
      return {mean / static_cast<double>(hull.size())};
    }
    std::vector<Vec2> merged;
    for (Vec2 h : hull) {
      if (merged.empty() || distance(merged.back(), h) > eps) merged.push_back(h);
    }
    if (merged.size() > 1 && distance(merged.front(), merged.back()) <= eps) merged.pop_back();
    hull = std::move(merged);
  }
  return hull;
}

double polygon_area(std::span<const Vec2> ccw) {
  double a = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) a += cross(ccw[i], ccw[(i + 1) % ccw.size()]);
  return 0.5 * a;
}

Vec2 polygon_centroid(std::span<const Vec2> ccw) {
  Vec2 mean{};
  for (Vec2 p : ccw) mean += p;
  if (ccw.empty()) return mean;
  mean = mean / static_cast<double>(ccw.size());
  const double area = polygon_area(ccw);
  if (ccw.size() < 3 || std::abs(area) < 1e-300) return mean;
  Vec2 c{};
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vec2 a = ccw[i] - mean;
    const Vec2 b = ccw[(i + 1) % ccw.size()] - mean;
    c += cross(a, b) * (a + b);
  }
  return mean + c / (6.0 * area);
}

double polygon_diameter(std::span<const Vec2> vertices) {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) d = std::max(d, distance(vertices[i], vertices[j]));
  }
  return d;
}

bool convex_polygon_contains(std::span<const Vec2> ccw, Vec2 p, double tol) {
  if (ccw.empty()) return false;
  if (ccw.size() == 1) return distance(ccw[0], p) <= tol;
  if (ccw.size() == 2) return point_segment_distance(p, ccw[0], ccw[1]) <= tol;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vec2 a = ccw[i];
    const Vec2 b = ccw[(i + 1) % ccw.size()];
    if (cross(b - a, p - a) / distance(a, b) < -tol) return false;
  }
  return true;
}

double convex_polygon_inner_distance(std::span<const Vec2> ccw, Vec2 p) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vec2 a = ccw[i];
    const Vec2 b = ccw[(i + 1) % ccw.size()];
    d = std::min(d, cross(b - a, p - a) / distance(a, b));
  }
  return d;
}

namespace {

// Uniform bucket grid for "any point within r of c" queries.
class PointBuckets {
 public:
  PointBuckets(std::span<const Vec2> points, double cell) : cell_(cell) {
    x0_ = y0_ = std::numeric_limits<double>::infinity();
    double x1 = -x0_, y1 = -y0_;
    for (Vec2 p : points) {
      x0_ = std::min(x0_, p.x);
      y0_ = std::min(y0_, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    nx_ = static_cast<std::int64_t>((x1 - x0_) / cell_) + 1;
    ny_ = static_cast<std::int64_t>((y1 - y0_) / cell_) + 1;
    start_.assign(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
    std::vector<std::size_t> key(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      key[i] = index(cx(points[i].x), cy(points[i].y));
      ++start_[key[i] + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    items_.resize(points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) items_[fill[key[i]]++] = points[i];
  }

  bool any_within(Vec2 c, double r) const {
    const std::int64_t i0 = std::max<std::int64_t>(0, cx(c.x - r)), i1 = std::min(nx_ - 1, cx(c.x + r));
    const std::int64_t j0 = std::max<std::int64_t>(0, cy(c.y - r)), j1 = std::min(ny_ - 1, cy(c.y + r));
    for (std::int64_t j = j0; j <= j1; ++j) {
      for (std::int64_t i = i0; i <= i1; ++i) {
        const std::size_t k = index(i, j);
        for (std::size_t m = start_[k]; m < start_[k + 1]; ++m) {
          if (distance(items_[m], c) < r) return true;
        }
      }
    }
    return false;
  }

 private:
  std::int64_t cx(double x) const { return static_cast<std::int64_t>(std::floor((x - x0_) / cell_)); }
  std::int64_t cy(double y) const { return static_cast<std::int64_t>(std::floor((y - y0_) / cell_)); }
  std::size_t index(std::int64_t i, std::int64_t j) const {
    i = std::clamp<std::int64_t>(i, 0, nx_ - 1);
    j = std::clamp<std::int64_t>(j, 0, ny_ - 1);
    return static_cast<std::size_t>(j * nx_ + i);
  }

  double cell_;
  double x0_, y0_;
  std::int64_t nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;
  std::vector<Vec2> items_;
};

}  // namespace

bool is_r_quasiconvex(std::span<const Vec2> points, double r, int samples) {
  if (points.empty()) throw InvalidArgument("is_r_quasiconvex: empty point set");
  if (!(r > 0.0)) throw InvalidArgument("is_r_quasiconvex: radius must be positive");
  const auto hull = convex_hull(points);
  if (hull.size() < 3) return true;

  double x0 = hull[0].x, x1 = hull[0].x, y0 = hull[0].y, y1 = hull[0].y;
  for (Vec2 h : hull) {
    x0 = std::min(x0, h.x);
    x1 = std::max(x1, h.x);
    y0 = std::min(y0, h.y);
    y1 = std::max(y1, h.y);
  }
  double pitch = r / 4.0;
  if (samples > 0) pitch = std::min(pitch, std::max(x1 - x0, y1 - y0) / samples);

  const PointBuckets buckets(points, r);
  const auto nx = static_cast<std::int64_t>((x1 - x0) / pitch);
  const auto ny = static_cast<std::int64_t>((y1 - y0) / pitch);
  for (std::int64_t j = 0; j <= ny; ++j) {
    for (std::int64_t i = 0; i <= nx; ++i) {
      const Vec2 c{x0 + i * pitch, y0 + j * pitch};
      if (convex_polygon_inner_distance(hull, c) < r) continue;
      if (!buckets.any_within(c, r)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------- lattice sets

LatticeSet LatticeSet::minus_line(Vec2 direction) {
  if (norm(direction) == 0.0) throw InvalidArgument("LatticeSet::minus_line: zero direction");
  LatticeSet s(Kind::MinusLine);
  s.direction_ = direction / norm(direction);
  return s;
}

LatticeSet LatticeSet::finite(std::vector<LatticeVec> elements) {
  LatticeSet s(Kind::Finite);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  s.elements_ = std::move(elements);
  return s;
}

bool LatticeSet::contains(LatticeVec v) const {
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Punctured:
      return !v.is_zero();
    case Kind::MinusLine: {
      if (v.is_zero()) return false;
      const Vec2 w = v.to_vec();
      return std::abs(cross(w, direction_)) > 1e-12 * norm(w);
    }
    case Kind::Finite:
      return std::binary_search(elements_.begin(), elements_.end(), v);
  }
  return false;
}

std::vector<LatticeVec> LatticeSet::enumerate(std::int64_t reach) const {
  std::vector<LatticeVec> out;
  for (std::int64_t a = -reach; a <= reach; ++a) {
    for (std::int64_t b = -reach; b <= reach; ++b) {
      if (contains({a, b})) out.push_back({a, b});
    }
  }
  return out;
}

std::string LatticeSet::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::All:
      return "Z2";
    case Kind::Punctured:
      return "Z2*";
    case Kind::MinusLine:
      os.precision(17);
      os << "Z2* minus R(" << direction_.x << "," << direction_.y << ")";
      return os.str();
    case Kind::Finite:
      os << "finite(" << elements_.size() << ")";
      return os.str();
  }
  return {};
}

bool is_r_dense(const LatticeSet& lattice, double r, const Box& window) {
  if (!(r > 0.0)) throw InvalidArgument("is_r_dense: radius must be positive");
  const double pitch = std::min(r / 4.0, 0.125);
  const auto nx = static_cast<std::int64_t>(std::ceil((window.x1 - window.x0) / pitch));
  const auto ny = static_cast<std::int64_t>(std::ceil((window.y1 - window.y0) / pitch));
  for (std::int64_t j = 0; j <= ny; ++j) {
    for (std::int64_t i = 0; i <= nx; ++i) {
      const Vec2 c{std::min(window.x0 + i * pitch, window.x1), std::min(window.y0 + j * pitch, window.y1)};
      bool hit = false;
      const auto a0 = static_cast<std::int64_t>(std::floor(c.x - r));
      const auto a1 = static_cast<std::int64_t>(std::ceil(c.x + r));
      const auto b0 = static_cast<std::int64_t>(std::floor(c.y - r));
      const auto b1 = static_cast<std::int64_t>(std::ceil(c.y + r));
      for (std::int64_t a = a0; a <= a1 && !hit; ++a) {
        for (std::int64_t b = b0; b <= b1 && !hit; ++b) {
          const LatticeVec v{a, b};
          hit = distance(v.to_vec(), c) < r && lattice.contains(v);
        }
      }
      if (!hit) return false;
    }
  }
  return true;
}

// --------------------------------------------------------- directions at oo

bool AngularInterval::contains(double angle, double tol) const {
  double d = std::fmod(angle - start, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d <= width + tol || d >= kTwoPi - tol;
}

bool DirectionSet::contains(double angle, double tol) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const AngularInterval& iv) { return iv.contains(angle, tol); });
}

double DirectionSet::total_width() const {
  double w = 0.0;
  for (const auto& iv : intervals_) w += iv.width;
  return w;
}

DirectionSet boundary_directions(std::span<const Vec2> points, double inner_radius, double merge_tol) {
  if (!(inner_radius > 0.0)) throw InvalidArgument("boundary_directions: inner radius must be positive");
  std::vector<double> angles;
  for (Vec2 p : points) {
    if (norm(p) >= inner_radius) angles.push_back(angle_of(p));
  }
  if (angles.empty()) return {};
  std::sort(angles.begin(), angles.end());

  const std::size_t m = angles.size();
  auto gap_after = [&](std::size_t k) {
    return k + 1 < m ? angles[k + 1] - angles[k] : angles[0] + kTwoPi - angles[m - 1];
  };
  std::vector<std::size_t> splits;
  for (std::size_t k = 0; k < m; ++k) {
    if (gap_after(k) > merge_tol) splits.push_back(k);
  }
  if (splits.empty()) return DirectionSet({{0.0, kTwoPi}});

  std::vector<AngularInterval> out;
  for (std::size_t s = 0; s < splits.size(); ++s) {
    const std::size_t first = (splits[s] + 1) % m;
    const std::size_t last = splits[(s + 1) % splits.size()];
    double width = angles[last] - angles[first];
    if (width < 0.0) width += kTwoPi;
    out.push_back({angles[first], width});
  }
  std::sort(out.begin(), out.end(), [](const AngularInterval& a, const AngularInterval& b) { return a.start < b.start; });
  return DirectionSet(std::move(out));
}

std::string format_real(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

}  // namespace torusrot

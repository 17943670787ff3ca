#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace torusrot {

// Absolute coordinate tolerance shared by all planar predicates.
inline constexpr double kGeomTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Element of Z^2.
struct LatticeVec {
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr Vec2 to_vec() const { return {static_cast<double>(a), static_cast<double>(b)}; }
  constexpr bool is_zero() const { return a == 0 && b == 0; }
  friend constexpr LatticeVec operator+(LatticeVec p, LatticeVec q) { return {p.a + q.a, p.b + q.b}; }
  friend constexpr LatticeVec operator-(LatticeVec p) { return {-p.a, -p.b}; }
  friend constexpr LatticeVec operator*(std::int64_t k, LatticeVec p) { return {k * p.a, k * p.b}; }
  friend constexpr auto operator<=>(const LatticeVec&, const LatticeVec&) = default;
};

std::int64_t gcd_abs(std::int64_t a, std::int64_t b);
bool is_primitive(LatticeVec v);
// Representative of {v, -v} with a > 0, or a == 0 and b > 0.
LatticeVec canonical_sign(LatticeVec v);

// Orthogonal projection onto the direction of v: <x, v/|v|>. Throws on v == 0.
double project(Vec2 x, Vec2 v);
// (a, b) -> (-b, a).
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
// Angle of v in [0, 2*pi).
double angle_of(Vec2 v);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d);
// Closed segments [a,b] and [c,d] meet within tol (touching endpoints count).
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol = kGeomTol);

// Ordered vertex list standing for a compact arc or a loop. Consecutive
// vertices are distinct; a closed polyline repeats its first vertex at the end.
class Polyline {
 public:
  Polyline(std::vector<Vec2> vertices, bool closed = false);

  static Polyline segment(Vec2 a, Vec2 b) { return Polyline({a, b}); }
  // Closes the loop by appending the first vertex.
  static Polyline loop(std::vector<Vec2> vertices);
  static Polyline regular_polygon(Vec2 center, double radius, int sides, double phase = 0.0);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  bool closed() const { return closed_; }
  std::size_t segment_count() const { return vertices_.size() - 1; }
  Vec2 front() const { return vertices_.front(); }
  Vec2 back() const { return vertices_.back(); }
  double length() const { return cumulative_.back(); }

  // Arclength parametrization on [0, 1].
  Vec2 point_at(double t) const;
  // Normalized arclength parameter of a point lying on segment i at local fraction u.
  double parameter_of(std::size_t segment, double u) const;

  Polyline reversed() const;
  Polyline translated(Vec2 v) const;
  // gamma * other; requires other.front() == back() within tolerance.
  Polyline concat(const Polyline& other) const;
  // Restriction to the parameter interval between s and t, oriented from s to t.
  Polyline sub_arc(double s, double t) const;
  // Splits every segment into pieces no longer than max_len.
  Polyline refined(double max_len) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<double> cumulative_;
  bool closed_ = false;
};

// Total signed angle swept by (gamma(t) - z)/|gamma(t) - z|, in revolutions.
// Closed polylines yield their (integer) winding number about z.
double index_of_arc(const Polyline& gamma, Vec2 z);

struct TranslationArc {
  double s0 = 0.0;  // gamma(s0) = x
  double t0 = 0.0;  // gamma(t0) = x + v
  Polyline arc;     // oriented from x to x + v
};

// Sub-arc of gamma joining some x to x + v that meets its v-translate only at
// x + v. Requires gamma to run from y to y + v. Solves gamma(t) - gamma(s) = v
// exactly segment by segment and keeps the pair minimizing |s - t|.
TranslationArc find_translation_arc(const Polyline& gamma, Vec2 v);

// [alpha] and [alpha + v] meet only at the endpoint alpha.back() = alpha.front() + v.
bool is_translation_arc(const Polyline& alpha, Vec2 v, double tol = 1e-6);

bool arcs_intersect(const Polyline& p, const Polyline& q, double tol = kGeomTol);
// Any pair of polylines from the two families intersects.
bool unions_intersect(std::span<const Polyline> p, std::span<const Polyline> q,
                      double tol = kGeomTol);

// Even-odd ray casting against a closed polyline.
bool point_in_loop(const Polyline& loop, Vec2 z);

// Convex hull (counterclockwise, no collinear vertices). Points closer than
// eps to the previously kept vertex are merged.
std::vector<Vec2> convex_hull(std::span<const Vec2> points, double eps = 0.0);
double polygon_area(std::span<const Vec2> ccw);
// Area centroid, falling back to the vertex mean for degenerate polygons.
Vec2 polygon_centroid(std::span<const Vec2> ccw);
double polygon_diameter(std::span<const Vec2> vertices);
// Inside or on the boundary (within tol) of a convex CCW polygon; handles
// point and segment hulls.
bool convex_polygon_contains(std::span<const Vec2> ccw, Vec2 p, double tol = kGeomTol);
// Signed distance from p to the boundary, positive inside. Requires >= 3 vertices.
double convex_polygon_inner_distance(std::span<const Vec2> ccw, Vec2 p);

// True iff no open ball of radius r lying in the convex hull of points is
// disjoint from points. Ball centres are sampled on a grid of pitch
// min(r/4, extent/samples) over the hull.
bool is_r_quasiconvex(std::span<const Vec2> points, double r, int samples = 64);

struct Box {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

// Symbolic subset of Z^2: everything, Z^2 minus the origin, Z^2 minus a line
// through the origin, or an explicit finite list.
class LatticeSet {
 public:
  enum class Kind { All, Punctured, MinusLine, Finite };

  static LatticeSet all() { return LatticeSet(Kind::All); }
  static LatticeSet punctured() { return LatticeSet(Kind::Punctured); }
  // Z^2 \ (R * direction). An irrational direction removes only the origin.
  static LatticeSet minus_line(Vec2 direction);
  static LatticeSet finite(std::vector<LatticeVec> elements);

  Kind kind() const { return kind_; }
  Vec2 line_direction() const { return direction_; }
  bool contains(LatticeVec v) const;
  // Elements with max(|a|, |b|) <= reach, lexicographic order.
  std::vector<LatticeVec> enumerate(std::int64_t reach) const;
  std::string describe() const;

 private:
  explicit LatticeSet(Kind kind) : kind_(kind) {}
  Kind kind_;
  Vec2 direction_{};
  std::vector<LatticeVec> elements_;
};

// True iff every open ball of radius r centred at a sampled point of window
// contains an element of the set.
bool is_r_dense(const LatticeSet& lattice, double r, const Box& window);

struct AngularInterval {
  double start = 0.0;  // in [0, 2*pi)
  double width = 0.0;  // counterclockwise extent, in [0, 2*pi]

  bool contains(double angle, double tol = 0.0) const;
};

// Directions at infinity sampled from a finite set.
class DirectionSet {
 public:
  DirectionSet() = default;
  explicit DirectionSet(std::vector<AngularInterval> intervals) : intervals_(std::move(intervals)) {}

  const std::vector<AngularInterval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  bool contains(double angle, double tol = 0.0) const;
  double total_width() const;

 private:
  std::vector<AngularInterval> intervals_;
};

inline constexpr double kDirectionMergeTol = 2.0 * std::numbers::pi / 180.0;

// Angular intervals covered by x/|x| over points with |x| >= inner_radius,
// merged across gaps up to merge_tol.
DirectionSet boundary_directions(std::span<const Vec2> points, double inner_radius,
                                 double merge_tol = kDirectionMergeTol);

// Shortest decimal text that parses back to exactly x.
std::string format_real(double x);

}  // namespace torusrot

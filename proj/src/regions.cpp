#include "torusrot/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "torusrot/errors.hpp"
#include "torusrot/parallel.hpp"

namespace torusrot {

namespace {

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

constexpr std::array<std::array<int, 2>, 8> kEight{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

void check_window(const Box& w, int resolution) {
  if (!is_integer(w.x0) || !is_integer(w.x1) || !is_integer(w.y0) || !is_integer(w.y1)) {
    throw InvalidArgument("GridRegion: window edges must be integers");
  }
  if (w.x1 <= w.x0 || w.y1 <= w.y0) throw InvalidArgument("GridRegion: window must have positive extent");
  if (resolution < 8) throw InvalidArgument("GridRegion: resolution must be >= 8");
}

bool in_half_plane(Vec2 p, Vec2 v) { return dot(p, v) >= 0.0; }

}  // namespace

GridRegion::GridRegion(Box window, int resolution) : window_(window), resolution_(resolution) {
  check_window(window, resolution);
  width_ = static_cast<std::int64_t>(window.x1 - window.x0) * resolution;
  height_ = static_cast<std::int64_t>(window.y1 - window.y0) * resolution;
  bits_.assign(static_cast<std::size_t>(width_ * height_), 0);
}

Vec2 GridRegion::cell_center(std::int64_t i, std::int64_t j) const {
  return {window_.x0 + (static_cast<double>(i) + 0.5) / resolution_,
          window_.y0 + (static_cast<double>(j) + 0.5) / resolution_};
}

std::optional<Cell> GridRegion::cell_of(Vec2 z) const {
  if (!is_finite(z)) return std::nullopt;
  const double fi = std::floor((z.x - window_.x0) * resolution_);
  const double fj = std::floor((z.y - window_.y0) * resolution_);
  if (fi < 0.0 || fj < 0.0 || fi >= static_cast<double>(width_) || fj >= static_cast<double>(height_)) {
    return std::nullopt;
  }
  return Cell{static_cast<std::int64_t>(fi), static_cast<std::int64_t>(fj)};
}

bool GridRegion::contains(Vec2 z) const {
  const auto c = cell_of(z);
  return c && at(*c);
}

std::int64_t GridRegion::count() const {
  return static_cast<std::int64_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<Cell> GridRegion::cells() const {
  std::vector<Cell> out;
  for (std::int64_t j = 0; j < height_; ++j) {
    for (std::int64_t i = 0; i < width_; ++i) {
      if (at(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<Vec2> GridRegion::cell_centers() const {
  std::vector<Vec2> out;
  for (Cell c : cells()) out.push_back(cell_center(c));
  return out;
}

bool GridRegion::same_grid(const GridRegion& other) const {
  return window_.x0 == other.window_.x0 && window_.x1 == other.window_.x1 && window_.y0 == other.window_.y0 &&
         window_.y1 == other.window_.y1 && resolution_ == other.resolution_;
}

void GridRegion::require_same_grid(const GridRegion& other) const {
  if (!same_grid(other)) throw InvalidArgument("GridRegion: window or resolution mismatch");
}

GridRegion GridRegion::translated(LatticeVec v) const {
  GridRegion out(window_, resolution_);
  const std::int64_t di = v.a * resolution_;
  const std::int64_t dj = v.b * resolution_;
  for (std::int64_t j = 0; j < height_; ++j) {
    for (std::int64_t i = 0; i < width_; ++i) {
      if (at(i, j) && in_grid(i + di, j + dj)) out.set(i + di, j + dj);
    }
  }
  return out;
}

GridRegion GridRegion::complement() const {
  GridRegion out(window_, resolution_);
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] ? 0 : 1;
  return out;
}

GridRegion GridRegion::operator&(const GridRegion& other) const {
  require_same_grid(other);
  GridRegion out(window_, resolution_);
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] & other.bits_[k];
  return out;
}

GridRegion GridRegion::operator|(const GridRegion& other) const {
  require_same_grid(other);
  GridRegion out(window_, resolution_);
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = bits_[k] | other.bits_[k];
  return out;
}

bool GridRegion::intersects(const GridRegion& other) const {
  require_same_grid(other);
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] && other.bits_[k]) return true;
  }
  return false;
}

bool GridRegion::meets_translate(LatticeVec v) const {
  const std::int64_t di = v.a * resolution_;
  const std::int64_t dj = v.b * resolution_;
  const std::int64_t i0 = std::max<std::int64_t>(0, -di), i1 = std::min(width_, width_ - di);
  const std::int64_t j0 = std::max<std::int64_t>(0, -dj), j1 = std::min(height_, height_ - dj);
  for (std::int64_t j = j0; j < j1; ++j) {
    for (std::int64_t i = i0; i < i1; ++i) {
      if (at(i, j) && at(i + di, j + dj)) return true;
    }
  }
  return false;
}

bool GridRegion::subset_of(const GridRegion& other) const {
  require_same_grid(other);
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] && !other.bits_[k]) return false;
  }
  return true;
}

bool GridRegion::touches_boundary() const {
  for (std::int64_t i = 0; i < width_; ++i) {
    if (at(i, 0) || at(i, height_ - 1)) return true;
  }
  for (std::int64_t j = 0; j < height_; ++j) {
    if (at(0, j) || at(width_ - 1, j)) return true;
  }
  return false;
}

bool operator==(const GridRegion& a, const GridRegion& b) { return a.same_grid(b) && a.bits_ == b.bits_; }

Labeling label_components(const GridRegion& region, Connectivity connectivity, bool complement) {
  Labeling out;
  const auto w = region.width();
  const auto h = region.height();
  out.labels.assign(static_cast<std::size_t>(w * h), -1);
  auto member = [&](std::int64_t i, std::int64_t j) { return region.at(i, j) != complement; };
  std::vector<Cell> stack;
  for (std::int64_t j0 = 0; j0 < h; ++j0) {
    for (std::int64_t i0 = 0; i0 < w; ++i0) {
      if (!member(i0, j0) || out.labels[static_cast<std::size_t>(j0 * w + i0)] >= 0) continue;
      const std::int32_t label = out.count++;
      out.labels[static_cast<std::size_t>(j0 * w + i0)] = label;
      stack.push_back({i0, j0});
      while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        const int steps = connectivity == Connectivity::Four ? 4 : 8;
        for (int k = 0; k < steps; ++k) {
          const std::int64_t i = c.i + kEight[static_cast<std::size_t>(k)][0];
          const std::int64_t j = c.j + kEight[static_cast<std::size_t>(k)][1];
          if (!region.in_grid(i, j) || !member(i, j)) continue;
          auto& slot = out.labels[static_cast<std::size_t>(j * w + i)];
          if (slot >= 0) continue;
          slot = label;
          stack.push_back({i, j});
        }
      }
    }
  }
  return out;
}

GridRegion component_region(const GridRegion& region, const Labeling& labeling, std::int32_t label) {
  GridRegion out(region.window(), region.resolution());
  for (std::int64_t j = 0; j < region.height(); ++j) {
    for (std::int64_t i = 0; i < region.width(); ++i) {
      if (labeling.at(region, {i, j}) == label) out.set(i, j);
    }
  }
  return out;
}

GridRegion region_from_predicate(const Box& window, int resolution, const std::function<bool(Vec2)>& predicate) {
  GridRegion out(window, resolution);
  parallel_for(static_cast<std::size_t>(out.height()), [&](std::size_t row) {
    const auto j = static_cast<std::int64_t>(row);
    for (std::int64_t i = 0; i < out.width(); ++i) {
      if (predicate(out.cell_center(i, j))) out.set(i, j);
    }
  });
  return out;
}

GridRegion connected_component(const GridRegion& region, Vec2 seed) {
  const auto cell = region.cell_of(seed);
  if (!cell || !region.at(*cell)) throw InvalidArgument("connected_component: seed cell is not marked");
  const auto labeling = label_components(region, Connectivity::Four);
  return component_region(region, labeling, labeling.at(region, *cell));
}

GridRegion fill_region(const GridRegion& region) {
  if (label_components(region, Connectivity::Four).count > 1) {
    throw InvalidArgument("fill_region: region must be connected");
  }
  const auto holes = label_components(region, Connectivity::Eight, true);
  std::vector<bool> bounded(static_cast<std::size_t>(holes.count), true);
  const auto w = region.width();
  const auto h = region.height();
  auto mark_edge = [&](std::int64_t i, std::int64_t j) {
    const auto l = holes.at(region, {i, j});
    if (l >= 0) bounded[static_cast<std::size_t>(l)] = false;
  };
  for (std::int64_t i = 0; i < w; ++i) {
    mark_edge(i, 0);
    mark_edge(i, h - 1);
  }
  for (std::int64_t j = 0; j < h; ++j) {
    mark_edge(0, j);
    mark_edge(w - 1, j);
  }
  GridRegion out = region;
  for (std::int64_t j = 0; j < h; ++j) {
    for (std::int64_t i = 0; i < w; ++i) {
      const auto l = holes.at(region, {i, j});
      if (l >= 0 && bounded[static_cast<std::size_t>(l)]) out.set(i, j);
    }
  }
  return out;
}

UEpsilonResult u_epsilon_region(const TorusLift& lift, Vec2 z, double eps, std::int64_t N, const Box& window,
                                int resolution) {
  if (!(eps > 0.0)) throw InvalidArgument("u_epsilon_region: eps must be positive");
  if (N < 0) throw InvalidArgument("u_epsilon_region: N must be >= 0");
  GridRegion ball(window, resolution);
  const auto home = ball.cell_of(z);
  if (!home) throw InvalidArgument("u_epsilon_region: z outside window");
  ball.set(*home);
  const auto reach = static_cast<std::int64_t>(std::ceil(eps * resolution)) + 1;
  for (std::int64_t j = home->j - reach; j <= home->j + reach; ++j) {
    for (std::int64_t i = home->i - reach; i <= home->i + reach; ++i) {
      if (ball.in_grid(i, j) && distance(ball.cell_center(i, j), z) < eps) ball.set(i, j);
    }
  }

  // Images of the ball cell centres under f^n, |n| <= N.
  const auto seeds = ball.cells();
  std::vector<std::vector<Cell>> hits(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t s) {
    const Vec2 c = ball.cell_center(seeds[s]);
    for (int dir : {1, -1}) {
      Vec2 w = c;
      for (std::int64_t n = 1; n <= N; ++n) {
        w = dir > 0 ? lift.apply(w) : lift.inverse_apply(w);
        if (const auto cell = ball.cell_of(w)) hits[s].push_back(*cell);
      }
    }
  });
  GridRegion orbit = ball;
  for (const auto& list : hits) {
    for (Cell c : list) orbit.set(c);
  }

  UEpsilonResult result{fill_region(connected_component(orbit, z)), std::nullopt, false};

  // Least k with f^k(U) meeting U, probed through cell centres.
  const auto cells = result.region.cells();
  std::int64_t best = N + 1;
  for (Cell c : cells) {
    Vec2 w = result.region.cell_center(c);
    for (std::int64_t k = 1; k < best; ++k) {
      w = lift.apply(w);
      if (result.region.contains(w)) {
        best = k;
        break;
      }
    }
    if (best == 1) break;
  }
  if (best <= N) result.period = best;
  result.free = !result.period || *result.period > 1;
  return result;
}

namespace {

GridRegion unbounded_part(const GridRegion& region) {
  const auto labeling = label_components(region, Connectivity::Four);
  std::vector<bool> keep(static_cast<std::size_t>(labeling.count), false);
  const auto w = region.width();
  const auto h = region.height();
  auto mark = [&](std::int64_t i, std::int64_t j) {
    const auto l = labeling.at(region, {i, j});
    if (l >= 0) keep[static_cast<std::size_t>(l)] = true;
  };
  for (std::int64_t i = 0; i < w; ++i) {
    mark(i, 0);
    mark(i, h - 1);
  }
  for (std::int64_t j = 0; j < h; ++j) {
    mark(0, j);
    mark(w - 1, j);
  }
  GridRegion out(region.window(), region.resolution());
  for (std::int64_t j = 0; j < h; ++j) {
    for (std::int64_t i = 0; i < w; ++i) {
      const auto l = labeling.at(region, {i, j});
      if (l >= 0 && keep[static_cast<std::size_t>(l)]) out.set(i, j);
    }
  }
  return out;
}

GridRegion half_plane_intersection(const TorusLift& lift, Vec2 v, std::int64_t N, const Box& window, int resolution,
                                   bool both_directions) {
  if (!(norm(v) > 0.0)) throw InvalidArgument("omega_region: v must be nonzero");
  if (N < 0) throw InvalidArgument("omega_region: N must be >= 0");
  const auto raw = region_from_predicate(window, resolution, [&](Vec2 c) {
    if (!in_half_plane(c, v)) return false;
    Vec2 w = c;
    for (std::int64_t k = 1; k <= N; ++k) {
      w = lift.apply(w);
      if (!in_half_plane(w, v)) return false;
    }
    if (!both_directions) return true;
    w = c;
    for (std::int64_t k = 1; k <= N; ++k) {
      w = lift.inverse_apply(w);
      if (!in_half_plane(w, v)) return false;
    }
    return true;
  });
  return unbounded_part(raw);
}

}  // namespace

GridRegion omega_region(const TorusLift& lift, Vec2 v, std::int64_t N, const Box& window, int resolution) {
  return half_plane_intersection(lift, v, N, window, resolution, true);
}

GridRegion b_region(const TorusLift& lift, Vec2 v, std::int64_t N, const Box& window, int resolution) {
  return half_plane_intersection(lift, v, N, window, resolution, false);
}

std::string to_string(Essentiality e) {
  switch (e) {
    case Essentiality::Inessential:
      return "Inessential";
    case Essentiality::EssentialNotFully:
      return "EssentialNotFully";
    case Essentiality::FullyEssential:
      return "FullyEssential";
  }
  return "Inessential";
}

std::vector<LatticeVec> lattice_basis(std::span<const LatticeVec> vectors) {
  std::vector<LatticeVec> rest(vectors.begin(), vectors.end());
  // Euclid on first coordinates collects their gcd into the pivot row.
  LatticeVec pivot{0, 0};
  for (LatticeVec& v : rest) {
    while (v.a != 0) {
      if (pivot.a == 0 || std::abs(v.a) < std::abs(pivot.a)) std::swap(pivot, v);
      const std::int64_t q = v.a / pivot.a;
      v = LatticeVec{v.a - q * pivot.a, v.b - q * pivot.b};
    }
  }
  std::int64_t g = 0;
  for (const LatticeVec& v : rest) g = std::gcd(g, v.b);
  std::vector<LatticeVec> basis;
  if (pivot.a != 0) {
    if (pivot.a < 0) pivot = -pivot;
    if (g != 0) pivot.b = ((pivot.b % g) + g) % g;
    basis.push_back(pivot);
  }
  if (g != 0) basis.push_back({0, g});
  return basis;
}

bool is_torus_periodic(const GridRegion& region) {
  const std::int64_t r = region.resolution();
  for (std::int64_t j = 0; j < region.height(); ++j) {
    for (std::int64_t i = 0; i < region.width(); ++i) {
      if (i + r < region.width() && region.at(i, j) != region.at(i + r, j)) return false;
      if (j + r < region.height() && region.at(i, j) != region.at(i, j + r)) return false;
    }
  }
  return true;
}

EssentialityClass essentiality_class(const GridRegion& region) {
  const Box& w = region.window();
  if (w.x1 - w.x0 < 3.0 || w.y1 - w.y0 < 3.0) {
    throw InvalidArgument("essentiality_class: window must span at least 3x3 fundamental domains");
  }
  if (!is_torus_periodic(region)) throw InvalidArgument("essentiality_class: region is not torus-periodic");

  const auto labeling = label_components(region, Connectivity::Four);
  const std::int64_t r = region.resolution();
  // Components meeting the central fundamental domain.
  const std::int64_t ci = static_cast<std::int64_t>(std::floor((w.x1 - w.x0) / 2.0)) * r;
  const std::int64_t cj = static_cast<std::int64_t>(std::floor((w.y1 - w.y0) / 2.0)) * r;
  std::vector<bool> central(static_cast<std::size_t>(labeling.count), false);
  for (std::int64_t j = cj; j < cj + r && j < region.height(); ++j) {
    for (std::int64_t i = ci; i < ci + r && i < region.width(); ++i) {
      const auto l = labeling.at(region, {i, j});
      if (l >= 0) central[static_cast<std::size_t>(l)] = true;
    }
  }

  std::vector<std::vector<LatticeVec>> lambda(static_cast<std::size_t>(labeling.count));
  for (std::int64_t a = -2; a <= 2; ++a) {
    for (std::int64_t b = -2; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      std::vector<bool> hit(static_cast<std::size_t>(labeling.count), false);
      for (std::int64_t j = 0; j < region.height(); ++j) {
        for (std::int64_t i = 0; i < region.width(); ++i) {
          const auto l = labeling.at(region, {i, j});
          if (l < 0 || hit[static_cast<std::size_t>(l)]) continue;
          const std::int64_t ti = i + a * r;
          const std::int64_t tj = j + b * r;
          if (region.in_grid(ti, tj) && labeling.at(region, {ti, tj}) == l) hit[static_cast<std::size_t>(l)] = true;
        }
      }
      for (std::size_t l = 0; l < hit.size(); ++l) {
        if (hit[l]) lambda[l].push_back({a, b});
      }
    }
  }

  EssentialityClass best;
  for (std::size_t l = 0; l < lambda.size(); ++l) {
    if (!central[l]) continue;
    auto basis = lattice_basis(lambda[l]);
    if (static_cast<int>(basis.size()) > best.rank) {
      best.rank = static_cast<int>(basis.size());
      if (best.rank == 1) basis[0] = canonical_sign(basis[0]);
      best.generators = std::move(basis);
    }
  }
  best.kind = static_cast<Essentiality>(best.rank);
  return best;
}

double default_fixed_tolerance(const TorusLift& lift) {
  if (lift.kind() == FamilyKind::Fayad) return 1e-4;
  if (lift.kind() == FamilyKind::Composite) {
    for (const auto& part : std::get<family::Composite>(lift.params()).parts) {
      if (default_fixed_tolerance(part) > 1e-6) return 1e-4;
    }
  }
  return 1e-6;
}

GridRegion fixed_region(const TorusLift& lift, double tol, const Box& window, int resolution) {
  if (!(tol > 0.0)) throw InvalidArgument("fixed_region: tol must be positive");
  const auto unit = region_from_predicate({0.0, 1.0, 0.0, 1.0}, resolution,
                                          [&](Vec2 c) { return norm(lift.apply(c) - c) <= tol; });
  GridRegion out(window, resolution);
  const std::int64_t r = resolution;
  for (std::int64_t j = 0; j < out.height(); ++j) {
    for (std::int64_t i = 0; i < out.width(); ++i) {
      if (unit.at(i % r, j % r)) out.set(i, j);
    }
  }
  return out;
}

}  // namespace torusrot

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torusrot/geom.hpp"
#include "torusrot/maps.hpp"

namespace torusrot {

struct Cell {
  std::int64_t i = 0;  // column, from x0
  std::int64_t j = 0;  // row, from y0
  friend bool operator==(Cell, Cell) = default;
};

// Boolean raster over a lattice-aligned window with `resolution` cells per
// unit. Cell (i, j) covers [x0 + i/R, x0 + (i+1)/R) x [y0 + j/R, y0 + (j+1)/R).
class GridRegion {
 public:
  GridRegion(Box window, int resolution);

  const Box& window() const { return window_; }
  int resolution() const { return resolution_; }
  std::int64_t width() const { return width_; }
  std::int64_t height() const { return height_; }
  std::int64_t cell_total() const { return width_ * height_; }

  bool in_grid(std::int64_t i, std::int64_t j) const { return i >= 0 && j >= 0 && i < width_ && j < height_; }
  bool at(std::int64_t i, std::int64_t j) const { return bits_[index(i, j)] != 0; }
  bool at(Cell c) const { return at(c.i, c.j); }
  void set(std::int64_t i, std::int64_t j, bool value = true) { bits_[index(i, j)] = value ? 1 : 0; }
  void set(Cell c, bool value = true) { set(c.i, c.j, value); }

  Vec2 cell_center(std::int64_t i, std::int64_t j) const;
  Vec2 cell_center(Cell c) const { return cell_center(c.i, c.j); }
  // Cell containing z, or nullopt outside the window.
  std::optional<Cell> cell_of(Vec2 z) const;
  bool contains(Vec2 z) const;

  std::int64_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<Cell> cells() const;
  std::vector<Vec2> cell_centers() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool same_grid(const GridRegion& other) const;
  // Shift by an integer vector; cells leaving the window are dropped.
  GridRegion translated(LatticeVec v) const;
  GridRegion complement() const;
  GridRegion operator&(const GridRegion& other) const;
  GridRegion operator|(const GridRegion& other) const;
  bool intersects(const GridRegion& other) const;
  // Whether the region meets its own translate by v.
  bool meets_translate(LatticeVec v) const;
  bool subset_of(const GridRegion& other) const;
  bool touches_boundary() const;

  friend bool operator==(const GridRegion& a, const GridRegion& b);

 private:
  std::size_t index(std::int64_t i, std::int64_t j) const { return static_cast<std::size_t>(j * width_ + i); }
  void require_same_grid(const GridRegion& other) const;

  Box window_;
  int resolution_;
  std::int64_t width_;
  std::int64_t height_;
  std::vector<std::uint8_t> bits_;
};

enum class Connectivity { Four, Eight };

// Component labels (-1 for cells not in the labelled set) over the marked
// cells, or over the unmarked cells when `complement` is set.
struct Labeling {
  std::vector<std::int32_t> labels;
  std::int32_t count = 0;
  std::int32_t at(const GridRegion& g, Cell c) const { return labels[static_cast<std::size_t>(c.j * g.width() + c.i)]; }
};

Labeling label_components(const GridRegion& region, Connectivity connectivity, bool complement = false);
GridRegion component_region(const GridRegion& region, const Labeling& labeling, std::int32_t label);

GridRegion region_from_predicate(const Box& window, int resolution, const std::function<bool(Vec2)>& predicate);

// 4-connected component of the cell containing seed.
GridRegion connected_component(const GridRegion& region, Vec2 seed);

// Region plus every 8-connected complementary component that does not touch
// the window boundary.
GridRegion fill_region(const GridRegion& region);

struct UEpsilonResult {
  GridRegion region;
  std::optional<std::int64_t> period;  // nullopt: no return up to N
  bool free = false;
};

UEpsilonResult u_epsilon_region(const TorusLift& lift, Vec2 z, double eps, std::int64_t N, const Box& window,
                                int resolution);

// Unbounded-component proxy of the intersection of f^i(H_v+) over |i| <= N.
GridRegion omega_region(const TorusLift& lift, Vec2 v, std::int64_t N, const Box& window, int resolution);
// Same with f^-i(H_v+) for 0 <= i <= N.
GridRegion b_region(const TorusLift& lift, Vec2 v, std::int64_t N, const Box& window, int resolution);

enum class Essentiality { Inessential = 0, EssentialNotFully = 1, FullyEssential = 2 };

struct EssentialityClass {
  Essentiality kind = Essentiality::Inessential;
  int rank = 0;
  std::vector<LatticeVec> generators;
};

std::string to_string(Essentiality e);

// Basis of the subgroup of Z^2 generated by the vectors (Hermite form).
std::vector<LatticeVec> lattice_basis(std::span<const LatticeVec> vectors);

bool is_torus_periodic(const GridRegion& region);
EssentialityClass essentiality_class(const GridRegion& region);

// Default tolerance: 1e-4 for integrator-based families, else 1e-6.
double default_fixed_tolerance(const TorusLift& lift);
GridRegion fixed_region(const TorusLift& lift, double tol, const Box& window, int resolution);

// Binary raster: 64-byte little-endian header ("TRGR", version, window as
// 4 float64, resolution, width, height, zero padding) followed by the cells
// as row-major bits, most significant bit first, rows from y0 upwards.
inline constexpr std::uint32_t kRasterVersion = 1;
void write_raster(std::ostream& out, const GridRegion& region);
GridRegion read_raster(std::istream& in);
void save_raster(const std::string& path, const GridRegion& region);
GridRegion load_raster(const std::string& path);

// 8-bit grayscale PNG mask, top row = y1.
std::vector<std::uint8_t> encode_png(const GridRegion& region);
void save_png(const std::string& path, const GridRegion& region);

}  // namespace torusrot

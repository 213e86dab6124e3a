#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lozenge/continuum.hpp"
#include "lozenge/correlation.hpp"
#include "lozenge/lattice.hpp"

namespace lozenge {

// Vertical distance between consecutive sheets.
inline constexpr double kSheetModulus = 2.1213203435596424;  // 3/sqrt(2)

// Nodes (h, g) with x0 <= h <= x1 and y0 <= g <= y1.
struct Window {
  std::int64_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  bool contains(ObliqueCoord u) const { return u.a >= x0 && u.a <= x1 && u.b >= y0 && u.b <= y1; }
  std::int64_t width() const { return x1 - x0 + 1; }
  std::int64_t height() const { return y1 - y0 + 1; }
  std::size_t node_count() const { return static_cast<std::size_t>(width() * height()); }
  std::size_t index(ObliqueCoord u) const { return static_cast<std::size_t>((u.a - x0) * height() + (u.b - y0)); }
  ObliqueCoord node(std::size_t i) const {
    const auto h = static_cast<std::int64_t>(i) / height();
    return {x0 + h, y0 + static_cast<std::int64_t>(i) % height()};
  }
  // Smallest window with the given margin around every hole corner.
  static Window around(const HoleSystem& hs, std::int64_t margin);
};

// Oriented lattice edge of the height function with the lozenge it crosses.
struct SurfaceEdge {
  ObliqueCoord from;
  ObliqueCoord to;
  LozengeLocation lozenge;
};

// The three outgoing edges at u, in polar directions pi/2, -pi/6, -5pi/6.
std::array<SurfaceEdge, 3> outgoing_edges(ObliqueCoord u);
double height_increment(double p);

// Straight cut from a point inside a hole, Cartesian.
struct CutRay {
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  double angle = 0.0;
};

struct CutFamily {
  std::vector<CutRay> rays;

  bool crosses(ObliqueCoord u, ObliqueCoord v) const;
  // Throws CutsIntersect when rays cross each other or another hole, or when
  // a ray does not start inside its hole.
  void validate(const HoleSystem& hs, const Window& w) const;

  // Eastward rays, staggered in y; a ray that would pass through another hole
  // turns north, south or west instead.
  static CutFamily default_for(const HoleSystem& hs, const Window& w);
};

struct HeightSheet {
  Window window;
  ObliqueCoord basepoint;
  // NaN at nodes with no usable edge.
  std::vector<double> heights;
  double residual = 0.0;
  CutFamily cuts;
  HoleSystem holes;
  std::vector<Monomer> blocked;  // hole triangles, sorted

  bool has(ObliqueCoord u) const;
  double at(ObliqueCoord u) const;
  // Whether the edge u -> v carries a height increment in this sheet.
  bool usable(ObliqueCoord u, ObliqueCoord v) const;
};

HeightSheet average_surface(const HoleSystem& hs, const Window& w, const CutFamily& cuts, ObliqueCoord basepoint,
                            const CorrelationOptions& opts = {});
// Default cuts, basepoint at (x0, y0).
HeightSheet average_surface(const HoleSystem& hs, const Window& w, const CorrelationOptions& opts = {});

struct MultiSheetSurface {
  HeightSheet base;
  double modulus = kSheetModulus;
  int sheets = 1;

  double height(ObliqueCoord u, int sheet) const { return base.at(u) + sheet * modulus; }
};

// Sum of expected increments along consecutive lattice-adjacent nodes.
double loop_circulation(const PlacementEngine& engine, std::span<const ObliqueCoord> loop);
// Counterclockwise boundary of the node parallelogram [a0,a1] x [b0,b1].
std::vector<ObliqueCoord> parallelogram_loop(std::int64_t a0, std::int64_t b0, std::int64_t a1, std::int64_t b1);

struct ComparisonOptions {
  double exclusion = 0.75;       // scaled radius around charges for heights
  double gradient_exclusion = 1.0;
};

struct HelicoidComparison {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double grad_max_rel = 0.0;
  double offset = 0.0;
  std::size_t nodes = 0;
  std::size_t gradient_nodes = 0;
};

// Compares sheet heights at node u against the helicoid sum at u/R, modulo
// the fiber, after removing the best constant offset.
HelicoidComparison compare_to_helicoids(const HeightSheet& sheet, double R, const LimitConfig& cfg,
                                        const ComparisonOptions& opts = {});

std::string mesh_obj(const MultiSheetSurface& s, int sheets);
void export_mesh(const MultiSheetSurface& s, int sheets, const std::filesystem::path& path);

}  // namespace lozenge

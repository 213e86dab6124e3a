#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "lozenge/errors.hpp"

namespace lozenge {

// Point of the 60-degree oblique system. The x-axis points in polar direction
// -pi/6 and the y-axis in +pi/6, so lattice nodes are exactly the integer points.
struct ObliqueCoord {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend constexpr ObliqueCoord operator+(ObliqueCoord u, ObliqueCoord v) { return {u.a + v.a, u.b + v.b}; }
  friend constexpr ObliqueCoord operator-(ObliqueCoord u, ObliqueCoord v) { return {u.a - v.a, u.b - v.b}; }
  friend constexpr auto operator<=>(const ObliqueCoord&, const ObliqueCoord&) = default;
};

enum class Orientation : std::uint8_t { Left, Right };

// Unit triangle located by the midpoint of its vertical side; pos is the lower
// endpoint of that side.
struct Monomer {
  Orientation orientation = Orientation::Left;
  ObliqueCoord pos;

  friend constexpr auto operator<=>(const Monomer&, const Monomer&) = default;
};

constexpr Monomer left(std::int64_t a, std::int64_t b) { return {Orientation::Left, {a, b}}; }
constexpr Monomer right(std::int64_t a, std::int64_t b) { return {Orientation::Right, {a, b}}; }

Eigen::Vector2d to_cartesian(double a, double b);
Eigen::Vector2d to_cartesian(ObliqueCoord c);
double distance(ObliqueCoord u, ObliqueCoord v);
Eigen::Vector2d cartesian_to_oblique(const Eigen::Vector2d& p);

std::array<ObliqueCoord, 3> vertices(const Monomer& m);
Eigen::Vector2d midpoint(const Monomer& m);
bool share_vertex(const Monomer& u, const Monomer& v);
// Mirror image across the vertical line through the origin; swaps orientation.
Monomer reflect_vertical(const Monomer& m);

enum class HoleKind : std::uint8_t { E, W };

struct TriHole {
  HoleKind kind = HoleKind::E;
  ObliqueCoord pos;

  friend constexpr auto operator<=>(const TriHole&, const TriHole&) = default;
};

std::array<Monomer, 4> triangles(const TriHole& h);
std::array<Monomer, 2> decompose_hole(const TriHole& h);
// Centroid of the side-2 triangle, in oblique coordinates.
Eigen::Vector2d hole_centroid(const TriHole& h);
std::array<ObliqueCoord, 3> hole_corners(const TriHole& h);

struct MultiHole {
  HoleKind kind = HoleKind::E;
  mpq_class q = 1;
  std::vector<std::int64_t> indices;
  ObliqueCoord anchor;

  // Throws NonIntegerIndex when some q*a_i is not an integer.
  std::vector<TriHole> constituents() const;
  int charge() const;
  Eigen::Vector2d centroid() const;
};

struct HoleSystem {
  std::vector<MultiHole> multiholes;

  std::vector<TriHole> holes() const;
  std::vector<Monomer> triangles() const;
  int total_charge() const;
  bool empty() const { return multiholes.empty(); }
};

MultiHole single_hole(HoleKind kind, std::int64_t x, std::int64_t y);

enum class LozengeDir : std::uint8_t { D0 = 0, D120 = 1, D240 = 2 };

// One of the three lozenges covering the left monomer at base.
struct LozengeLocation {
  ObliqueCoord base;
  LozengeDir dir = LozengeDir::D0;

  Monomer left() const { return {Orientation::Left, base}; }
  Monomer right() const;
  std::array<Monomer, 2> monomers() const { return {right(), left()}; }

  static LozengeLocation from_pair(const Monomer& r, const Monomer& l);

  friend constexpr auto operator<=>(const LozengeLocation&, const LozengeLocation&) = default;
};

std::array<LozengeLocation, 3> lozenges_covering(const Monomer& e);
std::array<LozengeLocation, 3> lozenges_covering_right(const Monomer& e);
// Unit vector of the lozenge direction, Cartesian.
Eigen::Vector2d lozenge_unit(LozengeDir d);

int charge(std::span<const Monomer> region);
int charge(const MultiHole& h);
int charge(const LozengeLocation&);

using Probe = std::variant<Monomer, LozengeLocation>;

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

struct ValidationReport {
  bool valid = true;
  int total_charge = 0;
  bool pairable = true;
  std::vector<ValidationIssue> issues;
};

bool divisible_slope(const mpq_class& q);
// Perfect matching on the shares-a-vertex graph.
bool has_vertex_pairing(std::span<const Monomer> monomers);

ValidationReport validate_system(const HoleSystem& hs, std::span<const Probe> probes = {});
// Throws the first issue of the report.
void require_valid(const HoleSystem& hs, std::span<const Probe> probes = {});

}  // namespace lozenge

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lozenge/lattice.hpp"

namespace lozenge {

// Finite set of unit triangles.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Monomer> triangles);

  // Semiregular hexagon with side lengths a, b, c; node (h,g) is inside when
  // 0 <= h-oh <= a+c, 0 <= g-og <= b+c and c <= (h-oh)+(g-og) <= a+b+c.
  static Region hexagon(int a, int b, int c, ObliqueCoord offset = {});
  // Regular side-n hexagon centred at the origin node.
  static Region centered_hexagon(int n);

  Region minus(std::span<const Monomer> removed) const;
  Region minus(const HoleSystem& hs) const;
  Region minus(const LozengeLocation& L) const;

  bool contains(const Monomer& m) const;
  const std::vector<Monomer>& triangles() const { return t_; }
  std::size_t size() const { return t_.size(); }
  int balance() const { return charge(t_); }

 private:
  std::vector<Monomer> t_;
};

mpz_class brute_force_count(const Region& r);
// Unit-weight Kasteleyn determinant, exact.
mpz_class kasteleyn_count(const Region& r);
// Brute force up to 40 triangles, exact Kasteleyn beyond.
mpz_class count_tilings(const Region& r);
// Natural log of the tiling count via sparse LU; -inf when untileable.
double log_count_tilings(const Region& r);

mpq_class oracle_probability(const LozengeLocation& L, const Region& r);
// |K(l,r) K^{-1}(r,l)| from one sparse factorisation; suited to large regions.
double oracle_probability_float(const LozengeLocation& L, const Region& r);

// Several lozenges against one factorisation.
class KasteleynSolver {
 public:
  explicit KasteleynSolver(const Region& r);
  ~KasteleynSolver();
  KasteleynSolver(const KasteleynSolver&) = delete;
  KasteleynSolver& operator=(const KasteleynSolver&) = delete;

  double probability(const LozengeLocation& L) const;
  double log_abs_det() const;

 private:
  struct Impl;
  Impl* impl_;
};

struct TorusSpec {
  int N = 0;
  HoleSystem holes;
  // Extra removed triangles (reduced mod N), e.g. to empty the torus.
  std::vector<Monomer> removed;
};

std::vector<Monomer> torus_triangles(const TorusSpec& ts);
// Exact count by enumeration (small tori only).
mpz_class torus_brute_force(const TorusSpec& ts);
// Exact count from the four twisted Kasteleyn determinants.
mpz_class torus_count(const TorusSpec& ts);
// Same combination in floating point, for larger N.
double torus_count_float(const TorusSpec& ts);
// M(T_N minus holes) / M(T_N).
double torus_ratio(const TorusSpec& ts);

}  // namespace lozenge

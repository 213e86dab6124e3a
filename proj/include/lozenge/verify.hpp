#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lozenge/continuum.hpp"
#include "lozenge/lattice.hpp"
#include "lozenge/surface.hpp"

namespace lozenge {

struct VerifyResult {
  std::size_t checks = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  std::vector<std::string> notes;

  bool ok() const { return failures == 0; }
};

// Random scaled configuration with 1-2 positive and 0-2 negative charges,
// multiplicities 1-2, S > T, points at least min_separation apart.
LimitConfig random_limit_config(std::mt19937_64& rng, double min_separation = 0.5);
// f = p/r with small rational coefficients, evaluated at zeta and zeta^{-1}.
ZetaFunctionValues random_zeta_function(std::mt19937_64& rng);

// |field_ratio - closed form| / (1 + |closed form|) against tol.
VerifyResult verify_identity31(int trials, std::uint64_t seed, double tol = 1e-8);
VerifyResult verify_lemma33(int trials, std::uint64_t seed);
VerifyResult verify_lemma34(int trials, std::uint64_t seed);
// P(x,y) = P(y,x) = P(-x-y-1,x) = P(y,-x-y-1) exactly for |x|,|y| <= range.
VerifyResult verify_symmetries(int range);

struct LoopCheck {
  std::int64_t a0, b0, a1, b1;
  int enclosed_charge;
  double expected;
  double measured;
};

// Parallelogram loops around each hole, around all holes, and random loops;
// returns the loops measured.
std::vector<LoopCheck> circulation_loops(const HoleSystem& hs, const Window& w, int trials, std::uint64_t seed);
// Enclosed charge loops against tol_charged, hole-free loops against tol_free.
VerifyResult verify_circulation(const HoleSystem& hs, const Window& w, int trials, std::uint64_t seed,
                                double tol_charged = 1e-8, double tol_free = 1e-9);

}  // namespace lozenge

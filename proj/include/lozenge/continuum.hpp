#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "lozenge/errors.hpp"
#include "lozenge/exact.hpp"
#include "lozenge/lattice.hpp"

namespace lozenge {

struct PositiveCharge {
  double x = 0.0;
  double y = 0.0;
  int s = 1;
  int alpha = 0;
  int beta = 0;
};

struct NegativeCharge {
  double z = 0.0;
  double w = 0.0;
  int t = 1;
  int gamma = 0;
  int delta = 0;
};

struct LimitProbe {
  double x = 0.0;
  double y = 0.0;
  int alpha = 0;
  int beta = 0;
};

// Scaled hole data in oblique coordinates.
struct LimitConfig {
  std::vector<PositiveCharge> positives;
  std::vector<NegativeCharge> negatives;
  mpq_class q = 1;
  LimitProbe probe;

  int S() const;
  int T() const;
  int nu() const { return S() - T() - 1; }
  // Throws BadSlope, CoincidentPoints or UnsupportedCharge (S <= T).
  void validate() const;
};

// Charge positions are hole centroids divided by R.
LimitConfig limit_config_from(const HoleSystem& hs, double R);

struct ZetaMatrixSet {
  Eigen::MatrixXcd m;   // 2S x 2S
  Eigen::MatrixXcd m1;  // 2S+1
  Eigen::MatrixXcd m2;  // 2S+1
};

ZetaMatrixSet build_limit_matrices(const LimitConfig& cfg);

struct DeterminantTriple {
  std::complex<double> det_m;
  std::complex<double> det_m1;
  std::complex<double> det_m2;
};

// Determinants evaluated in quad precision.
DeterminantTriple limit_determinants(const LimitConfig& cfg);

std::complex<double> field_ratio(const LimitConfig& cfg);
std::complex<double> proposition31_rhs(const LimitConfig& cfg);

// Oblique projections (Fx, Fy) of the Coulomb field at the probe.
Eigen::Vector2d coulomb_field(const LimitConfig& cfg, double R);
// Cartesian vector (3/4 pi R) sum ch_i r_i0 / |z0 - z_i|.
Eigen::Vector2d coulomb_field_polar(const LimitConfig& cfg, double R);

struct AsymptoticProbabilities {
  double p1 = 1.0 / 3.0;
  double p2 = 1.0 / 3.0;
  double p3 = 1.0 / 3.0;
  // 1 - 3 p1 from the closed form, to first order in 1/R.
  double one_minus_3p1_closed = 0.0;
};

AsymptoticProbabilities p1_asymptotic(const LimitConfig& cfg, double R);

// Cartesian gradient of the limit surface at a Cartesian point.
Eigen::Vector2d surface_gradient_limit(const LimitConfig& cfg, const Eigen::Vector2d& point);

enum class HelicoidVariant { HalfRefined, DottedRefined };

// Refined helicoid H+_s(a, b; pitch) or dotted H._s(a, b; pitch), Cartesian center.
struct HelicoidSpec {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double pitch = 0.0;
  int refinement = 1;
  HelicoidVariant variant = HelicoidVariant::HalfRefined;

  double modulus() const;
};

struct Fiber {
  double representative = 0.0;
  double modulus = 0.0;
};

Fiber helicoid_fiber(std::span<const HelicoidSpec> specs, const Eigen::Vector2d& point);
// Gradient of the helicoid sum (branch independent).
Eigen::Vector2d helicoid_gradient(std::span<const HelicoidSpec> specs, const Eigen::Vector2d& point);
// Helicoids of the limit surface: pitch -3s/(sqrt2 pi) for E, +3t/(sqrt2 pi) for W, refinement 2s.
std::vector<HelicoidSpec> limit_helicoids(const LimitConfig& cfg);
// Distance from x to the coset c + modulus Z.
double fiber_distance(double x, double c, double modulus);

// Exact bracket matrices over Q(zeta). A function f enters through its two
// values f(zeta) and f(zeta^{-1}).
struct ZetaFunctionValues {
  ZetaRational at_zeta;
  ZetaRational at_zeta_inv;
};

// <zeta^k f> = zeta^k f(zeta) - zeta^{-k} f(zeta^{-1}).
ZetaRational bracket_power(long k, const ZetaFunctionValues& f);

using Bracket2 = std::array<std::array<ZetaRational, 2>, 2>;
using Bracket3 = std::array<std::array<ZetaRational, 3>, 3>;
Bracket2 lemma33_matrix(long a, const ZetaFunctionValues& f);
// {R1 <- R2, R2 <- -R1 - R2}; turns A(a) into A(a-1).
Bracket2 lemma33_row_ops(const Bracket2& m);
// {C1 <- C2, C2 <- -C1 - C2}; turns A(a) into A(a+1).
Bracket2 lemma33_col_ops(const Bracket2& m);
// {C2 <- C1, C1 <- -C1 - C2}; turns A(a) into A(a-1).
Bracket2 lemma33_col_ops_swapped(const Bracket2& m);
Bracket3 lemma34_matrix(long alpha, long beta, long gamma, const ZetaFunctionValues& f);
Bracket3 lemma34_target(long alpha, long beta, long gamma, const ZetaFunctionValues& f);
// {C2 <- -C2 - C3, C3 <- C2} then {R2 <- -R2 - R3, R3 <- R2}
Bracket3 lemma34_ops(const Bracket3& m);

}  // namespace lozenge

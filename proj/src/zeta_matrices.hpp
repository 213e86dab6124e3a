#pragma once

#include <Eigen/Core>

#include "lozenge/continuum.hpp"

namespace lozenge::detail {

template <class C>
C ipow(const C& base, int e) {
  C r(1);
  const int n = e < 0 ? -e : e;
  for (int i = 0; i < n; ++i) r *= base;
  return e < 0 ? C(1) / r : r;
}

template <class C>
struct ZetaContext {
  C zeta;
  C one_minus_qz;

  explicit ZetaContext(double q) {
    using R = typename C::value_type;
    using std::sqrt;
    zeta = C(R(-1) / 2, sqrt(R(3)) / 2);
    one_minus_qz = C(1) - C(R(q)) * zeta;
  }

  C zpow(int k) const {
    using std::conj;
    switch (((k % 3) + 3) % 3) {
      case 0: return C(1);
      case 1: return zeta;
      default: return conj(zeta);
    }
  }

  // <zeta^k (1 - q zeta)^p * base(zeta)^e> for real base coefficients.
  C bracket(int k, double coeff, int p, const C& base, int e) const {
    using std::conj;
    const C f = zpow(k) * C(coeff) * ipow(one_minus_qz, p) * ipow(base, e);
    return f - conj(f);
  }

  // z - x - (w - y) zeta
  C separation(double x, double y, double z, double w) const {
    using R = typename C::value_type;
    return C(R(z) - R(x)) - C(R(w) - R(y)) * zeta;
  }
};

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The (2S+1)-square matrix M1'' (second = false) or M2'' (second = true).
template <class C>
Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> build_first_matrix(const LimitConfig& cfg, bool second) {
  const ZetaContext<C> ctx(cfg.q.get_d());
  const int S = cfg.S();
  const int T = cfg.T();
  const int N = 2 * S + 1;
  const int K = S - T - 1;
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> M(N, N);
  M.setZero();
  const auto& pr = cfg.probe;
  const int rho0 = pr.alpha - pr.beta;
  const int shift = second ? -1 : 0;

  int col = 1;
  for (const auto& neg : cfg.negatives) {
    const C d = ctx.separation(pr.x, pr.y, neg.z, neg.w);
    const int drho = rho0 - (neg.gamma - neg.delta);
    for (int j = 1; j <= neg.t; ++j) {
      M(0, col++) = ctx.bracket(0 + shift + drho, 1.0, j - 1, d, -j);
      M(0, col++) = ctx.bracket(-2 + shift + drho, 1.0, j - 1, d, -j);
    }
  }
  {
    using R = typename C::value_type;
    const C xy = C(R(pr.x)) - C(R(pr.y)) * ctx.zeta;
    for (int j = 0; j <= K; ++j) {
      M(0, col++) = ctx.bracket(0 + shift + rho0, 1.0, 0, xy, j);
      M(0, col++) = ctx.bracket(-2 + shift + rho0, 1.0, 0, xy, j);
    }
  }

  int row = 1;
  for (const auto& pos : cfg.positives) {
    const int rk = pos.alpha - pos.beta;
    const C d0 = ctx.separation(pos.x, pos.y, pr.x, pr.y);
    using R = typename C::value_type;
    const C xy = C(R(pos.x)) - C(R(pos.y)) * ctx.zeta;
    for (int i = 1; i <= pos.s; ++i, row += 2) {
      M(row, 0) = ctx.bracket(-2 + rk - rho0, 1.0, i - 1, d0, -i);
      M(row + 1, 0) = ctx.bracket(0 + rk - rho0, 1.0, i - 1, d0, -i);
      int c = 1;
      for (const auto& neg : cfg.negatives) {
        const C d = ctx.separation(pos.x, pos.y, neg.z, neg.w);
        const int drho = rk - (neg.gamma - neg.delta);
        for (int j = 1; j <= neg.t; ++j, c += 2) {
          const double b = binomial(i + j - 2, j - 1);
          const int p = i + j - 2;
          const int e = -(i + j - 1);
          M(row, c) = ctx.bracket(-1 + drho, b, p, d, e);
          M(row, c + 1) = ctx.bracket(-3 + drho, b, p, d, e);
          M(row + 1, c) = ctx.bracket(1 + drho, b, p, d, e);
          M(row + 1, c + 1) = ctx.bracket(-1 + drho, b, p, d, e);
        }
      }
      for (int j = 0; j <= K; ++j, c += 2) {
        const double b = binomial(j, i - 1);
        if (b == 0.0) continue;
        const int e = j - (i - 1);
        M(row, c) = ctx.bracket(-1 + rk, b, i - 1, xy, e);
        M(row, c + 1) = ctx.bracket(-3 + rk, b, i - 1, xy, e);
        M(row + 1, c) = ctx.bracket(1 + rk, b, i - 1, xy, e);
        M(row + 1, c + 1) = ctx.bracket(-1 + rk, b, i - 1, xy, e);
      }
    }
  }
  return M;
}

}  // namespace lozenge::detail

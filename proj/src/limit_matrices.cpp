#include <cmath>

#include "lozenge/continuum.hpp"
#include "zeta_matrices.hpp"

namespace lozenge {

int LimitConfig::S() const {
  int s = 0;
  for (const auto& p : positives) s += p.s;
  return s;
}

int LimitConfig::T() const {
  int t = 0;
  for (const auto& n : negatives) t += n.t;
  return t;
}

void LimitConfig::validate() const {
  if (!divisible_slope(q)) throw Error(ErrorCode::BadSlope, "3 does not divide 1-q");
  for (const auto& p : positives)
    if (p.s < 1) throw Error(ErrorCode::InvalidArgument, "multiplicities must be positive");
  for (const auto& n : negatives)
    if (n.t < 1) throw Error(ErrorCode::InvalidArgument, "multiplicities must be positive");
  if (S() <= T()) throw Error(ErrorCode::UnsupportedCharge, "limit matrices need S > T");
  std::vector<Eigen::Vector2d> pts{{probe.x, probe.y}};
  for (const auto& p : positives) pts.emplace_back(p.x, p.y);
  for (const auto& n : negatives) pts.emplace_back(n.z, n.w);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw Error(ErrorCode::CoincidentPoints, "points must be distinct");
}

LimitConfig limit_config_from(const HoleSystem& hs, double R) {
  LimitConfig cfg;
  if (!hs.multiholes.empty()) cfg.q = hs.multiholes.front().q;
  auto residue = [](std::int64_t v) { return static_cast<int>(((v % 3) + 3) % 3); };
  for (const auto& mh : hs.multiholes) {
    const Eigen::Vector2d c = mh.centroid() / R;
    const int len = static_cast<int>(mh.indices.size());
    if (mh.kind == HoleKind::E)
      cfg.positives.push_back({c.x(), c.y(), len, residue(mh.anchor.a), residue(mh.anchor.b)});
    else
      cfg.negatives.push_back({c.x(), c.y(), len, residue(mh.anchor.a), residue(mh.anchor.b)});
  }
  return cfg;
}

ZetaMatrixSet build_limit_matrices(const LimitConfig& cfg) {
  cfg.validate();
  ZetaMatrixSet set;
  set.m1 = detail::build_first_matrix<std::complex<double>>(cfg, false);
  set.m2 = detail::build_first_matrix<std::complex<double>>(cfg, true);
  const auto n = set.m1.rows() - 1;
  set.m = set.m1.bottomRightCorner(n, n);
  return set;
}

ZetaRational bracket_power(long k, const ZetaFunctionValues& f) {
  return ZetaRational::zeta_power(k) * f.at_zeta - ZetaRational::zeta_power(-k) * f.at_zeta_inv;
}

Bracket2 lemma33_matrix(long a, const ZetaFunctionValues& f) {
  return {{{bracket_power(a - 1, f), bracket_power(a - 3, f)}, {bracket_power(a + 1, f), bracket_power(a - 1, f)}}};
}

Bracket2 lemma33_row_ops(const Bracket2& m) {
  Bracket2 r;
  for (int j = 0; j < 2; ++j) {
    r[0][j] = m[1][j];
    r[1][j] = -m[0][j] - m[1][j];
  }
  return r;
}

Bracket2 lemma33_col_ops(const Bracket2& m) {
  Bracket2 r;
  for (int i = 0; i < 2; ++i) {
    r[i][0] = m[i][1];
    r[i][1] = -m[i][0] - m[i][1];
  }
  return r;
}

Bracket2 lemma33_col_ops_swapped(const Bracket2& m) {
  Bracket2 r;
  for (int i = 0; i < 2; ++i) {
    r[i][1] = m[i][0];
    r[i][0] = -m[i][0] - m[i][1];
  }
  return r;
}

Bracket3 lemma34_matrix(long alpha, long beta, long gamma, const ZetaFunctionValues& f) {
  return {{{ZetaRational{}, bracket_power(1 + alpha, f), bracket_power(-1 + alpha, f)},
           {bracket_power(-3 + beta, f), bracket_power(-1 + gamma, f), bracket_power(-3 + gamma, f)},
           {bracket_power(-1 + beta, f), bracket_power(1 + gamma, f), bracket_power(-1 + gamma, f)}}};
}

Bracket3 lemma34_target(long alpha, long beta, long gamma, const ZetaFunctionValues& f) {
  return {{{ZetaRational{}, bracket_power(alpha, f), bracket_power(-2 + alpha, f)},
           {bracket_power(-2 + beta, f), bracket_power(-1 + gamma, f), bracket_power(-3 + gamma, f)},
           {bracket_power(beta, f), bracket_power(1 + gamma, f), bracket_power(-1 + gamma, f)}}};
}

Bracket3 lemma34_ops(const Bracket3& m) {
  Bracket3 c = m;
  for (int i = 0; i < 3; ++i) {
    c[i][1] = -m[i][1] - m[i][2];
    c[i][2] = m[i][1];
  }
  Bracket3 r = c;
  for (int j = 0; j < 3; ++j) {
    r[1][j] = -c[1][j] - c[2][j];
    r[2][j] = c[1][j];
  }
  return r;
}

}  // namespace lozenge

#include "lozenge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lozenge/correlation.hpp"
#include "lozenge/coupling.hpp"

namespace lozenge {

namespace {

bool zero(const ZetaRational& z) { return z.a == 0 && z.b == 0; }

void record(VerifyResult& r, double residual, double tol, const std::string& what) {
  ++r.checks;
  r.max_residual = std::max(r.max_residual, residual);
  if (!(residual <= tol)) {
    ++r.failures;
    if (r.notes.size() < 10) r.notes.push_back(what);
  }
}

}  // namespace

LimitConfig random_limit_config(std::mt19937_64& rng, double min_separation) {
  static const char* const slopes[] = {"1", "-2", "4", "-1/2", "1/4", "5/2"};
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_int_distribution<int> residue(0, 2), mult(1, 2), negs(0, 2), slope(0, 5);
  for (;;) {
    LimitConfig c;
    const int m = mult(rng), n = negs(rng);
    for (int i = 0; i < m; ++i) c.positives.push_back({coord(rng), coord(rng), mult(rng), residue(rng), residue(rng)});
    for (int i = 0; i < n; ++i) c.negatives.push_back({coord(rng), coord(rng), mult(rng), residue(rng), residue(rng)});
    c.q = mpq_class(slopes[slope(rng)]);
    c.probe = {coord(rng), coord(rng), residue(rng), residue(rng)};
    if (c.S() <= c.T()) continue;
    std::vector<Eigen::Vector2d> pts{to_cartesian(c.probe.x, c.probe.y)};
    for (const auto& p : c.positives) pts.push_back(to_cartesian(p.x, p.y));
    for (const auto& q : c.negatives) pts.push_back(to_cartesian(q.z, q.w));
    bool spread = true;
    for (std::size_t i = 0; i < pts.size() && spread; ++i)
      for (std::size_t j = i + 1; j < pts.size() && spread; ++j) spread = (pts[i] - pts[j]).norm() >= min_separation;
    if (spread) return c;
  }
}

ZetaFunctionValues random_zeta_function(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7), deg(0, 3);
  auto poly = [&] {
    std::vector<mpq_class> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) {
      v = mpq_class(num(rng), den(rng));
      v.canonicalize();
    }
    return c;
  };
  auto eval = [](const std::vector<mpq_class>& c, long sign) {
    ZetaRational acc;
    for (std::size_t k = 0; k < c.size(); ++k)
      acc = acc + ZetaRational::zeta_power(sign * static_cast<long>(k)) * ZetaRational{c[k], 0};
    return acc;
  };
  for (;;) {
    const auto p = poly(), r = poly();
    const ZetaRational rz = eval(r, 1), rzi = eval(r, -1);
    if (zero(rz) || zero(rzi)) continue;
    return {eval(p, 1) / rz, eval(p, -1) / rzi};
  }
}

VerifyResult verify_identity31(int trials, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  VerifyResult r;
  for (int t = 0; t < trials; ++t) {
    const LimitConfig c = random_limit_config(rng);
    const std::complex<double> lhs = field_ratio(c), rhs = proposition31_rhs(c);
    record(r, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)), tol, "trial " + std::to_string(t));
  }
  return r;
}

VerifyResult verify_lemma33(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> shift(-20, 20);
  VerifyResult r;
  for (int t = 0; t < trials; ++t) {
    const auto f = random_zeta_function(rng);
    const long a = shift(rng);
    const auto m = lemma33_matrix(a, f);
    record(r, lemma33_row_ops(m) == lemma33_matrix(a - 1, f) ? 0.0 : 1.0, 0.0, "rows, trial " + std::to_string(t));
    record(r, lemma33_col_ops(m) == lemma33_matrix(a + 1, f) ? 0.0 : 1.0, 0.0, "columns, trial " + std::to_string(t));
    record(r, lemma33_col_ops_swapped(m) == lemma33_matrix(a - 1, f) ? 0.0 : 1.0, 0.0,
           "swapped columns, trial " + std::to_string(t));
  }
  return r;
}

VerifyResult verify_lemma34(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> shift(-20, 20);
  VerifyResult r;
  for (int t = 0; t < trials; ++t) {
    const auto f = random_zeta_function(rng);
    const long al = shift(rng), be = shift(rng), ga = shift(rng);
    const bool same = lemma34_ops(lemma34_matrix(al, be, ga, f)) == lemma34_target(al, be, ga, f);
    record(r, same ? 0.0 : 1.0, 0.0, "trial " + std::to_string(t));
  }
  return r;
}

VerifyResult verify_symmetries(int range) {
  VerifyResult r;
  for (std::int64_t x = -range; x <= range; ++x) {
    for (std::int64_t y = -range; y <= range; ++y) {
      const CouplingValue p = coupling_p(x, y);
      const std::string at = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
      record(r, p == coupling_p(y, x) ? 0.0 : 1.0, 0.0, "swap at " + at);
      record(r, p == coupling_p(-x - y - 1, x) ? 0.0 : 1.0, 0.0, "rotation at " + at);
      record(r, p == coupling_p(y, -x - y - 1) ? 0.0 : 1.0, 0.0, "inverse rotation at " + at);
    }
  }
  return r;
}

std::vector<LoopCheck> circulation_loops(const HoleSystem& hs, const Window& w, int trials, std::uint64_t seed) {
  const auto holes = hs.holes();
  // Hole corner boxes; a loop may not touch them.
  struct Box {
    std::int64_t a0, b0, a1, b1;
    int charge;
  };
  std::vector<Box> boxes;
  for (const auto& h : holes) {
    const auto c = hole_corners(h);
    Box b{c[0].a, c[0].b, c[0].a, c[0].b, h.kind == HoleKind::E ? 2 : -2};
    for (const auto& v : c) {
      b.a0 = std::min(b.a0, v.a);
      b.a1 = std::max(b.a1, v.a);
      b.b0 = std::min(b.b0, v.b);
      b.b1 = std::max(b.b1, v.b);
    }
    boxes.push_back(b);
  }
  auto classify = [&](std::int64_t a0, std::int64_t b0, std::int64_t a1, std::int64_t b1, int* charge) {
    *charge = 0;
    for (const auto& b : boxes) {
      const bool inside = b.a0 > a0 && b.a1 < a1 && b.b0 > b0 && b.b1 < b1;
      const bool outside = b.a1 < a0 || b.a0 > a1 || b.b1 < b0 || b.b0 > b1;
      if (!inside && !outside) return false;
      if (inside) *charge += b.charge;
    }
    return a0 >= w.x0 && a1 <= w.x1 && b0 >= w.y0 && b1 <= w.y1 && a1 > a0 && b1 > b0;
  };

  const PlacementEngine pe(hs);
  std::vector<LoopCheck> out;
  auto add = [&](std::int64_t a0, std::int64_t b0, std::int64_t a1, std::int64_t b1) {
    int charge = 0;
    if (!classify(a0, b0, a1, b1, &charge)) return;
    const auto loop = parallelogram_loop(a0, b0, a1, b1);
    out.push_back({a0, b0, a1, b1, charge, -kSheetModulus * charge, loop_circulation(pe, loop)});
  };
  for (const auto& b : boxes)
    for (std::int64_t m = 1; m <= 3; ++m) add(b.a0 - m, b.b0 - m, b.a1 + m, b.b1 + m);
  if (!boxes.empty()) {
    Box all = boxes.front();
    for (const auto& b : boxes) {
      all.a0 = std::min(all.a0, b.a0);
      all.a1 = std::max(all.a1, b.a1);
      all.b0 = std::min(all.b0, b.b0);
      all.b1 = std::max(all.b1, b.b1);
    }
    add(all.a0 - 1, all.b0 - 1, all.a1 + 1, all.b1 + 1);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> ua(w.x0, w.x1), ub(w.y0, w.y1);
  for (int t = 0; t < trials; ++t) {
    std::int64_t a0 = ua(rng), a1 = ua(rng), b0 = ub(rng), b1 = ub(rng);
    if (a0 > a1) std::swap(a0, a1);
    if (b0 > b1) std::swap(b0, b1);
    add(a0, b0, a1, b1);
  }
  return out;
}

VerifyResult verify_circulation(const HoleSystem& hs, const Window& w, int trials, std::uint64_t seed,
                                double tol_charged, double tol_free) {
  VerifyResult r;
  for (const auto& l : circulation_loops(hs, w, trials, seed)) {
    const std::string what = "loop [" + std::to_string(l.a0) + "," + std::to_string(l.a1) + "]x[" +
                             std::to_string(l.b0) + "," + std::to_string(l.b1) + "]";
    record(r, std::abs(l.measured - l.expected), l.enclosed_charge == 0 ? tol_free : tol_charged, what);
  }
  return r;
}

}  // namespace lozenge

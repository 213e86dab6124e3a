#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lozenge/errors.hpp"
#include "lozenge/exact.hpp"

namespace lozenge {

inline const std::complex<double> kZeta{-0.5, std::numbers::sqrt3 / 2.0};

// <f> = f(zeta) - f(zeta^{-1}).
template <class F>
std::complex<double> bracket(F&& f) {
  return f(kZeta) - f(std::conj(kZeta));
}

// zeta^k with the exponent reduced mod 3.
std::complex<double> zeta_pow(std::int64_t k);

std::pair<std::int64_t, std::int64_t> reduce_domain(std::int64_t x, std::int64_t y);

// Exact coupling function, memoized by reduced argument.
CouplingValue coupling_p(std::int64_t x, std::int64_t y);

enum class FloatPath { Rounded, Asymptotic };

// Float value of the coupling function. Rounded projects the exact value;
// Asymptotic switches to the leading term once |x|+|y| exceeds 400.
double coupling_float(std::int64_t x, std::int64_t y, FloatPath path = FloatPath::Rounded);
// Leading asymptotic term (1/2 pi i) <zeta^{x-y-1} / (-x + y zeta)>.
double coupling_leading(std::int64_t x, std::int64_t y);

std::size_t coupling_cache_size();

struct UCoefficient {
  int s = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  double value = 0.0;
  double error = 0.0;
};

struct ExtrapolationParams {
  std::int64_t base_radius = 200;
  int guard_terms = 3;
  double tolerance = 1e-8;
};

// Closed form of U_0(a,b): one of 0, +-sqrt(3)/(2 pi).
double u0_closed_form(std::int64_t a, std::int64_t b);
// U_s(a,b) fitted from exact samples of (3r) P(-3r-1+a, -1+b).
UCoefficient u_coefficient(int s, std::int64_t a, std::int64_t b, const ExtrapolationParams& params = {});

struct DividedDifferenceSpec {
  std::vector<std::int64_t> nodes;
  int order = 0;
};

namespace detail {
inline double dd_divide(double v, std::int64_t d) { return v / static_cast<double>(d); }
inline CouplingValue dd_divide(const CouplingValue& v, std::int64_t d) {
  return v / mpq_class(static_cast<long>(d));
}
void check_nodes(const DividedDifferenceSpec& spec);
}  // namespace detail

// Newton divided difference of order r at the first node.
template <class F>
auto divided_difference(F&& f, const DividedDifferenceSpec& spec) {
  detail::check_nodes(spec);
  const auto& c = spec.nodes;
  using T = std::decay_t<decltype(f(c[0]))>;
  std::vector<T> table;
  table.reserve(spec.order + 1);
  for (int j = 0; j <= spec.order; ++j) table.push_back(f(c[j]));
  for (int r = 1; r <= spec.order; ++r)
    for (int j = 0; j + r <= spec.order; ++j)
      table[j] = detail::dd_divide(table[j + 1] - table[j], c[j + r] - c[j]);
  return table[0];
}

// D_y^l D_x^k applied to P(r + x + y, s + q(x + y)) at (a_1, b_1), exactly.
CouplingValue dd_p_exact(int k, int l, std::int64_t r, std::int64_t s, const mpq_class& q,
                         std::span<const std::int64_t> a_nodes, std::span<const std::int64_t> b_nodes);

// Leading term (1/2 pi i) C(k+l,k) <zeta^{r-s-1} (1-q zeta)^{k+l} / (-r + s zeta)^{k+l+1}>.
double dd_p_leading(int k, int l, std::int64_t r, std::int64_t s, const mpq_class& q);

}  // namespace lozenge

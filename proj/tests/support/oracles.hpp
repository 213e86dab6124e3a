#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gmpxx.h>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// (x, y) -> (x', y') with x' <= -1, using P(x,y) = P(y,x) = P(-x-y-1,x).
inline std::pair<std::int64_t, std::int64_t> reduce(std::int64_t x, std::int64_t y) {
  for (int guard = 0; guard < 6; ++guard) {
    if (x <= -1) return {x, y};
    if (y <= -1) return {y, x};
    const std::int64_t nx = -x - y - 1, ny = x;
    x = nx;
    y = ny;
  }
  return {x, y};
}

// (1/2 pi i) times the integral of t^{-y-1} (-1-t)^{-x-1} dt over the unit
// circle arc from zeta to zeta^{-1} through -1, by adaptive Gauss-Kronrod.
inline double coupling_quadrature(std::int64_t x, std::int64_t y) {
  std::tie(x, y) = reduce(x, y);
  auto integrand = [=](double phi) {
    const std::complex<double> t = std::polar(1.0, phi);
    // dt = i t dphi, so the 1/(2 pi i) leaves 1/(2 pi) and t^{-y}.
    const std::complex<double> v = std::pow(t, static_cast<double>(-y)) *
                                   std::pow(-1.0 - t, static_cast<int>(-x - 1));
    return v.real() / (2.0 * kPi);
  };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0,
                                                                      15, 1e-14, &err);
}

// Number of lozenge tilings of the hexagon with sides a, b, c.
inline mpz_class macmahon(int a, int b, int c) {
  mpq_class p = 1;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int k = 1; k <= c; ++k) p *= mpq_class(i + j + k - 1, i + j + k - 2);
  p.canonicalize();
  return p.get_num();
}

// Cartesian point of oblique (a, b) with axes at polar -pi/6 and +pi/6.
inline std::pair<double, double> cartesian(double a, double b) {
  return {(a + b) * std::sqrt(3.0) / 2.0, (b - a) / 2.0};
}

}  // namespace oracle

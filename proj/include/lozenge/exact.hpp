#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace lozenge {

// Exact element p + r*theta of Q + Q*theta with theta = sqrt(3)/pi.
// Closed under addition and rational scaling, which is all the coupling
// function and its divided differences need.
struct CouplingValue {
  mpq_class rational_part = 0;
  mpq_class sqrt3_over_pi_part = 0;

  double value() const;
  std::string str() const;

  CouplingValue& operator+=(const CouplingValue& o);
  CouplingValue& operator-=(const CouplingValue& o);
  CouplingValue& operator*=(const mpq_class& s);
  CouplingValue& operator/=(const mpq_class& s);

  friend CouplingValue operator+(CouplingValue u, const CouplingValue& v) { return u += v; }
  friend CouplingValue operator-(CouplingValue u, const CouplingValue& v) { return u -= v; }
  friend CouplingValue operator-(CouplingValue u) {
    u.rational_part = -u.rational_part;
    u.sqrt3_over_pi_part = -u.sqrt3_over_pi_part;
    return u;
  }
  friend CouplingValue operator*(CouplingValue u, const mpq_class& s) { return u *= s; }
  friend CouplingValue operator*(const mpq_class& s, CouplingValue u) { return u *= s; }
  friend CouplingValue operator/(CouplingValue u, const mpq_class& s) { return u /= s; }
  friend bool operator==(const CouplingValue& u, const CouplingValue& v) {
    return u.rational_part == v.rational_part && u.sqrt3_over_pi_part == v.sqrt3_over_pi_part;
  }
};

// Polynomial in theta = sqrt(3)/pi with rational coefficients. theta is
// transcendental, so this ring is an integral domain and evaluation is injective.
class ThetaPoly {
 public:
  ThetaPoly() = default;
  ThetaPoly(const mpq_class& c);  // NOLINT
  ThetaPoly(const CouplingValue& v);  // NOLINT
  explicit ThetaPoly(std::vector<mpq_class> coeffs);

  const std::vector<mpq_class>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  double value() const;
  // Sign of the real value, decided at sufficient precision.
  int sign() const;
  std::string str() const;

  ThetaPoly& operator+=(const ThetaPoly& o);
  ThetaPoly& operator-=(const ThetaPoly& o);
  friend ThetaPoly operator+(ThetaPoly u, const ThetaPoly& v) { return u += v; }
  friend ThetaPoly operator-(ThetaPoly u, const ThetaPoly& v) { return u -= v; }
  friend ThetaPoly operator-(const ThetaPoly& u);
  friend ThetaPoly operator*(const ThetaPoly& u, const ThetaPoly& v);
  friend bool operator==(const ThetaPoly& u, const ThetaPoly& v) { return u.c_ == v.c_; }

  // Quotient u/v; throws when v does not divide u.
  static ThetaPoly divexact(const ThetaPoly& u, const ThetaPoly& v);

 private:
  void trim();
  std::vector<mpq_class> c_;
};

// Element a + b*zeta of Q(zeta), zeta = exp(2*pi*i/3), zeta^2 = -1 - zeta.
struct ZetaRational {
  mpq_class a = 0;
  mpq_class b = 0;

  static ZetaRational zeta_power(long k);
  ZetaRational conj() const;
  // <f> = f(zeta) - f(zeta^{-1}) = b * i*sqrt(3); returns the coefficient b.
  mpq_class bracket_coefficient() const { return b; }

  friend ZetaRational operator+(const ZetaRational& u, const ZetaRational& v) { return {u.a + v.a, u.b + v.b}; }
  friend ZetaRational operator-(const ZetaRational& u, const ZetaRational& v) { return {u.a - v.a, u.b - v.b}; }
  friend ZetaRational operator-(const ZetaRational& u) { return {-u.a, -u.b}; }
  friend ZetaRational operator*(const ZetaRational& u, const ZetaRational& v);
  friend ZetaRational operator/(const ZetaRational& u, const ZetaRational& v);
  friend bool operator==(const ZetaRational& u, const ZetaRational& v) { return u.a == v.a && u.b == v.b; }
};

// Round an exact rational to double through MPFR.
double to_double(const mpq_class& q);

}  // namespace lozenge

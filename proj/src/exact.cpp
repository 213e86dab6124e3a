#include "lozenge/exact.hpp"

#include <algorithm>
#include <sstream>

#include <mpfr.h>

#include "lozenge/errors.hpp"

namespace lozenge {

namespace {

class MpfrScope {
 public:
  explicit MpfrScope(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrScope() { mpfr_clear(v); }
  MpfrScope(const MpfrScope&) = delete;
  MpfrScope& operator=(const MpfrScope&) = delete;
  mpfr_t v;
};

long magnitude_bits(const mpq_class& q) {
  if (q == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 2;
}

// Evaluates sum c_k theta^k; returns sign and writes the double value.
int evaluate(const std::vector<mpq_class>& c, double* out) {
  if (c.empty()) {
    if (out) *out = 0.0;
    return 0;
  }
  long bits = 0;
  for (const auto& ck : c) bits = std::max(bits, magnitude_bits(ck));
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(128L, bits + 128));
  for (int attempt = 0;; ++attempt) {
    MpfrScope theta(prec), acc(prec), term(prec);
    mpfr_const_pi(theta.v, MPFR_RNDN);
    mpfr_set_ui(term.v, 3, MPFR_RNDN);
    mpfr_sqrt(term.v, term.v, MPFR_RNDN);
    mpfr_div(theta.v, term.v, theta.v, MPFR_RNDN);
    mpfr_set_zero(acc.v, 1);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      mpfr_mul(acc.v, acc.v, theta.v, MPFR_RNDN);
      mpfr_set_q(term.v, it->get_mpq_t(), MPFR_RNDN);
      mpfr_add(acc.v, acc.v, term.v, MPFR_RNDN);
    }
    const bool resolved = !mpfr_zero_p(acc.v) &&
                          mpfr_get_exp(acc.v) > bits - static_cast<long>(prec) + 64;
    if (resolved || attempt >= 6) {
      if (out) *out = mpfr_get_d(acc.v, MPFR_RNDN);
      return mpfr_sgn(acc.v);
    }
    prec *= 2;
  }
}

}  // namespace

double to_double(const mpq_class& q) {
  MpfrScope t(64);
  mpfr_set_q(t.v, q.get_mpq_t(), MPFR_RNDN);
  return mpfr_get_d(t.v, MPFR_RNDN);
}

double CouplingValue::value() const { return ThetaPoly(*this).value(); }

std::string CouplingValue::str() const {
  const bool negative = sgn(sqrt3_over_pi_part) < 0;
  const mpq_class r = negative ? mpq_class(-sqrt3_over_pi_part) : sqrt3_over_pi_part;
  return rational_part.get_str() + (negative ? " - " : " + ") + r.get_str() + "\xC2\xB7(\xE2\x88\x9A" "3/\xCF\x80)";
}

CouplingValue& CouplingValue::operator+=(const CouplingValue& o) {
  rational_part += o.rational_part;
  sqrt3_over_pi_part += o.sqrt3_over_pi_part;
  return *this;
}

CouplingValue& CouplingValue::operator-=(const CouplingValue& o) {
  rational_part -= o.rational_part;
  sqrt3_over_pi_part -= o.sqrt3_over_pi_part;
  return *this;
}

CouplingValue& CouplingValue::operator*=(const mpq_class& s) {
  rational_part *= s;
  sqrt3_over_pi_part *= s;
  return *this;
}

CouplingValue& CouplingValue::operator/=(const mpq_class& s) {
  if (s == 0) throw Error(ErrorCode::ZeroDenominator, "division by zero");
  rational_part /= s;
  sqrt3_over_pi_part /= s;
  return *this;
}

ThetaPoly::ThetaPoly(const mpq_class& c) : c_{c} { trim(); }

ThetaPoly::ThetaPoly(const CouplingValue& v) : c_{v.rational_part, v.sqrt3_over_pi_part} { trim(); }

ThetaPoly::ThetaPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void ThetaPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

double ThetaPoly::value() const {
  double v = 0.0;
  evaluate(c_, &v);
  return v;
}

int ThetaPoly::sign() const { return evaluate(c_, nullptr); }

std::string ThetaPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) os << " + ";
    os << c_[k].get_str();
    if (k == 1) os << "*t";
    if (k > 1) os << "*t^" << k;
  }
  return os.str();
}

ThetaPoly& ThetaPoly::operator+=(const ThetaPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

ThetaPoly& ThetaPoly::operator-=(const ThetaPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

ThetaPoly operator-(const ThetaPoly& u) {
  ThetaPoly r = u;
  for (auto& c : r.c_) c = -c;
  return r;
}

ThetaPoly operator*(const ThetaPoly& u, const ThetaPoly& v) {
  if (u.is_zero() || v.is_zero()) return {};
  std::vector<mpq_class> c(u.c_.size() + v.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < u.c_.size(); ++i) {
    if (u.c_[i] == 0) continue;
    for (std::size_t j = 0; j < v.c_.size(); ++j) c[i + j] += u.c_[i] * v.c_[j];
  }
  return ThetaPoly(std::move(c));
}

ThetaPoly ThetaPoly::divexact(const ThetaPoly& u, const ThetaPoly& v) {
  if (v.is_zero()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
  if (u.is_zero()) return {};
  if (u.degree() < v.degree()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  std::vector<mpq_class> rem = u.c_;
  std::vector<mpq_class> quot(u.c_.size() - v.c_.size() + 1, mpq_class(0));
  const mpq_class& lead = v.c_.back();
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    const mpq_class f = rem[k + v.c_.size() - 1] / lead;
    quot[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < v.c_.size(); ++j) rem[k + j] -= f * v.c_[j];
  }
  for (const auto& r : rem)
    if (r != 0) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  return ThetaPoly(std::move(quot));
}

ZetaRational ZetaRational::zeta_power(long k) {
  switch (((k % 3) + 3) % 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    default: return {-1, -1};
  }
}

ZetaRational ZetaRational::conj() const { return {a - b, -b}; }

ZetaRational operator*(const ZetaRational& u, const ZetaRational& v) {
  // (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2, z^2 = -1 - z
  const mpq_class bd = u.b * v.b;
  return {u.a * v.a - bd, u.a * v.b + u.b * v.a - bd};
}

ZetaRational operator/(const ZetaRational& u, const ZetaRational& v) {
  const mpq_class norm = v.a * v.a - v.a * v.b + v.b * v.b;
  if (norm == 0) throw Error(ErrorCode::ZeroDenominator, "division by zero in Q(zeta)");
  ZetaRational n = u * v.conj();
  return {n.a / norm, n.b / norm};
}

}  // namespace lozenge

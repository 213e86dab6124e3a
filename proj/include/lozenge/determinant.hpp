#pragma once

#include <utility>

#include <Eigen/Core>
#include <gmpxx.h>

#include "lozenge/exact.hpp"

namespace Eigen {

template <>
struct NumTraits<lozenge::ThetaPoly> : GenericNumTraits<lozenge::ThetaPoly> {
  using Real = lozenge::ThetaPoly;
  using NonInteger = lozenge::ThetaPoly;
  using Literal = lozenge::ThetaPoly;
  using Nested = lozenge::ThetaPoly;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 1, AddCost = 8, MulCost = 32 };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Literal = mpz_class;
  using Nested = mpz_class;
  enum { IsComplex = 0, IsInteger = 1, IsSigned = 1, RequireInitialization = 1, ReadCost = 1, AddCost = 4, MulCost = 16 };
};

}  // namespace Eigen

namespace lozenge {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

inline bool is_zero(const ThetaPoly& v) { return v.is_zero(); }
inline bool is_zero(const mpz_class& v) { return v == 0; }

inline ThetaPoly exact_quotient(const ThetaPoly& u, const ThetaPoly& v) { return ThetaPoly::divexact(u, v); }
inline mpz_class exact_quotient(const mpz_class& u, const mpz_class& v) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  return q;
}

// Fraction-free Gaussian elimination over an integral domain.
template <class Scalar>
Scalar bareiss_determinant(DenseMatrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  bool negate = false;
  Scalar prev(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    while (piv < n && is_zero(m(piv, k))) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != k) {
      m.row(k).swap(m.row(piv));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Scalar t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = exact_quotient(t, prev);
      }
    }
    prev = m(k, k);
  }
  Scalar d = m(n - 1, n - 1);
  if (negate) d = Scalar(0) - d;
  return d;
}

}  // namespace lozenge

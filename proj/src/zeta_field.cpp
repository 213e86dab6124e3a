#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/LU>

#include "lozenge/continuum.hpp"
#include "zeta_matrices.hpp"

namespace lozenge {

namespace {

using Quad = boost::multiprecision::cpp_complex_quad;
using QuadMatrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;

std::complex<double> narrow(const Quad& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

Quad det(const QuadMatrix& m) {
  if (m.rows() == 0) return Quad(1);
  return m.partialPivLu().determinant();
}

}  // namespace

DeterminantTriple limit_determinants(const LimitConfig& cfg) {
  cfg.validate();
  const QuadMatrix m1 = detail::build_first_matrix<Quad>(cfg, false);
  const QuadMatrix m2 = detail::build_first_matrix<Quad>(cfg, true);
  const auto n = m1.rows() - 1;
  const QuadMatrix m = m1.bottomRightCorner(n, n);
  return {narrow(det(m)), narrow(det(m1)), narrow(det(m2))};
}

std::complex<double> field_ratio(const LimitConfig& cfg) {
  cfg.validate();
  const QuadMatrix m1 = detail::build_first_matrix<Quad>(cfg, false);
  const QuadMatrix m2 = detail::build_first_matrix<Quad>(cfg, true);
  const auto n = m1.rows() - 1;
  const Quad d = det(m1.bottomRightCorner(n, n));
  if (d == Quad(0)) throw Error(ErrorCode::SingularDenominator, "det M'' vanishes");
  return narrow((det(m1) - det(m2)) / d);
}

}  // namespace lozenge

#include <cmath>
#include <numbers>

#include "lozenge/continuum.hpp"

namespace lozenge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;
const double kPitchUnit = 3.0 / (std::numbers::sqrt2 * kPi);

struct Kernel {
  double x = 0.0;  // sum of weight * (2dx + dy) / |d|^2
  double y = 0.0;  // sum of weight * (dx + 2dy) / |d|^2
  double diag = 0.0;  // sum of weight * (dx + dy) / |d|^2
};

Kernel oblique_kernel(const LimitConfig& cfg) {
  Kernel k;
  auto add = [&](double cx, double cy, double weight) {
    const double dx = cfg.probe.x - cx;
    const double dy = cfg.probe.y - cy;
    const double n2 = dx * dx + dx * dy + dy * dy;
    if (n2 == 0.0) throw Error(ErrorCode::CoincidentPoints, "probe coincides with a charge");
    k.x += weight * (2 * dx + dy) / n2;
    k.y += weight * (dx + 2 * dy) / n2;
    k.diag += weight * (dx + dy) / n2;
  };
  for (const auto& p : cfg.positives) add(p.x, p.y, p.s);
  for (const auto& n : cfg.negatives) add(n.z, n.w, -n.t);
  return k;
}

}  // namespace

std::complex<double> proposition31_rhs(const LimitConfig& cfg) {
  return {0.0, kSqrt3 * oblique_kernel(cfg).x};
}

Eigen::Vector2d coulomb_field(const LimitConfig& cfg, double R) {
  const Kernel k = oblique_kernel(cfg);
  const double f = 3.0 / (4.0 * kPi * R);
  return {f * k.x, f * k.y};
}

Eigen::Vector2d coulomb_field_polar(const LimitConfig& cfg, double R) {
  const Eigen::Vector2d z0 = to_cartesian(cfg.probe.x, cfg.probe.y);
  Eigen::Vector2d F = Eigen::Vector2d::Zero();
  auto add = [&](double cx, double cy, double ch) {
    const Eigen::Vector2d d = z0 - to_cartesian(cx, cy);
    const double n2 = d.squaredNorm();
    if (n2 == 0.0) throw Error(ErrorCode::CoincidentPoints, "probe coincides with a charge");
    F += ch * d / n2;
  };
  for (const auto& p : cfg.positives) add(p.x, p.y, 2.0 * p.s);
  for (const auto& n : cfg.negatives) add(n.z, n.w, -2.0 * n.t);
  return 3.0 / (4.0 * kPi * R) * F;
}

AsymptoticProbabilities p1_asymptotic(const LimitConfig& cfg, double R) {
  AsymptoticProbabilities out;
  if (cfg.positives.empty() && cfg.negatives.empty()) return out;
  const auto d = limit_determinants(cfg);
  if (std::abs(d.det_m) == 0.0) throw Error(ErrorCode::SingularDenominator, "det M'' vanishes");
  const std::complex<double> c(0.0, 2.0 * kPi * R);
  out.p1 = 1.0 / 3.0 + (d.det_m1 / d.det_m / c).real();
  out.p2 = 1.0 / 3.0 + (d.det_m2 / d.det_m / c).real();
  out.p3 = 1.0 - out.p1 - out.p2;
  out.one_minus_3p1_closed = -3.0 * kSqrt3 / (2.0 * kPi * R) * oblique_kernel(cfg).diag;
  return out;
}

Eigen::Vector2d surface_gradient_limit(const LimitConfig& cfg, const Eigen::Vector2d& point) {
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  auto add = [&](double cx, double cy, double weight) {
    const Eigen::Vector2d d = point - to_cartesian(cx, cy);
    const double n2 = d.squaredNorm();
    if (n2 == 0.0) throw Error(ErrorCode::CoincidentPoints, "point coincides with a charge");
    g.x() += weight * d.y() / n2;
    g.y() -= weight * d.x() / n2;
  };
  for (const auto& p : cfg.positives) add(p.x, p.y, p.s);
  for (const auto& n : cfg.negatives) add(n.z, n.w, -n.t);
  return kPitchUnit * g;
}

double HelicoidSpec::modulus() const {
  const double turn = variant == HelicoidVariant::HalfRefined ? 2.0 * kPi : kPi;
  return turn * std::abs(pitch) / refinement;
}

Fiber helicoid_fiber(std::span<const HelicoidSpec> specs, const Eigen::Vector2d& point) {
  Fiber f;
  for (const auto& h : specs) {
    if (h.refinement < 1) throw Error(ErrorCode::InvalidArgument, "refinement must be positive");
    const Eigen::Vector2d d = point - h.center;
    if (d.x() == 0.0 && d.y() == 0.0) throw Error(ErrorCode::CenterSingularity, "point at a helicoid axis");
    f.representative += h.pitch * std::atan2(d.y(), d.x());
    const double m = h.modulus();
    if (f.modulus == 0.0) {
      f.modulus = m;
    } else if (std::abs(m - f.modulus) > 1e-12 * f.modulus) {
      throw Error(ErrorCode::InvalidArgument, "helicoid fibers have different moduli");
    }
  }
  return f;
}

Eigen::Vector2d helicoid_gradient(std::span<const HelicoidSpec> specs, const Eigen::Vector2d& point) {
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (const auto& h : specs) {
    const Eigen::Vector2d d = point - h.center;
    const double n2 = d.squaredNorm();
    if (n2 == 0.0) throw Error(ErrorCode::CenterSingularity, "point at a helicoid axis");
    g += h.pitch * Eigen::Vector2d(-d.y(), d.x()) / n2;
  }
  return g;
}

std::vector<HelicoidSpec> limit_helicoids(const LimitConfig& cfg) {
  std::vector<HelicoidSpec> out;
  for (const auto& p : cfg.positives)
    out.push_back({to_cartesian(p.x, p.y), -kPitchUnit * p.s, 2 * p.s, HelicoidVariant::HalfRefined});
  for (const auto& n : cfg.negatives)
    out.push_back({to_cartesian(n.z, n.w), kPitchUnit * n.t, 2 * n.t, HelicoidVariant::HalfRefined});
  return out;
}

double fiber_distance(double x, double c, double modulus) {
  if (modulus == 0.0) return std::abs(x - c);
  return std::abs(std::remainder(x - c, modulus));
}

}  // namespace lozenge

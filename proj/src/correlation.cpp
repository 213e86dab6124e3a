#include "lozenge/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace lozenge {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676;

double u_value(int s, std::int64_t a, std::int64_t b, const CorrelationOptions& opts) {
  if (s == 0) return u0_closed_form(a, b);
  return u_coefficient(s, a, b, opts.extrapolation).value;
}

int u_orders(const MonomerConfig& cfg) {
  return static_cast<int>(cfg.rights.size() - cfg.lefts.size()) / 2;
}

Eigen::VectorXd u_entries(const Monomer& r, int orders, const CorrelationOptions& opts) {
  Eigen::VectorXd out(2 * orders);
  for (int s = 0; s < orders; ++s) {
    out(2 * s) = u_value(s, r.pos.a, r.pos.b + 1, opts);
    out(2 * s + 1) = u_value(s, r.pos.a + 1, r.pos.b, opts);
  }
  return out;
}

void check_shape(const MonomerConfig& cfg) {
  if ((cfg.rights.size() + cfg.lefts.size()) % 2 != 0)
    throw Error(ErrorCode::UnpairableConfiguration, "odd number of monomers");
  std::vector<Monomer> all = cfg.rights;
  all.insert(all.end(), cfg.lefts.begin(), cfg.lefts.end());
  if (!has_vertex_pairing(all))
    throw Error(ErrorCode::UnpairableConfiguration, "monomers cannot be paired by shared vertices");
}

}  // namespace

MonomerConfig canonical(const MonomerConfig& cfg, bool* reflected) {
  if (reflected) *reflected = false;
  if (cfg.rights.size() >= cfg.lefts.size()) return cfg;
  if (reflected) *reflected = true;
  MonomerConfig out;
  for (const auto& l : cfg.lefts) out.rights.push_back(reflect_vertical(l));
  for (const auto& r : cfg.rights) out.lefts.push_back(reflect_vertical(r));
  return out;
}

Eigen::MatrixXd correlation_matrix(const MonomerConfig& cfg, const CorrelationOptions& opts) {
  const auto m = static_cast<Eigen::Index>(cfg.rights.size());
  const auto n = static_cast<Eigen::Index>(cfg.lefts.size());
  if (m < n) throw Error(ErrorCode::InvalidArgument, "correlation_matrix expects m >= n");
  const int orders = u_orders(cfg);
  Eigen::MatrixXd M(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = cfg.rights[i].pos;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& l = cfg.lefts[j].pos;
      M(i, j) = coupling_float(r.a - l.a, r.b - l.b, opts.path);
    }
    M.row(i).tail(m - n) = u_entries(cfg.rights[i], orders, opts).transpose();
  }
  return M;
}

DenseMatrix<ThetaPoly> correlation_matrix_exact(const MonomerConfig& cfg) {
  const auto m = static_cast<Eigen::Index>(cfg.rights.size());
  if (cfg.lefts.size() != cfg.rights.size())
    throw Error(ErrorCode::InvalidArgument, "exact matrix requires equal numbers of rights and lefts");
  DenseMatrix<ThetaPoly> M(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& r = cfg.rights[i].pos;
      const auto& l = cfg.lefts[j].pos;
      M(i, j) = ThetaPoly(coupling_p(r.a - l.a, r.b - l.b));
    }
  return M;
}

CorrelationValue correlation_det(const MonomerConfig& input, const CorrelationOptions& opts) {
  check_shape(input);
  const MonomerConfig cfg = canonical(input);
  CorrelationValue out;
  if (cfg.rights.size() == cfg.lefts.size() && opts.exact) {
    ThetaPoly d = bareiss_determinant(correlation_matrix_exact(cfg));
    out.signed_value = d.value();
    out.value = std::abs(out.signed_value);
    out.exact_signed = std::move(d);
    return out;
  }
  out.exactness = cfg.rights.size() == cfg.lefts.size() ? Exactness::Exact : Exactness::Extrapolated;
  const Eigen::MatrixXd M = correlation_matrix(cfg, opts);
  out.signed_value = M.rows() == 0 ? 1.0 : M.partialPivLu().determinant();
  out.value = std::abs(out.signed_value);
  return out;
}

MonomerConfig to_monomer_config(const HoleSystem& hs, std::span<const Probe> extra) {
  MonomerConfig cfg;
  auto add = [&](const Monomer& m) {
    (m.orientation == Orientation::Right ? cfg.rights : cfg.lefts).push_back(m);
  };
  for (const auto& h : hs.holes())
    for (const auto& m : decompose_hole(h)) add(m);
  for (const auto& p : extra) {
    if (const auto* m = std::get_if<Monomer>(&p)) {
      add(*m);
    } else {
      for (const auto& m2 : std::get<LozengeLocation>(p).monomers()) add(m2);
    }
  }
  return cfg;
}

CorrelationValue omega(const HoleSystem& hs, std::span<const Probe> extra, const CorrelationOptions& opts) {
  require_valid(hs, extra);
  return correlation_det(to_monomer_config(hs, extra), opts);
}

PlacementEngine::PlacementEngine(HoleSystem hs, CorrelationOptions opts) : hs_(std::move(hs)), opts_(opts) {
  require_valid(hs_);
  occupied_ = hs_.triangles();
  std::sort(occupied_.begin(), occupied_.end());
  const MonomerConfig raw = to_monomer_config(hs_);
  check_shape(raw);
  base_ = canonical(raw, &reflected_);
  exactness_ = base_.rights.size() == base_.lefts.size() ? Exactness::Exact : Exactness::Extrapolated;
  m_ = correlation_matrix(base_, opts_);
  if (m_.rows() > 0) {
    lu_.compute(m_);
    det_ = lu_.determinant();
  }
  if (exactness_ == Exactness::Exact) {
    det_exact_ = bareiss_determinant(correlation_matrix_exact(base_));
    if (det_exact_->is_zero()) throw Error(ErrorCode::ZeroDenominator, "hole system has zero correlation");
  } else if (det_ == 0.0 || !std::isfinite(det_)) {
    throw Error(ErrorCode::ZeroDenominator, "hole system has zero correlation");
  }
}

bool PlacementEngine::occupied(const Monomer& m) const {
  return std::binary_search(occupied_.begin(), occupied_.end(), m);
}

bool PlacementEngine::overlaps(const LozengeLocation& L) const {
  return occupied(L.left()) || occupied(L.right());
}

void PlacementEngine::check_probe(const LozengeLocation& L) const {
  if (overlaps(L)) throw Error(ErrorCode::ProbeOverlapsHole, "lozenge overlaps a hole");
}

Eigen::VectorXd PlacementEngine::row_for(const Monomer& r) const {
  const auto m = static_cast<Eigen::Index>(base_.rights.size());
  const auto n = static_cast<Eigen::Index>(base_.lefts.size());
  Eigen::VectorXd u(m);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& l = base_.lefts[j].pos;
    u(j) = coupling_float(r.pos.a - l.a, r.pos.b - l.b, opts_.path);
  }
  u.tail(m - n) = u_entries(r, u_orders(base_), opts_);
  return u;
}

Eigen::VectorXd PlacementEngine::column_for(const Monomer& l) const {
  const auto m = static_cast<Eigen::Index>(base_.rights.size());
  Eigen::VectorXd v(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = base_.rights[i].pos;
    v(i) = coupling_float(r.a - l.pos.a, r.b - l.pos.b, opts_.path);
  }
  return v;
}

double PlacementEngine::probability(const LozengeLocation& L) const {
  check_probe(L);
  Monomer r = L.right();
  Monomer l = L.left();
  if (reflected_) {
    const Monomer r2 = reflect_vertical(l);
    l = reflect_vertical(r);
    r = r2;
  }
  const double alpha = coupling_float(r.pos.a - l.pos.a, r.pos.b - l.pos.b, opts_.path);
  if (m_.rows() == 0) return std::abs(alpha);
  const Eigen::VectorXd x = lu_.solve(column_for(l));
  return std::abs(alpha - row_for(r).dot(x));
}

ExactProbability PlacementEngine::probability_exact(const LozengeLocation& L) const {
  check_probe(L);
  if (exactness_ != Exactness::Exact)
    throw Error(ErrorCode::InvalidArgument, "exact probabilities need a charge-neutral hole system");
  MonomerConfig cfg = raw_with(L);
  ExactProbability out;
  out.numerator = bareiss_determinant(correlation_matrix_exact(cfg));
  out.denominator = *det_exact_;
  out.value = std::abs(out.numerator.value() / out.denominator.value());
  return out;
}

MonomerConfig PlacementEngine::raw_with(const LozengeLocation& L) const {
  MonomerConfig cfg;
  Monomer r = L.right();
  Monomer l = L.left();
  if (reflected_) {
    const Monomer r2 = reflect_vertical(l);
    l = reflect_vertical(r);
    r = r2;
  }
  cfg.rights.push_back(r);
  cfg.lefts.push_back(l);
  cfg.rights.insert(cfg.rights.end(), base_.rights.begin(), base_.rights.end());
  cfg.lefts.insert(cfg.lefts.end(), base_.lefts.begin(), base_.lefts.end());
  return cfg;
}

FieldSample PlacementEngine::field(const Monomer& e, bool exact) const {
  if (occupied(e)) throw Error(ErrorCode::ProbeOverlapsHole, "probe monomer lies in a hole");
  const bool is_left = e.orientation == Orientation::Left;
  const auto Ls = is_left ? lozenges_covering(e) : lozenges_covering_right(e);
  FieldSample fs;
  fs.probe = e;
  fs.exactness = exactness_;
  double p[3];
  if (exact && exactness_ == Exactness::Exact) {
    ThetaPoly sum;
    for (int k = 0; k < 3; ++k) {
      if (overlaps(Ls[k])) {
        p[k] = 0.0;
        continue;
      }
      const auto ep = probability_exact(Ls[k]);
      p[k] = ep.value;
      sum += ep.numerator;
    }
    fs.sum_exact = sum == *det_exact_;
  } else {
    for (int k = 0; k < 3; ++k) p[k] = overlaps(Ls[k]) ? 0.0 : probability(Ls[k]);
  }
  fs.p1 = p[0];
  fs.p2 = p[1];
  fs.p3 = p[2];
  const double sgn = is_left ? 1.0 : -1.0;
  fs.fx = sgn * kHalfSqrt3 * (p[0] - p[1]);
  fs.fy = sgn * kHalfSqrt3 * (p[0] - p[2]);
  return fs;
}

double placement_probability(const LozengeLocation& L, const HoleSystem& hs, const CorrelationOptions& opts) {
  PlacementEngine engine(hs, opts);
  if (opts.exact && engine.exactness() == Exactness::Exact) return engine.probability_exact(L).value;
  return engine.probability(L);
}

FieldSample discrete_field(const Monomer& e, const HoleSystem& hs, const CorrelationOptions& opts) {
  PlacementEngine engine(hs, opts);
  return engine.field(e, opts.exact);
}

double test_charge_field(std::int64_t x, std::int64_t y, std::int64_t alpha, std::int64_t beta,
                         const HoleSystem& hs, const CorrelationOptions& opts) {
  if (alpha == 0 && beta == 0) throw Error(ErrorCode::InvalidArgument, "(alpha, beta) must be nonzero");
  HoleSystem here = hs;
  here.multiholes.push_back(single_hole(HoleKind::E, x, y));
  HoleSystem there = hs;
  there.multiholes.push_back(single_hole(HoleKind::E, x + alpha, y + beta));
  const double w0 = omega(here, {}, opts).value;
  if (w0 == 0.0) throw Error(ErrorCode::ZeroDenominator, "reference correlation vanishes");
  const double w1 = omega(there, {}, opts).value;
  const double len = std::sqrt(static_cast<double>(alpha * alpha + alpha * beta + beta * beta));
  return (w1 / w0 - 1.0) / len;
}

}  // namespace lozenge

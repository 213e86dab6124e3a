#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "lozenge/coupling.hpp"
#include "lozenge/determinant.hpp"
#include "lozenge/lattice.hpp"

namespace lozenge {

struct MonomerConfig {
  std::vector<Monomer> rights;
  std::vector<Monomer> lefts;
};

enum class Exactness { Exact, Extrapolated };

struct CorrelationOptions {
  // Use the exact determinant whenever no U-columns are present.
  bool exact = true;
  ExtrapolationParams extrapolation{};
  FloatPath path = FloatPath::Rounded;
};

struct CorrelationValue {
  double value = 0.0;
  double signed_value = 0.0;
  Exactness exactness = Exactness::Exact;
  std::optional<ThetaPoly> exact_signed;
};

// m >= n after reflecting across the vertical line when needed.
MonomerConfig canonical(const MonomerConfig& cfg, bool* reflected = nullptr);

// The matrix [M_P | M_U] of the correlation formula, as doubles.
Eigen::MatrixXd correlation_matrix(const MonomerConfig& cfg, const CorrelationOptions& opts = {});
DenseMatrix<ThetaPoly> correlation_matrix_exact(const MonomerConfig& cfg);

CorrelationValue correlation_det(const MonomerConfig& cfg, const CorrelationOptions& opts = {});

MonomerConfig to_monomer_config(const HoleSystem& hs, std::span<const Probe> extra = {});
CorrelationValue omega(const HoleSystem& hs, std::span<const Probe> extra = {}, const CorrelationOptions& opts = {});

struct ExactProbability {
  ThetaPoly numerator;    // signed
  ThetaPoly denominator;  // signed
  double value = 0.0;
};

struct FieldSample {
  Monomer probe;
  double fx = 0.0;
  double fy = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  Exactness exactness = Exactness::Exact;
  // Exact identity num1 + num2 + num3 = den verified (only for Exact).
  bool sum_exact = false;
};

// Placement probabilities for many lozenges against one fixed hole system.
// Float queries reuse one factorisation of the hole matrix.
class PlacementEngine {
 public:
  explicit PlacementEngine(HoleSystem hs, CorrelationOptions opts = {});

  const HoleSystem& holes() const { return hs_; }
  Exactness exactness() const { return exactness_; }
  bool occupied(const Monomer& m) const;
  bool overlaps(const LozengeLocation& L) const;

  double probability(const LozengeLocation& L) const;
  ExactProbability probability_exact(const LozengeLocation& L) const;
  // Lozenges that overlap a hole contribute probability zero.
  FieldSample field(const Monomer& e, bool exact = false) const;

 private:
  void check_probe(const LozengeLocation& L) const;
  Eigen::VectorXd row_for(const Monomer& r) const;
  Eigen::VectorXd column_for(const Monomer& l) const;
  MonomerConfig raw_with(const LozengeLocation& L) const;

  HoleSystem hs_;
  CorrelationOptions opts_;
  bool reflected_ = false;
  MonomerConfig base_;
  std::vector<Monomer> occupied_;
  Exactness exactness_ = Exactness::Exact;
  Eigen::MatrixXd m_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double det_ = 1.0;
  std::optional<ThetaPoly> det_exact_;
};

double placement_probability(const LozengeLocation& L, const HoleSystem& hs, const CorrelationOptions& opts = {});
FieldSample discrete_field(const Monomer& e, const HoleSystem& hs, const CorrelationOptions& opts = {});
double test_charge_field(std::int64_t x, std::int64_t y, std::int64_t alpha, std::int64_t beta,
                         const HoleSystem& hs, const CorrelationOptions& opts = {});

}  // namespace lozenge

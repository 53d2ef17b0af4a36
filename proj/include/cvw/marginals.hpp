#pragma once

#include <array>
#include <vector>

#include "cvw/grid.hpp"
#include "cvw/states.hpp"

namespace cvw {

/// The eight quadrature distributions of one state. R* come from the joint at
/// angles θ, S* from the joint at θ + π/2; r± = r1 ± r2 and s± = s1 ± s2.
struct MarginalSet {
  SampledDensity1D R1, R2, S1, S2;
  SampledDensity1D Rplus, Rminus, Splus, Sminus;
  Diagnostics diagnostics;

  /// Largest renormalization applied to any member or upstream joint.
  double max_renormalization() const;
};

/// Subsystem and global marginals of `jointR` (position-type) and `jointS`.
/// Both joints must have equal spacing along their two axes.
MarginalSet global_marginals(const JointDensity2D& jointR, const JointDensity2D& jointS);

/// Marginals of the first mode, second mode, sum and difference of one joint.
struct JointMarginals {
  SampledDensity1D first, second, sum, difference;
};
JointMarginals joint_marginals(const JointDensity2D& joint);

double mean(const SampledDensity1D& d);
double variance(const SampledDensity1D& d);

/// Binned probabilities; bin k covers [offset + k·bin_width, offset + (k+1)·bin_width).
struct DiscreteDistribution {
  double bin_width = 1.0;
  double offset = 0.0;
  std::vector<double> probabilities;

  /// Checks bin_width > 0, non-negative entries and unit sum within 1e-9.
  void validate() const;
};

/// Integrates `d` over bins anchored at `offset` (any integer shift of the
/// anchor gives the same bins). The density is interpolated by local cubics,
/// so bin integrals are fourth-order accurate in the grid spacing. Empty
/// leading and trailing bins are dropped; the result is renormalized.
/// Throws std::invalid_argument when bin_width < grid spacing.
DiscreteDistribution discretize(const SampledDensity1D& d, double bin_width, double offset = 0.0);

/// Symmetric covariance matrix over (x1, p1, x2, p2), means removed.
struct CovarianceMatrix4 {
  std::array<std::array<double, 4>, 4> v{};
  /// Largest mismatch between moments that several joints determine twice.
  double consistency_error = 0.0;
  Diagnostics diagnostics;

  double operator()(int i, int j) const { return v[i][j]; }
  bool is_symmetric(double tol = 1e-12) const;
};

/// Covariance from the joints at angles (0,0), (π/2,π/2), (π/4,π/4) and (0,π/2).
/// The symmetrized x-p moments follow from Var r(π/4) = (Var x + Var p)/2 + Cov(x,p).
/// Inconsistency above 1e-3 between duplicated moments adds a warning.
CovarianceMatrix4 covariance_from_joints(const JointDensity2D& xx, const JointDensity2D& pp,
                                         const JointDensity2D& diagonal, const JointDensity2D& xp);

CovarianceMatrix4 covariance_from_quadratures(const PreparedState& state);

}  // namespace cvw

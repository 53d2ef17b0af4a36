#pragma once

#include <utility>
#include <vector>

#include "cvw/marginals.hpp"
#include "cvw/states.hpp"
#include "cvw/witnesses.hpp"

namespace cvw {

/// Orders used by the weak criteria.
std::vector<double> default_alpha_list();

struct EvaluationConfig {
  std::vector<CriterionId> criteria = all_criteria();
  /// Orders for renyi-weak.
  std::vector<double> alphas = default_alpha_list();
  /// (α1, α2) pairs for renyi-strong.
  std::vector<std::pair<double, double>> strong_exponents{{2.0, 2.0}};
  /// Orders for renyi-discrete and tsallis (order 1 is skipped for tsallis).
  std::vector<double> discrete_alphas{0.6, 1.0, 2.0, 4.0};
  /// Resolutions δ (position side) and Δ (momentum side); every combination is used.
  std::vector<double> deltas{0.1, 0.2, 1.0};
  std::vector<double> big_deltas{0.1, 0.2, 1.0};
  double bin_offset = 0.0;
  /// Angles of the position-type quadratures; the conjugate side uses θ + π/2.
  QuadratureAngles angles{};
  double tolerance = kDefaultTolerance;

  bool enabled(CriterionId id) const;
};

/// Runs every enabled criterion on precomputed marginals. `covariance` may be
/// null when simon is disabled. Verdict order is criterion, then parameters,
/// then pairing and assignment; failures become `failed` verdicts in place.
std::vector<WitnessVerdict> evaluate_marginals(const MarginalSet& m, bool pure, const CovarianceMatrix4* covariance,
                                               const EvaluationConfig& config);

/// Builds the joints and marginals of `state` once and evaluates all enabled criteria.
std::vector<WitnessVerdict> evaluate_all(const PreparedState& state, const EvaluationConfig& config);

}  // namespace cvw

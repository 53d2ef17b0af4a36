#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvw/entropies.hpp"
#include "cvw/marginals.hpp"

namespace cvw {

inline constexpr double kDefaultTolerance = 1e-4;

enum class CriterionId {
  shannon_weak,
  shannon_strong,
  renyi_weak,
  renyi_strong,
  renyi_weak_discrete,
  tsallis,
  mgvt,
  simon_ppt,
};

/// Command-line spelling, e.g. "renyi-weak".
std::string_view criterion_name(CriterionId id);
std::optional<CriterionId> parse_criterion(std::string_view name);
const std::vector<CriterionId>& all_criteria();

/// Which global variables are paired: (R+, S-) or (R-, S+).
enum class Pairing { none, plus_minus, minus_plus };
/// Where the order α goes; its conjugate β goes to the other side.
enum class Assignment { none, alpha_on_r, alpha_on_s };

std::string_view pairing_name(Pairing p);
std::string_view assignment_name(Assignment a);

enum class VerdictStatus { evaluated, forbidden, failed };

struct WitnessVerdict {
  CriterionId criterion = CriterionId::shannon_weak;
  Pairing pairing = Pairing::none;
  Assignment assignment = Assignment::none;
  /// Ordered (name, value) pairs: exponents, resolutions. ∞ is stored as inf.
  std::vector<std::pair<std::string, double>> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool detected = false;
  VerdictStatus status = VerdictStatus::evaluated;
  /// Failure text or the violated exponent relation for forbidden cells.
  std::string message;
  Diagnostics metadata;

  std::optional<double> parameter(std::string_view name) const;
};

/// Sets margin and detection flag: detected ⇔ lhs - rhs < -tol.
void settle(WitnessVerdict& v, double tol);

WitnessVerdict failed_verdict(CriterionId id, std::string message);

// ------------------------------------------------------------- exponents

/// Raised for exponent combinations outside the allowed parameter region.
class ForbiddenExponents : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// β with 1/α + 1/β = 2. Requires α ≥ 1/2; α = 1/2 gives β = ∞.
EntropyOrder conjugate_beta(EntropyOrder alpha);

struct ConjugateExponents {
  EntropyOrder alpha;
  EntropyOrder beta;
  static ConjugateExponents from_alpha(EntropyOrder alpha);
};

/// ln C_t with C_t = √(t^{1/t} / |t'|^{1/t'}), t' = t/(t-1); C_1 = C_∞ = 1.
double log_young_factor(EntropyOrder t);
/// Sharp Young constant C(α1, α2) = C_{α1} C_{α2} / C_α with 1/α = 1/α1 + 1/α2 - 1.
double young_coefficient(EntropyOrder a1, EntropyOrder a2);
double log_young_coefficient(EntropyOrder a1, EntropyOrder a2);

/// Orders for the strong Rényi criterion. α_j go with position-type marginals,
/// β_j = conjugate_beta(α_j), and the combined orders follow
/// 1/α = 1/α1 + 1/α2 - 1, 1/β = 1/β1 + 1/β2 - 1.
/// Either all α's are ≥ 1 (β's ≤ 1) or the mirror image with all α's ≤ 1.
struct StrongRenyiExponents {
  EntropyOrder alpha1, alpha2, beta1, beta2, alpha, beta;

  /// Throws ForbiddenExponents naming the violated relation.
  static StrongRenyiExponents from_alphas(double alpha1, double alpha2);
  /// Empty when allowed, otherwise the violated relation.
  static std::optional<std::string> forbidden_reason(double alpha1, double alpha2);
};

// -------------------------------------------------------------- criteria

/// Right side of the weak Rényi bound: ln 2π - ½[ln α/(1-α) + ln β/(1-β)].
double renyi_weak_bound(EntropyOrder alpha);

/// H[R±] + H[S∓] ≥ ln(2πe). Two verdicts, (R+,S-) then (R-,S+).
std::vector<WitnessVerdict> shannon_weak(const MarginalSet& m, double tol = kDefaultTolerance);

/// H[R±] + H[S∓] ≥ ½ ln Σ_{ij} exp(2H[R_i] + 2H[S_j]). Pure states only;
/// throws std::invalid_argument when `pure` is false.
std::vector<WitnessVerdict> shannon_strong(const MarginalSet& m, bool pure, double tol = kDefaultTolerance);

/// Four verdicts: pairing (R+,S-), (R-,S+) × assignment α on R, α on S.
std::vector<WitnessVerdict> renyi_weak(const MarginalSet& m, EntropyOrder alpha, double tol = kDefaultTolerance);

/// Strong Rényi criterion, two verdicts (R+,S-) then (R-,S+). Both sides are
/// divided by |(α-1)/α| so margins stay comparable across orders and tend to
/// the Shannon form as α_j → 1. Pure states only.
std::vector<WitnessVerdict> renyi_strong(const MarginalSet& m, const StrongRenyiExponents& e, bool pure,
                                         double tol = kDefaultTolerance);

/// Weak bound on binned distributions: H_α[R^δ] + H_β[S^Δ] ≥ bound(α) + ln(1/(δΔ)).
/// With alpha_on_s the orders swap sides.
WitnessVerdict renyi_weak_discrete(const DiscreteDistribution& dR, const DiscreteDistribution& dS,
                                   EntropyOrder alpha, double tol = kDefaultTolerance,
                                   Assignment assignment = Assignment::alpha_on_r);

/// Crossover δΔ between the two Tsallis bounds, (2π/b)(a/b)^{1/(2(a-1))},
/// with a = max(α, β) and b = min(α, β).
double tsallis_crossover(EntropyOrder alpha, EntropyOrder beta);
/// Tsallis lower bound at resolution product δΔ, chosen by the crossover.
double tsallis_bound(EntropyOrder alpha, EntropyOrder beta, double resolution_product);
/// The two branches evaluated unconditionally (for the continuity check).
double tsallis_bound_small(EntropyOrder alpha, EntropyOrder beta, double resolution_product);
double tsallis_bound_large(EntropyOrder alpha, EntropyOrder beta, double resolution_product);

/// T_α[R^δ] + T_β[S^Δ] against the Tsallis bound. α = 1 is rejected.
WitnessVerdict tsallis_witness(const DiscreteDistribution& dR, const DiscreteDistribution& dS, EntropyOrder alpha,
                               EntropyOrder beta, double tol = kDefaultTolerance);

/// Var(r±) Var(s∓) ≥ 1. Two verdicts.
std::vector<WitnessVerdict> mgvt(const MarginalSet& m, double tol = kDefaultTolerance);

/// Symplectic eigenvalues (ν-, ν+) of the covariance matrix, optionally after
/// partial transposition p2 → -p2.
std::pair<double, double> symplectic_eigenvalues(const CovarianceMatrix4& cm, bool partial_transpose);

/// Detected when the smallest symplectic eigenvalue after p2 → -p2 is below
/// 1/2 - tol. lhs is that eigenvalue, rhs 1/2. Rejects unphysical matrices.
WitnessVerdict simon_ppt(const CovarianceMatrix4& cm, double tol = kDefaultTolerance);

/// Closed-form ratios σ-/σ+ bounding the undetected band of the weak Rényi
/// criterion on the Hermite-Gauss family: detected below `lower` or above `upper`.
struct ThresholdPair {
  double lower;
  double upper;
};
ThresholdPair hermite_gauss_thresholds(EntropyOrder alpha);

}  // namespace cvw

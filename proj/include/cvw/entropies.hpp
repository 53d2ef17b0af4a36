#pragma once

#include <string>

#include "cvw/grid.hpp"
#include "cvw/marginals.hpp"

namespace cvw {

/// Rényi order α ∈ (0, ∞]. Values within 1e-6 of 1 are treated as Shannon.
class EntropyOrder {
 public:
  constexpr EntropyOrder() = default;
  /// Throws std::invalid_argument unless value > 0 (infinity allowed).
  EntropyOrder(double value);  // NOLINT: implicit on purpose, orders read like numbers
  static EntropyOrder infinity();
  /// Order whose reciprocal is `r` (r = 0 gives ∞); r must be > 0 or 0.
  static EntropyOrder from_reciprocal(double r);

  double value() const { return value_; }
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }
  bool is_infinite() const { return infinite_; }
  bool is_shannon() const;

  std::string str() const;

 private:
  double value_ = 1.0;
  bool infinite_ = false;
};

inline constexpr double kShannonWindow = 1e-6;
/// Integrand samples below this are dropped (x ln x → 0, x^α → 0).
inline constexpr double kDensityFloor = 1e-300;

/// (∫ d^α)^{1/α}; sup d at α = ∞ and the total mass at α = 1.
/// Throws std::invalid_argument when d is not normalized within 1e-6.
double lalpha_norm(const SampledDensity1D& d, EntropyOrder alpha);

double shannon_continuous(const SampledDensity1D& d);
/// ln(∫ d^α)/(1-α); Shannon near α = 1, -ln sup d at α = ∞.
double renyi_continuous(const SampledDensity1D& d, EntropyOrder alpha);

/// Share of ∫ d^α contributed by the outer 1/32 of the grid on either side.
/// Large values mean the Rényi integral is still growing at the grid edge.
double renyi_tail_fraction(const SampledDensity1D& d, EntropyOrder alpha);

double shannon_discrete(const DiscreteDistribution& d);
double renyi_discrete(const DiscreteDistribution& d, EntropyOrder alpha);
/// (Σ ρ^α - 1)/(1-α); Shannon at α = 1 and 0 at α = ∞.
double tsallis_discrete(const DiscreteDistribution& d, EntropyOrder alpha);

}  // namespace cvw

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cvw/grid.hpp"

namespace cvw {

struct HermiteGaussParams {
  double sigma_plus = 1.0;
  double sigma_minus = 1.0;

  /// Widths with σ+σ- = 1 and σ-/σ+ = ratio (the family is scale covariant).
  static HermiteGaussParams from_ratio(double ratio);
  void validate() const;
};

struct NoonParams {
  int n_photons = 1;
  int max_photons = 10;
  void validate() const;
};

/// Dephased two-mode cat N(ν,p){|ν,ν⟩⟨ν,ν| + |-ν,-ν⟩⟨-ν,-ν| - (1-p)(cross terms)}.
struct CatParams {
  cplx nu{1.0, 0.0};
  double p = 0.0;
  void validate() const;
  /// 1 / (2 - 2(1-p) e^{-4|ν|²}).
  double normalization() const;
};

struct VacuumParams {};

/// Product of single-mode squeezed vacua; mode j has Var x = e^{-2 r_j} / 2.
struct SqueezedProductParams {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Product of thermal states; mode j has Var x = Var p = n_j + 1/2.
struct ThermalParams {
  double n1 = 0.0;
  double n2 = 0.0;
};

/// Two-mode squeezed vacuum with Var(x1 - x2) = Var(p1 + p2) = e^{-2r}.
struct TwoModeSqueezedParams {
  double r = 0.0;
};

struct QuadratureAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;

  /// Angles reduced into [0, 2π).
  static QuadratureAngles make(double theta1, double theta2);
  /// The complementary pair (θ1 + π/2, θ2 + π/2).
  QuadratureAngles conjugate() const;
};

enum class ConjugatePair { position, momentum };

/// Free-form notes attached to built objects; renormalization is |1 - raw mass|.
struct Diagnostics {
  double renormalization = 0.0;
  std::vector<std::string> warnings;

  void merge(const Diagnostics& other);
};

/// Two-mode wavefunction Ψ(q1, q2), row-major with q1 along rows.
struct PureGridState {
  Grid1D grid1;
  Grid1D grid2;
  std::vector<cplx> amplitudes;
  Diagnostics diagnostics;

  cplx at(std::size_t i, std::size_t j) const { return amplitudes[i * grid2.n_points + j]; }
  double norm_squared() const;
};

/// Joint quadrature density P(q1, q2), row-major with q1 along rows.
struct JointDensity2D {
  Grid1D grid1;
  Grid1D grid2;
  std::vector<double> values;
  Diagnostics diagnostics;

  double at(std::size_t i, std::size_t j) const { return values[i * grid2.n_points + j]; }
  double mass() const;

  /// Validates and rescales to unit mass; negatives down to -1e-12 are clipped.
  static JointDensity2D normalized(Grid1D g1, Grid1D g2, std::vector<double> v,
                                   Diagnostics diagnostics = {});
};

PureGridState build_hermite_gauss(const HermiteGaussParams& params, const Grid1D& grid);
PureGridState build_noon(const NoonParams& params, const Grid1D& grid);
PureGridState build_vacuum(const Grid1D& grid);
PureGridState build_squeezed_product(const SqueezedProductParams& params, const Grid1D& grid);
PureGridState build_two_mode_squeezed(const TwoModeSqueezedParams& params, const Grid1D& grid);
/// Pure p = 0 cat (|ν,ν⟩ - |-ν,-ν⟩)/norm, mainly as a cross-check of the analytic densities.
PureGridState build_pure_cat(cplx nu, const Grid1D& grid);
PureGridState build_product(const SampledFunction1D& mode1, const SampledFunction1D& mode2);

/// Distribution of (r1, r2) after rotating each mode by θ_j (fractional Fourier
/// transform along each axis), renormalized.
JointDensity2D joint_density_pure(const PureGridState& state, const QuadratureAngles& angles);

/// Analytic cat density at rotation angles; ν_j → ν e^{-iθ_j} per mode.
JointDensity2D cat_joint_density(const CatParams& params, const QuadratureAngles& angles, const Grid1D& grid);
JointDensity2D cat_joint_density(const CatParams& params, ConjugatePair pair, const Grid1D& grid);

/// Analytic thermal-product density (rotation invariant).
JointDensity2D thermal_joint_density(const ThermalParams& params, const Grid1D& grid);

// ------------------------------------------------------------ descriptors

using StateParams = std::variant<VacuumParams, SqueezedProductParams, ThermalParams,
                                 TwoModeSqueezedParams, HermiteGaussParams, NoonParams, CatParams>;

struct StateDescriptor {
  StateParams params;

  bool is_pure() const;
  /// Family name as used on the command line ("noon", "cat", ...).
  std::string family() const;
  std::string label() const;
  /// Half-width a grid needs to hold the state in position and momentum.
  double required_half_width() const;
};

struct GridSettings {
  std::size_t points = 2048;
  /// 0 selects the default: self-dual grid for pure states, max(8, required) otherwise.
  double half_width = 0.0;

  Grid1D grid_for(const StateDescriptor& state) const;
};

/// A state ready to produce joint densities at arbitrary angles. Pure states
/// are tabulated once; mixed states are evaluated analytically per request.
class PreparedState {
 public:
  PreparedState(StateDescriptor descriptor, const GridSettings& settings);

  const StateDescriptor& descriptor() const { return descriptor_; }
  const Grid1D& grid() const { return grid_; }
  bool is_pure() const { return descriptor_.is_pure(); }
  const Diagnostics& diagnostics() const { return diagnostics_; }

  JointDensity2D joint(const QuadratureAngles& angles) const;

 private:
  StateDescriptor descriptor_;
  Grid1D grid_;
  PureGridState pure_;
  Diagnostics diagnostics_;
};

}  // namespace cvw

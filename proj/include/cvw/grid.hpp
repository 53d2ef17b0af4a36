#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvw {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Raised when a numeric routine cannot produce a trustworthy result
/// (unresolved transform, divergent integral, truncated support).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform 1D grid, q_k = min + k * spacing for k = 0..n_points-1.
struct Grid1D {
  double min = 0.0;
  double max = 1.0;
  std::size_t n_points = 2;
  double spacing = 1.0;

  /// Grid with explicit endpoints; spacing = (max - min) / (n - 1).
  static Grid1D from_range(double min, double max, std::size_t n_points);

  /// FFT-style grid with points (k - n/2) * spacing. Contains 0 as a node.
  static Grid1D centered(std::size_t n_points, double spacing);

  /// Centered grid whose Fourier-dual grid is itself: spacing^2 * n = 2π.
  static Grid1D self_dual(std::size_t n_points);

  double point(std::size_t k) const { return min + static_cast<double>(k) * spacing; }
  std::vector<double> points() const;

  bool is_centered() const;
  bool is_self_dual() const;
  bool same_spacing(const Grid1D& other) const;
  bool operator==(const Grid1D& other) const;

  /// Index of the node nearest to q (clamped to the grid).
  std::size_t nearest_index(double q) const;
};

/// Complex (or real-valued stored as complex) samples on a grid.
struct SampledFunction1D {
  Grid1D grid;
  std::vector<cplx> values;

  SampledFunction1D() = default;
  SampledFunction1D(Grid1D g, std::vector<cplx> v);

  /// ∫|f|² over the grid.
  double norm_squared() const;
};

/// Non-negative probability density tabulated on a uniform grid.
///
/// `renormalization` records |1 - mass| of the raw input when the density was
/// produced through `normalized`, so truncation bias stays visible downstream.
struct SampledDensity1D {
  Grid1D grid;
  std::vector<double> values;
  double renormalization = 0.0;

  SampledDensity1D() = default;
  /// Validates length, finiteness and sign; values down to -1e-12 are clipped.
  SampledDensity1D(Grid1D g, std::vector<double> v);

  /// Rescales to unit mass, recording the applied correction.
  static SampledDensity1D normalized(Grid1D g, std::vector<double> v);

  double mass() const;
  double mean() const;

  /// Same values on a grid shifted by `offset`.
  SampledDensity1D translated(double offset) const;
};

void validate_grid(const Grid1D& g);

}  // namespace cvw

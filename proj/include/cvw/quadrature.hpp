#pragma once

#include <span>

#include "cvw/grid.hpp"

namespace cvw {

/// Composite Simpson rule when the grid has an odd number of points,
/// trapezoid otherwise. Throws on non-finite samples.
double integrate(const Grid1D& grid, std::span<const double> values);

inline double integrate(const SampledDensity1D& d) { return integrate(d.grid, d.values); }

/// Quadrature weights w_k such that integrate(g, f) == Σ w_k f_k.
std::vector<double> quadrature_weights(const Grid1D& grid);

/// Cubic through the four samples nearest to x, shifted inward at the grid
/// ends. Needs at least 4 points; x is clamped to the grid.
double cubic_interpolate(const Grid1D& grid, std::span<const double> values, double x);

/// The same interpolant sampled on a grid `factor` times finer, with
/// negative overshoot clipped to zero.
SampledDensity1D refine_cubic(const Grid1D& grid, std::span<const double> values, std::size_t factor);

/// Largest value of the interpolant, searched around the largest sample.
double cubic_peak(const Grid1D& grid, std::span<const double> values);

}  // namespace cvw

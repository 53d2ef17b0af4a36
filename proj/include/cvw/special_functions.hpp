#pragma once

#include "cvw/grid.hpp"

namespace cvw {

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
double hermite_phys(int n, double x);

/// ln Γ(x) for x > 0 (Lanczos, g = 7). Relative error below 1e-13 on (0, 200].
double log_gamma(double x);

/// Harmonic-oscillator eigenfunction ψ_n(x) = H_n(x) e^{-x²/2} / (π^{1/4} √(2ⁿ n!))
/// in the [x, p] = i convention, sampled on `grid`.
///
/// Evaluated through the normalized recurrence, so large n does not overflow.
SampledFunction1D fock_wavefunction(int n, const Grid1D& grid);

/// Fraction of ∫|f|² that sits in the outer `fraction` of the grid on either side.
double edge_weight(const SampledFunction1D& f, double fraction = 1.0 / 32.0);

}  // namespace cvw

#pragma once

#include "cvw/grid.hpp"

namespace cvw {

/// (f * g)(u) = ∫ f(t) g(u - t) dt on the Minkowski-sum grid, renormalized.
/// Both inputs must share a spacing.
SampledDensity1D convolve(const SampledDensity1D& f, const SampledDensity1D& g);

/// d(-q): the density of the negated variable.
SampledDensity1D reflect(const SampledDensity1D& d);

}  // namespace cvw

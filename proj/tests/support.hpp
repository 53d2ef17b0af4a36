#pragma once

#include <cmath>
#include <vector>

#include "cvw/grid.hpp"
#include "cvw/marginals.hpp"
#include "cvw/states.hpp"

namespace testing {

inline double normal_pdf(double x, double mu, double var) {
  return std::exp(-(x - mu) * (x - mu) / (2.0 * var)) / std::sqrt(2.0 * cvw::kPi * var);
}

inline cvw::SampledDensity1D gaussian_density(const cvw::Grid1D& g, double mu, double var) {
  std::vector<double> v(g.n_points);
  for (std::size_t k = 0; k < g.n_points; ++k) v[k] = normal_pdf(g.point(k), mu, var);
  return cvw::SampledDensity1D::normalized(g, std::move(v));
}

inline cvw::SampledDensity1D uniform_density(const cvw::Grid1D& g, double lo, double hi) {
  std::vector<double> v(g.n_points);
  for (std::size_t k = 0; k < g.n_points; ++k) {
    const double x = g.point(k);
    v[k] = (x >= lo - 1e-12 && x <= hi + 1e-12) ? 1.0 / (hi - lo) : 0.0;
  }
  return cvw::SampledDensity1D(g, std::move(v));
}

inline cvw::MarginalSet marginals_of(const cvw::PreparedState& s,
                                     const cvw::QuadratureAngles& angles = {}) {
  return cvw::global_marginals(s.joint(angles), s.joint(angles.conjugate()));
}

inline cvw::MarginalSet marginals_of(const cvw::StateDescriptor& d, const cvw::GridSettings& g = {}) {
  return marginals_of(cvw::PreparedState(d, g));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? m : INFINITY;
}

/// Separable test catalog shared by soundness checks.
inline std::vector<cvw::StateDescriptor> separable_catalog() {
  return {
      {cvw::VacuumParams{}},
      {cvw::SqueezedProductParams{0.4, -0.7}},
      {cvw::ThermalParams{0.5, 1.5}},
      {cvw::CatParams{{0.5, 0.0}, 1.0}},
      {cvw::CatParams{{1.5, 0.0}, 1.0}},
      {cvw::CatParams{{3.0, 0.0}, 1.0}},
  };
}

}  // namespace testing

#include "cvw/grid.hpp"

#include <algorithm>
#include <cmath>

#include "cvw/quadrature.hpp"

namespace cvw {

void validate_grid(const Grid1D& g) {
  if (g.n_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.max > g.min))
    throw std::invalid_argument("grid requires finite max > min");
  double expected = (g.max - g.min) / static_cast<double>(g.n_points - 1);
  if (!(g.spacing > 0) || std::abs(expected - g.spacing) > 1e-9 * g.spacing)
    throw std::invalid_argument("grid spacing inconsistent with its range");
}

Grid1D Grid1D::from_range(double min, double max, std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  Grid1D g{min, max, n_points, (max - min) / static_cast<double>(n_points - 1)};
  validate_grid(g);
  return g;
}

Grid1D Grid1D::centered(std::size_t n_points, double spacing) {
  if (n_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(spacing > 0) || !std::isfinite(spacing))
    throw std::invalid_argument("grid spacing must be positive");
  auto half = static_cast<double>(n_points / 2);
  double min = -half * spacing;
  return Grid1D{min, min + static_cast<double>(n_points - 1) * spacing, n_points, spacing};
}

Grid1D Grid1D::self_dual(std::size_t n_points) {
  return centered(n_points, std::sqrt(2.0 * kPi / static_cast<double>(n_points)));
}

std::vector<double> Grid1D::points() const {
  std::vector<double> q(n_points);
  for (std::size_t k = 0; k < n_points; ++k) q[k] = point(k);
  return q;
}

bool Grid1D::is_centered() const {
  return std::abs(min + static_cast<double>(n_points / 2) * spacing) <= 1e-9 * spacing;
}

bool Grid1D::is_self_dual() const {
  return is_centered() &&
         std::abs(spacing * spacing * static_cast<double>(n_points) - 2.0 * kPi) <= 1e-9;
}

bool Grid1D::same_spacing(const Grid1D& other) const {
  return std::abs(spacing - other.spacing) <= 1e-9 * std::max(spacing, other.spacing);
}

bool Grid1D::operator==(const Grid1D& other) const {
  return n_points == other.n_points && same_spacing(other) &&
         std::abs(min - other.min) <= 1e-9 * spacing;
}

std::size_t Grid1D::nearest_index(double q) const {
  double k = std::round((q - min) / spacing);
  if (k <= 0) return 0;
  if (k >= static_cast<double>(n_points - 1)) return n_points - 1;
  return static_cast<std::size_t>(k);
}

SampledFunction1D::SampledFunction1D(Grid1D g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
  validate_grid(grid);
  if (values.size() != grid.n_points)
    throw std::invalid_argument("sample count does not match grid size");
}

double SampledFunction1D::norm_squared() const {
  std::vector<double> m(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) m[k] = std::norm(values[k]);
  return integrate(grid, m);
}

SampledDensity1D::SampledDensity1D(Grid1D g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  validate_grid(grid);
  if (values.size() != grid.n_points)
    throw std::invalid_argument("sample count does not match grid size");
  for (double& x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("density contains non-finite values");
    if (x < 0) {
      if (x < -1e-12) throw std::invalid_argument("density contains negative values");
      x = 0.0;
    }
  }
}

SampledDensity1D SampledDensity1D::normalized(Grid1D g, std::vector<double> v) {
  SampledDensity1D d(g, std::move(v));
  double m = d.mass();
  if (!(m > 0)) throw NumericError("density has zero mass");
  for (double& x : d.values) x /= m;
  d.renormalization = std::abs(1.0 - m);
  return d;
}

double SampledDensity1D::mass() const { return integrate(grid, values); }

double SampledDensity1D::mean() const {
  std::vector<double> w(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) w[k] = grid.point(k) * values[k];
  return integrate(grid, w) / mass();
}

SampledDensity1D SampledDensity1D::translated(double offset) const {
  SampledDensity1D d = *this;
  d.grid.min += offset;
  d.grid.max += offset;
  return d;
}

}  // namespace cvw

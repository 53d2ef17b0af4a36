#include "cvw/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace cvw {

std::vector<double> quadrature_weights(const Grid1D& grid) {
  const std::size_t n = grid.n_points;
  const double h = grid.spacing;
  std::vector<double> w(n, h);
  if (n % 2 == 1 && n >= 3) {
    for (std::size_t k = 1; k + 1 < n; ++k) w[k] = (k % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    w[0] = w[n - 1] = h / 3.0;
  } else {
    w[0] = w[n - 1] = 0.5 * h;
  }
  return w;
}

double integrate(const Grid1D& grid, std::span<const double> values) {
  if (values.size() != grid.n_points)
    throw std::invalid_argument("integrate: sample count does not match grid size");
  const std::size_t n = values.size();
  // Accumulate interior sums separately to keep the rule's weights exact.
  double ends = values[0] + values[n - 1];
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!std::isfinite(values[k])) throw std::invalid_argument("integrate: non-finite sample");
    (k % 2 == 1 ? odd : even) += values[k];
  }
  if (!std::isfinite(ends)) throw std::invalid_argument("integrate: non-finite sample");
  const double h = grid.spacing;
  if (n % 2 == 1 && n >= 3) return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  return h * (0.5 * ends + odd + even);
}

namespace {

double lagrange_cubic(std::span<const double> f, std::size_t n, double u) {
  auto c = static_cast<std::size_t>(std::clamp(std::floor(u), 0.0, static_cast<double>(n - 2)));
  const std::size_t s = std::min(c > 0 ? c - 1 : 0, n - 4);
  const double t = u - static_cast<double>(s);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    double l = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) l *= (t - j) / static_cast<double>(i - j);
    acc += l * f[s + static_cast<std::size_t>(i)];
  }
  return acc;
}

}  // namespace

double cubic_interpolate(const Grid1D& grid, std::span<const double> values, double x) {
  const std::size_t n = grid.n_points;
  if (values.size() != n || n < 4) throw std::invalid_argument("cubic_interpolate needs 4 or more matching samples");
  const double u = std::clamp((x - grid.min) / grid.spacing, 0.0, static_cast<double>(n - 1));
  return lagrange_cubic(values, n, u);
}

SampledDensity1D refine_cubic(const Grid1D& grid, std::span<const double> values, std::size_t factor) {
  const std::size_t n = grid.n_points;
  if (values.size() != n || n < 4) throw std::invalid_argument("refine_cubic needs 4 or more matching samples");
  if (factor == 0) throw std::invalid_argument("refine_cubic needs a positive factor");
  const std::size_t m = (n - 1) * factor + 1;
  Grid1D fine{grid.min, grid.max, m, grid.spacing / static_cast<double>(factor)};
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k)
    out[k] = std::max(0.0, lagrange_cubic(values, n, static_cast<double>(k) / static_cast<double>(factor)));
  return SampledDensity1D(fine, std::move(out));
}

double cubic_peak(const Grid1D& grid, std::span<const double> values) {
  const std::size_t n = grid.n_points;
  if (values.size() != n || n < 4) throw std::invalid_argument("cubic_peak needs 4 or more matching samples");
  const auto top = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  double best = values[top];
  constexpr int kSteps = 128;
  const double lo = top > 0 ? static_cast<double>(top) - 1.0 : 0.0;
  const double hi = std::min(static_cast<double>(top) + 1.0, static_cast<double>(n - 1));
  for (int s = 0; s <= kSteps; ++s) best = std::max(best, lagrange_cubic(values, n, lo + (hi - lo) * s / kSteps));
  return best;
}

}  // namespace cvw

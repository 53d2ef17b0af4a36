#include "cvw/convolve.hpp"

#include <algorithm>

#include "cvw/kernels.hpp"

namespace cvw {

SampledDensity1D convolve(const SampledDensity1D& f, const SampledDensity1D& g) {
  if (!f.grid.same_spacing(g.grid))
    throw std::invalid_argument("convolve: incompatible grid spacings");
  const double h = f.grid.spacing;
  std::vector<double> raw = kernels::parallel::linear_convolution(f.values, g.values);
  for (double& v : raw) v *= h;
  const std::size_t n = raw.size();
  Grid1D out{f.grid.min + g.grid.min, f.grid.min + g.grid.min + static_cast<double>(n - 1) * h, n, h};
  return SampledDensity1D::normalized(out, std::move(raw));
}

SampledDensity1D reflect(const SampledDensity1D& d) {
  std::vector<double> v(d.values.rbegin(), d.values.rend());
  Grid1D g{-d.grid.max, -d.grid.min, d.grid.n_points, d.grid.spacing};
  SampledDensity1D out(g, std::move(v));
  out.renormalization = d.renormalization;
  return out;
}

}  // namespace cvw

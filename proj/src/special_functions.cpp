#include "cvw/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace cvw {

double hermite_phys(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_phys: negative order");
  double h_prev = 1.0;
  if (n == 0) return h_prev;
  double h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double next = 2.0 * x * h - 2.0 * k * h_prev;
    h_prev = h;
    h = next;
  }
  return h;
}

double log_gamma(double x) {
  if (!(x > 0) || !std::isfinite(x)) throw std::domain_error("log_gamma: argument must be positive");
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection keeps the series in its accurate range.
    return std::log(kPi / std::abs(std::sin(kPi * x))) - log_gamma(1.0 - x);
  }
  double z = x - 1.0;
  double a = c[0];
  double t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

SampledFunction1D fock_wavefunction(int n, const Grid1D& grid) {
  if (n < 0) throw std::invalid_argument("fock_wavefunction: negative photon number");
  validate_grid(grid);
  std::vector<cplx> out(grid.n_points);
  const double norm0 = std::pow(kPi, -0.25);
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    double x = grid.point(k);
    double psi_prev = norm0 * std::exp(-0.5 * x * x);
    double psi = psi_prev;
    if (n >= 1) {
      psi = std::sqrt(2.0) * x * psi_prev;
      for (int m = 1; m < n; ++m) {
        double next = std::sqrt(2.0 / (m + 1)) * x * psi - std::sqrt(double(m) / (m + 1)) * psi_prev;
        psi_prev = psi;
        psi = next;
      }
    }
    out[k] = psi;
  }
  return SampledFunction1D(grid, std::move(out));
}

double edge_weight(const SampledFunction1D& f, double fraction) {
  const std::size_t n = f.values.size();
  auto band = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double w = std::norm(f.values[k]);
    total += w;
    if (k < band || k + band >= n) edge += w;
  }
  return total > 0 ? edge / total : 0.0;
}

}  // namespace cvw

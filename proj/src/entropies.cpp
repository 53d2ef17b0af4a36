#include "cvw/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cvw/quadrature.hpp"

namespace cvw {

EntropyOrder::EntropyOrder(double value) {
  if (std::isinf(value) && value > 0) {
    infinite_ = true;
    value_ = std::numeric_limits<double>::infinity();
    return;
  }
  if (!(value > 0) || !std::isfinite(value)) throw std::invalid_argument("entropy order must be > 0");
  value_ = value;
}

EntropyOrder EntropyOrder::infinity() { return EntropyOrder(std::numeric_limits<double>::infinity()); }

EntropyOrder EntropyOrder::from_reciprocal(double r) {
  if (r == 0.0) return infinity();
  if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("entropy order reciprocal must be >= 0");
  return EntropyOrder(1.0 / r);
}

bool EntropyOrder::is_shannon() const { return !infinite_ && std::abs(value_ - 1.0) < kShannonWindow; }

std::string EntropyOrder::str() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

namespace {

double peak(const SampledDensity1D& d) {
  return d.grid.n_points >= 4 ? cubic_peak(d.grid, d.values) : *std::max_element(d.values.begin(), d.values.end());
}

std::vector<double> powered(const SampledDensity1D& d, double alpha) {
  std::vector<double> w(d.values.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = d.values[k] < kDensityFloor ? 0.0 : std::pow(d.values[k], alpha);
  return w;
}

// High powers sharpen the density well below the grid spacing, so the
// integrand is resampled from a cubic interpolant before quadrature.
double powered_integral(const SampledDensity1D& d, double alpha) {
  const auto factor = static_cast<std::size_t>(std::min(64.0, std::ceil(std::sqrt(alpha / 8.0))));
  if (factor <= 1 || d.grid.n_points < 4) return integrate(d.grid, powered(d, alpha));
  const SampledDensity1D fine = refine_cubic(d.grid, d.values, factor);
  return integrate(fine.grid, powered(fine, alpha));
}

}  // namespace

double lalpha_norm(const SampledDensity1D& d, EntropyOrder alpha) {
  const double m = d.mass();
  if (std::abs(m - 1.0) > 1e-6) throw std::invalid_argument("lalpha_norm: density is not normalized");
  if (alpha.is_infinite()) return peak(d);
  if (alpha.value() == 1.0) return m;
  return std::pow(powered_integral(d, alpha.value()), 1.0 / alpha.value());
}

double shannon_continuous(const SampledDensity1D& d) {
  std::vector<double> w(d.values.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = d.values[k];
    w[k] = x < kDensityFloor ? 0.0 : -x * std::log(x);
  }
  return integrate(d.grid, w);
}

double renyi_continuous(const SampledDensity1D& d, EntropyOrder alpha) {
  if (alpha.is_infinite()) return -std::log(peak(d));
  if (alpha.is_shannon()) return shannon_continuous(d);
  const double a = alpha.value();
  const double s = powered_integral(d, a);
  if (!(s > 0) || !std::isfinite(s)) throw NumericError("renyi_continuous: integral is not positive and finite");
  return std::log(s) / (1.0 - a);
}

double renyi_tail_fraction(const SampledDensity1D& d, EntropyOrder alpha) {
  std::vector<double> w;
  if (alpha.is_infinite()) return 0.0;
  if (alpha.is_shannon()) {
    w.resize(d.values.size());
    for (std::size_t k = 0; k < w.size(); ++k)
      w[k] = d.values[k] < kDensityFloor ? 0.0 : std::abs(d.values[k] * std::log(d.values[k]));
  } else {
    w = powered(d, alpha.value());
  }
  const std::size_t n = w.size();
  const std::size_t band = std::max<std::size_t>(1, n / 32);
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    total += w[k];
    if (k < band || k + band >= n) edge += w[k];
  }
  return total > 0 ? edge / total : 0.0;
}

double shannon_discrete(const DiscreteDistribution& d) {
  double h = 0.0;
  for (double p : d.probabilities)
    if (p >= kDensityFloor) h -= p * std::log(p);
  return h;
}

double renyi_discrete(const DiscreteDistribution& d, EntropyOrder alpha) {
  if (alpha.is_infinite()) return -std::log(*std::max_element(d.probabilities.begin(), d.probabilities.end()));
  if (alpha.is_shannon()) return shannon_discrete(d);
  const double a = alpha.value();
  double s = 0.0;
  for (double p : d.probabilities)
    if (p >= kDensityFloor) s += std::pow(p, a);
  return std::log(s) / (1.0 - a);
}

double tsallis_discrete(const DiscreteDistribution& d, EntropyOrder alpha) {
  if (alpha.is_infinite()) return 0.0;
  if (alpha.is_shannon()) return shannon_discrete(d);
  const double a = alpha.value();
  double s = 0.0;
  for (double p : d.probabilities)
    if (p >= kDensityFloor) s += std::pow(p, a);
  return (s - 1.0) / (1.0 - a);
}

}  // namespace cvw

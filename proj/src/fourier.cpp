#include "cvw/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "cvw/special_functions.hpp"

namespace cvw {

namespace {

constexpr double kEdgeTolerance = 1e-6;
constexpr double kAngleEps = 1e-12;

double reduce_angle(double theta) {
  // Into (-π, π].
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("FFT size must be a power of two");
  twiddles_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k)
    twiddles_[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
  bit_reverse_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (k & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bit_reverse_[k] = r;
  }
}

void FftPlan::run(std::span<cplx> data, bool inverse) const {
  if (data.size() != n_) throw std::invalid_argument("FFT input size mismatch");
  for (std::size_t k = 0; k < n_; ++k)
    if (k < bit_reverse_[k]) std::swap(data[k], data[bit_reverse_[k]]);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cplx w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        cplx u = data[start + j];
        cplx v = data[start + j + half] * w;
        data[start + j] = u + v;
        data[start + j + half] = u - v;
      }
    }
  }
}

SampledFunction1D fourier_1d(const SampledFunction1D& f, FourierDirection direction) {
  const Grid1D& in = f.grid;
  validate_grid(in);
  const std::size_t n = in.n_points;
  if (!is_power_of_two(n)) throw std::invalid_argument("fourier_1d: grid size must be a power of two");
  const double sign = direction == FourierDirection::forward ? -1.0 : 1.0;
  Grid1D out_grid = Grid1D::centered(n, 2.0 * kPi / (static_cast<double>(n) * in.spacing));

  std::vector<cplx> data(f.values);
  for (std::size_t k = 1; k < n; k += 2) data[k] = -data[k];
  FftPlan plan(n);
  if (direction == FourierDirection::forward)
    plan.forward(data);
  else
    plan.inverse(data);
  const double scale = in.spacing / std::sqrt(2.0 * kPi);
  for (std::size_t m = 0; m < n; ++m)
    data[m] *= scale * std::polar(1.0, sign * in.min * out_grid.point(m));

  SampledFunction1D out(out_grid, std::move(data));
  if (edge_weight(out) > kEdgeTolerance)
    throw NumericError("fourier_1d: grid too coarse to resolve the transform");
  return out;
}

FractionalFourier::FractionalFourier(const Grid1D& grid, double theta)
    : grid_(grid), angle_(reduce_angle(theta)), plan_(grid.n_points) {
  validate_grid(grid_);
  if (!grid_.is_centered())
    throw std::invalid_argument("fractional Fourier transform needs a centered grid");
  const std::size_t n = grid_.n_points;
  const double h = grid_.spacing;
  const double phi_abs = std::abs(angle_);

  if (phi_abs < kAngleEps) {
    mode_ = Mode::identity;
    return;
  }
  if (std::abs(phi_abs - kPi) < kAngleEps) {
    mode_ = Mode::parity;
    return;
  }
  const Grid1D dual = Grid1D::centered(n, 2.0 * kPi / (static_cast<double>(n) * h));
  if (grid_.is_self_dual() && std::abs(phi_abs - kPi / 2) < kAngleEps) {
    mode_ = angle_ > 0 ? Mode::dft : Mode::inverse_dft;
    const double sign = angle_ > 0 ? -1.0 : 1.0;
    dft_post_.resize(n);
    for (std::size_t m = 0; m < n; ++m)
      dft_post_[m] = h / std::sqrt(2.0 * kPi) * std::polar(1.0, sign * grid_.min * dual.point(m));
    return;
  }

  mode_ = Mode::shear;
  double phi = angle_;
  if (phi_abs > kPi / 2) {
    pre_parity_ = true;
    phi -= std::copysign(kPi, phi);
  }
  const double a = std::tan(0.5 * phi);
  const double b = std::sin(phi);
  const double hp = dual.spacing;

  position_chirp_.resize(n);
  alternating_.resize(n);
  momentum_stage_.resize(n);
  final_stage_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double x = grid_.point(k);
    double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    position_chirp_[k] = std::polar(1.0, -0.5 * a * x * x);
    alternating_[k] = sgn;
    double p = dual.point(k);
    momentum_stage_[k] = h / std::sqrt(2.0 * kPi) * std::polar(1.0, -grid_.min * p) *
                         std::polar(1.0, -0.5 * b * p * p) * sgn;
    final_stage_[k] = hp / std::sqrt(2.0 * kPi) * std::polar(1.0, dual.min * x) *
                      position_chirp_[k] * std::polar(1.0, 0.5 * phi);
  }
}

void FractionalFourier::parity(std::span<cplx> data) const {
  // ψ(-x) on the grid (k - n/2)h: index k mirrors to n - k; k = 0 has no mirror.
  const std::size_t n = data.size();
  for (std::size_t k = 1; k < n / 2; ++k) std::swap(data[k], data[n - k]);
  data[0] = 0.0;
}

void FractionalFourier::apply(std::span<cplx> data) const {
  if (data.size() != grid_.n_points) throw std::invalid_argument("fractional Fourier size mismatch");
  const std::size_t n = data.size();
  switch (mode_) {
    case Mode::identity:
      return;
    case Mode::parity:
      parity(data);
      return;
    case Mode::dft:
    case Mode::inverse_dft:
      for (std::size_t k = 1; k < n; k += 2) data[k] = -data[k];
      if (mode_ == Mode::dft)
        plan_.forward(data);
      else
        plan_.inverse(data);
      for (std::size_t m = 0; m < n; ++m) data[m] *= dft_post_[m];
      return;
    case Mode::shear:
      if (pre_parity_) parity(data);
      for (std::size_t k = 0; k < n; ++k) data[k] *= position_chirp_[k] * alternating_[k];
      plan_.forward(data);
      for (std::size_t m = 0; m < n; ++m) data[m] *= momentum_stage_[m];
      plan_.inverse(data);
      for (std::size_t k = 0; k < n; ++k) data[k] *= final_stage_[k];
      return;
  }
}

SampledFunction1D fractional_fourier_1d(const SampledFunction1D& f, double theta) {
  FractionalFourier op(f.grid, theta);
  std::vector<cplx> data(f.values);
  op.apply(data);
  SampledFunction1D out(f.grid, std::move(data));
  if (edge_weight(out) > kEdgeTolerance)
    throw NumericError("fractional_fourier_1d: state wraps around the grid; enlarge it");
  return out;
}

}  // namespace cvw

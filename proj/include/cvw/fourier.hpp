#pragma once

#include <span>
#include <vector>

#include "cvw/grid.hpp"

namespace cvw {

enum class FourierDirection { forward, inverse };

/// Iterative radix-2 FFT with precomputed twiddles and bit reversal.
/// Unnormalized: forward uses e^{-2πi km/n}, inverse e^{+2πi km/n}.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::span<cplx> data) const { run(data, false); }
  void inverse(std::span<cplx> data) const { run(data, true); }

 private:
  void run(std::span<cplx> data, bool inverse) const;

  std::size_t n_;
  std::vector<cplx> twiddles_;
  std::vector<std::size_t> bit_reverse_;
};

bool is_power_of_two(std::size_t n);

/// Continuous Fourier transform of samples, kernel e^{∓ixp}/√(2π).
///
/// The output lives on the centered grid with spacing 2π / (n · h_in). The
/// transform is unitary in L². Requires a power-of-two grid size; throws
/// NumericError when the result has support at the edges of the output grid.
SampledFunction1D fourier_1d(const SampledFunction1D& f,
                             FourierDirection direction = FourierDirection::forward);

/// Precomputed fractional Fourier transform F_θ = e^{-iθ n̂} on a centered grid.
///
/// F_θ maps a wavefunction to the wavefunction of r = cos θ x + sin θ p, so
/// |F_θ ψ|² is the distribution of the rotated quadrature. θ is reduced mod 2π;
/// θ ∈ {0, π} are exact (identity, parity), θ = ±π/2 on a self-dual grid is the
/// plain DFT. Other angles are factored as chirp · momentum-chirp · chirp
/// (three phase-space shears) with |θ| ≤ π/2 after an optional parity step.
class FractionalFourier {
 public:
  FractionalFourier(const Grid1D& grid, double theta);

  const Grid1D& grid() const { return grid_; }
  double reduced_angle() const { return angle_; }

  /// Transforms `data` in place; `data.size()` must equal the grid size.
  void apply(std::span<cplx> data) const;

 private:
  enum class Mode { identity, parity, dft, inverse_dft, shear };

  void parity(std::span<cplx> data) const;

  Grid1D grid_;
  double angle_ = 0.0;
  Mode mode_ = Mode::identity;
  bool pre_parity_ = false;
  FftPlan plan_;
  std::vector<cplx> position_chirp_;  // e^{-i tan(φ/2) x²/2}, global phase folded in
  std::vector<cplx> alternating_;     // (-1)^k
  std::vector<cplx> momentum_stage_;  // forward post-factor · momentum chirp · inverse pre-factor
  std::vector<cplx> final_stage_;     // inverse post-factor · position chirp
  std::vector<cplx> dft_post_;        // post-factor for the direct DFT modes
};

/// One-shot fractional Fourier transform; output on the input grid.
SampledFunction1D fractional_fourier_1d(const SampledFunction1D& f, double theta);

}  // namespace cvw

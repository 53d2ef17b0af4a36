#include "cvw/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cvw/fourier.hpp"
#include "cvw/kernels.hpp"
#include "cvw/special_functions.hpp"

namespace cvw {

namespace {

constexpr double kTruncationTolerance = 1e-8;
constexpr double kWrapTolerance = 1e-6;

/// Mass fraction in the outer 1/32 band along either axis.
double edge_fraction_2d(std::span<const double> w, std::size_t n1, std::size_t n2) {
  const std::size_t b1 = std::max<std::size_t>(1, n1 / 32);
  const std::size_t b2 = std::max<std::size_t>(1, n2 / 32);
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    bool row_edge = i < b1 || i + b1 >= n1;
    for (std::size_t j = 0; j < n2; ++j) {
      double v = w[i * n2 + j];
      total += v;
      if (row_edge || j < b2 || j + b2 >= n2) edge += v;
    }
  }
  return total > 0 ? edge / total : 0.0;
}

void normalize_pure(PureGridState& s) {
  double norm = s.norm_squared();
  if (!(norm > 0) || !std::isfinite(norm)) throw NumericError("state has zero or non-finite norm");
  const double scale = 1.0 / std::sqrt(norm);
  for (cplx& a : s.amplitudes) a *= scale;
  s.diagnostics.renormalization = std::abs(1.0 - norm);
  std::vector<double> w = kernels::parallel::squared_modulus(s.amplitudes);
  double edge = edge_fraction_2d(w, s.grid1.n_points, s.grid2.n_points);
  if (edge > kTruncationTolerance) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "grid truncation: %.3g of the norm sits at the grid edge", edge);
    s.diagnostics.warnings.emplace_back(buf);
  }
}

/// ⟨q|ν⟩ = π^{-1/4} exp(-(q - √2 Re ν)²/2 + i√2 Im ν q - i Re ν Im ν).
cplx coherent_amplitude(cplx nu, double q) {
  const double re = nu.real();
  const double im = nu.imag();
  const double d = q - std::sqrt(2.0) * re;
  return std::pow(kPi, -0.25) * std::exp(-0.5 * d * d) *
         std::polar(1.0, std::sqrt(2.0) * im * q - re * im);
}

SampledFunction1D gaussian_wavefunction(double variance, const Grid1D& grid) {
  std::vector<cplx> v(grid.n_points);
  const double pref = std::pow(2.0 * kPi * variance, -0.25);
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    double x = grid.point(k);
    v[k] = pref * std::exp(-x * x / (4.0 * variance));
  }
  return SampledFunction1D(grid, std::move(v));
}

}  // namespace

// ------------------------------------------------------------ parameters

HermiteGaussParams HermiteGaussParams::from_ratio(double ratio) {
  if (!(ratio > 0) || !std::isfinite(ratio)) throw std::invalid_argument("ratio must be positive");
  return {1.0 / std::sqrt(ratio), std::sqrt(ratio)};
}

void HermiteGaussParams::validate() const {
  if (!(sigma_plus > 0) || !(sigma_minus > 0) || !std::isfinite(sigma_plus) || !std::isfinite(sigma_minus))
    throw std::invalid_argument("Hermite-Gauss widths must be positive and finite");
}

void NoonParams::validate() const {
  if (n_photons < 1 || n_photons > max_photons)
    throw std::invalid_argument("NOON photon number out of range");
}

void CatParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("cat dephasing p must lie in [0, 1]");
  if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag()))
    throw std::invalid_argument("cat amplitude must be finite");
  if (std::abs(nu) == 0.0 && p == 0.0) throw std::invalid_argument("cat state with nu = 0, p = 0 is undefined");
}

double CatParams::normalization() const {
  return 1.0 / (2.0 - 2.0 * (1.0 - p) * std::exp(-4.0 * std::norm(nu)));
}

QuadratureAngles QuadratureAngles::make(double theta1, double theta2) {
  auto wrap = [](double t) {
    double r = std::fmod(t, 2.0 * kPi);
    if (r < 0) r += 2.0 * kPi;
    if (r >= 2.0 * kPi) r = 0.0;
    return r;
  };
  return {wrap(theta1), wrap(theta2)};
}

QuadratureAngles QuadratureAngles::conjugate() const {
  return make(theta1 + kPi / 2, theta2 + kPi / 2);
}

void Diagnostics::merge(const Diagnostics& other) {
  renormalization = std::max(renormalization, other.renormalization);
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

double PureGridState::norm_squared() const {
  double s = 0.0;
  for (const cplx& a : amplitudes) s += std::norm(a);
  return s * grid1.spacing * grid2.spacing;
}

double JointDensity2D::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid1.spacing * grid2.spacing;
}

JointDensity2D JointDensity2D::normalized(Grid1D g1, Grid1D g2, std::vector<double> v,
                                          Diagnostics diagnostics) {
  validate_grid(g1);
  validate_grid(g2);
  if (v.size() != g1.n_points * g2.n_points) throw std::invalid_argument("joint density shape mismatch");
  for (double& x : v) {
    if (!std::isfinite(x)) throw NumericError("joint density contains non-finite values");
    if (x < 0) {
      if (x < -1e-12) throw NumericError("joint density contains negative values");
      x = 0.0;
    }
  }
  JointDensity2D d{g1, g2, std::move(v), std::move(diagnostics)};
  double m = d.mass();
  if (!(m > 0)) throw NumericError("joint density has zero mass");
  for (double& x : d.values) x /= m;
  d.diagnostics.renormalization = std::max(d.diagnostics.renormalization, std::abs(1.0 - m));
  return d;
}

// -------------------------------------------------------------- builders

PureGridState build_product(const SampledFunction1D& mode1, const SampledFunction1D& mode2) {
  const std::size_t n1 = mode1.grid.n_points;
  const std::size_t n2 = mode2.grid.n_points;
  PureGridState s{mode1.grid, mode2.grid, std::vector<cplx>(n1 * n2), {}};
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) s.amplitudes[i * n2 + j] = mode1.values[i] * mode2.values[j];
  normalize_pure(s);
  return s;
}

PureGridState build_hermite_gauss(const HermiteGaussParams& params, const Grid1D& grid) {
  params.validate();
  validate_grid(grid);
  const double sp = params.sigma_plus;
  const double sm = params.sigma_minus;
  const std::size_t n = grid.n_points;
  const double pref = 1.0 / std::sqrt(kPi * sm * sp * sp * sp);
  PureGridState s{grid, grid, std::vector<cplx>(n * n), {}};
  const auto q = grid.points();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double u = q[i] + q[j];
      double v = q[i] - q[j];
      s.amplitudes[i * n + j] = pref * u * std::exp(-u * u / (4 * sp * sp) - v * v / (4 * sm * sm));
    }
  }
  normalize_pure(s);
  return s;
}

PureGridState build_noon(const NoonParams& params, const Grid1D& grid) {
  params.validate();
  const auto fock_n = fock_wavefunction(params.n_photons, grid);
  const auto fock_0 = fock_wavefunction(0, grid);
  const std::size_t n = grid.n_points;
  PureGridState s{grid, grid, std::vector<cplx>(n * n), {}};
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.amplitudes[i * n + j] = r * (fock_n.values[i] * fock_0.values[j] + fock_0.values[i] * fock_n.values[j]);
  normalize_pure(s);
  return s;
}

PureGridState build_vacuum(const Grid1D& grid) {
  auto g = gaussian_wavefunction(0.5, grid);
  return build_product(g, g);
}

PureGridState build_squeezed_product(const SqueezedProductParams& params, const Grid1D& grid) {
  return build_product(gaussian_wavefunction(0.5 * std::exp(-2 * params.r1), grid),
                       gaussian_wavefunction(0.5 * std::exp(-2 * params.r2), grid));
}

PureGridState build_two_mode_squeezed(const TwoModeSqueezedParams& params, const Grid1D& grid) {
  validate_grid(grid);
  const std::size_t n = grid.n_points;
  const double squeezed = std::exp(-2 * params.r);  // Var(x1 - x2)
  const double stretched = std::exp(2 * params.r);  // Var(x1 + x2)
  PureGridState s{grid, grid, std::vector<cplx>(n * n), {}};
  const auto q = grid.points();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double u = q[i] + q[j];
      double v = q[i] - q[j];
      s.amplitudes[i * n + j] = std::exp(-u * u / (4 * stretched) - v * v / (4 * squeezed));
    }
  normalize_pure(s);
  return s;
}

PureGridState build_pure_cat(cplx nu, const Grid1D& grid) {
  validate_grid(grid);
  const std::size_t n = grid.n_points;
  std::vector<cplx> a(n);
  std::vector<cplx> b(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = coherent_amplitude(nu, grid.point(k));
    b[k] = coherent_amplitude(-nu, grid.point(k));
  }
  PureGridState s{grid, grid, std::vector<cplx>(n * n), {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.amplitudes[i * n + j] = a[i] * a[j] - b[i] * b[j];
  normalize_pure(s);
  return s;
}

JointDensity2D joint_density_pure(const PureGridState& state, const QuadratureAngles& angles) {
  const std::size_t n1 = state.grid1.n_points;
  const std::size_t n2 = state.grid2.n_points;
  std::vector<cplx> psi = state.amplitudes;
  if (angles.theta2 != 0.0) {
    FractionalFourier op(state.grid2, angles.theta2);
    kernels::parallel::transform_rows(psi, n1, n2, op);
  }
  if (angles.theta1 != 0.0) {
    FractionalFourier op(state.grid1, angles.theta1);
    kernels::parallel::transform_columns(psi, n1, n2, op);
  }
  std::vector<double> w = kernels::parallel::squared_modulus(psi);
  if ((angles.theta1 != 0.0 || angles.theta2 != 0.0) && edge_fraction_2d(w, n1, n2) > kWrapTolerance)
    throw NumericError("rotated state reaches the grid edge; enlarge the grid");
  return JointDensity2D::normalized(state.grid1, state.grid2, std::move(w), state.diagnostics);
}

JointDensity2D cat_joint_density(const CatParams& params, const QuadratureAngles& angles, const Grid1D& grid) {
  params.validate();
  validate_grid(grid);
  const std::size_t n = grid.n_points;
  const cplx nu1 = params.nu * std::polar(1.0, -angles.theta1);
  const cplx nu2 = params.nu * std::polar(1.0, -angles.theta2);
  std::vector<double> a1(n), a2(n), b1(n), b2(n);
  std::vector<cplx> c1(n), c2(n);
  // On centered grids sample at (k - n/2) h so that q and -q are exact mirrors.
  const bool centered = grid.is_centered();
  for (std::size_t k = 0; k < n; ++k) {
    const double q = centered ? (static_cast<double>(k) - static_cast<double>(n / 2)) * grid.spacing : grid.point(k);
    cplx pa1 = coherent_amplitude(nu1, q);
    cplx pb1 = coherent_amplitude(-nu1, q);
    cplx pa2 = coherent_amplitude(nu2, q);
    cplx pb2 = coherent_amplitude(-nu2, q);
    a1[k] = std::norm(pa1);
    b1[k] = std::norm(pb1);
    a2[k] = std::norm(pa2);
    b2[k] = std::norm(pb2);
    c1[k] = pa1 * std::conj(pb1);
    c2[k] = pa2 * std::conj(pb2);
  }
  const double norm = params.normalization();
  const double coherence = 2.0 * (1.0 - params.p);
  std::vector<double> v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      v[i * n + j] = norm * (a1[i] * a2[j] + b1[i] * b2[j] - coherence * (c1[i] * c2[j]).real());
  return JointDensity2D::normalized(grid, grid, std::move(v));
}

JointDensity2D cat_joint_density(const CatParams& params, ConjugatePair pair, const Grid1D& grid) {
  return pair == ConjugatePair::position ? cat_joint_density(params, QuadratureAngles{}, grid)
                                         : cat_joint_density(params, QuadratureAngles{kPi / 2, kPi / 2}, grid);
}

JointDensity2D thermal_joint_density(const ThermalParams& params, const Grid1D& grid) {
  if (!(params.n1 >= 0) || !(params.n2 >= 0)) throw std::invalid_argument("thermal occupation must be >= 0");
  validate_grid(grid);
  const std::size_t n = grid.n_points;
  const double v1 = params.n1 + 0.5;
  const double v2 = params.n2 + 0.5;
  std::vector<double> g1(n), g2(n), v(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    double q = grid.point(k);
    g1[k] = std::exp(-q * q / (2 * v1)) / std::sqrt(2 * kPi * v1);
    g2[k] = std::exp(-q * q / (2 * v2)) / std::sqrt(2 * kPi * v2);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v[i * n + j] = g1[i] * g2[j];
  return JointDensity2D::normalized(grid, grid, std::move(v));
}

// ----------------------------------------------------------- descriptors

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

bool StateDescriptor::is_pure() const {
  return std::visit(overloaded{[](const ThermalParams& t) { return t.n1 == 0.0 && t.n2 == 0.0; },
                               [](const CatParams& c) { return c.p == 0.0; },
                               [](const auto&) { return true; }},
                    params);
}

std::string StateDescriptor::family() const {
  return std::visit(overloaded{[](const VacuumParams&) { return std::string("vacuum"); },
                               [](const SqueezedProductParams&) { return std::string("squeezed"); },
                               [](const ThermalParams&) { return std::string("thermal"); },
                               [](const TwoModeSqueezedParams&) { return std::string("tmsv"); },
                               [](const HermiteGaussParams&) { return std::string("hermite-gauss"); },
                               [](const NoonParams&) { return std::string("noon"); },
                               [](const CatParams&) { return std::string("cat"); }},
                    params);
}

std::string StateDescriptor::label() const {
  char buf[160];
  std::visit(overloaded{[&](const VacuumParams&) { std::snprintf(buf, sizeof buf, "vacuum"); },
                        [&](const SqueezedProductParams& s) {
                          std::snprintf(buf, sizeof buf, "squeezed(r1=%g,r2=%g)", s.r1, s.r2);
                        },
                        [&](const ThermalParams& t) { std::snprintf(buf, sizeof buf, "thermal(n1=%g,n2=%g)", t.n1, t.n2); },
                        [&](const TwoModeSqueezedParams& t) { std::snprintf(buf, sizeof buf, "tmsv(r=%g)", t.r); },
                        [&](const HermiteGaussParams& h) {
                          std::snprintf(buf, sizeof buf, "hermite-gauss(s+=%g,s-=%g)", h.sigma_plus, h.sigma_minus);
                        },
                        [&](const NoonParams& p) { std::snprintf(buf, sizeof buf, "noon(N=%d)", p.n_photons); },
                        [&](const CatParams& c) {
                          std::snprintf(buf, sizeof buf, "cat(nu=%g%+gi,p=%g)", c.nu.real(), c.nu.imag(), c.p);
                        }},
             params);
  return buf;
}

double StateDescriptor::required_half_width() const {
  return std::visit(
      overloaded{[](const VacuumParams&) { return 8.0; },
                 [](const SqueezedProductParams& s) {
                   return 8.0 * std::exp(std::max(std::abs(s.r1), std::abs(s.r2))) / std::sqrt(2.0);
                 },
                 [](const ThermalParams& t) { return 8.0 * std::sqrt(std::max(t.n1, t.n2) + 0.5); },
                 [](const TwoModeSqueezedParams& t) { return 8.0 * std::exp(std::abs(t.r)) / std::sqrt(2.0); },
                 [](const HermiteGaussParams& h) {
                   return 8.0 * std::max({h.sigma_plus, h.sigma_minus, 1.0 / h.sigma_plus, 1.0 / h.sigma_minus});
                 },
                 [](const NoonParams& p) { return std::sqrt(2.0 * p.n_photons) + 5.0; },
                 [](const CatParams& c) { return 8.0 + 2.0 * std::sqrt(2.0) * std::abs(c.nu); }},
      params);
}

Grid1D GridSettings::grid_for(const StateDescriptor& state) const {
  if (points < 8) throw std::invalid_argument("grid needs at least 8 points");
  if (half_width > 0) return Grid1D::centered(points, half_width / static_cast<double>(points / 2));
  const double need = std::max(8.0, state.required_half_width());
  if (std::holds_alternative<CatParams>(state.params) || std::holds_alternative<ThermalParams>(state.params))
    return Grid1D::centered(points, need / static_cast<double>(points / 2));
  return Grid1D::self_dual(points);
}

PreparedState::PreparedState(StateDescriptor descriptor, const GridSettings& settings)
    : descriptor_(std::move(descriptor)), grid_(settings.grid_for(descriptor_)) {
  const double need = descriptor_.required_half_width();
  if (-grid_.min < need) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "grid half-width %.3g is below the recommended %.3g", -grid_.min, need);
    diagnostics_.warnings.emplace_back(buf);
  }
  std::visit(overloaded{[&](const VacuumParams&) { pure_ = build_vacuum(grid_); },
                        [&](const SqueezedProductParams& s) { pure_ = build_squeezed_product(s, grid_); },
                        [&](const ThermalParams& t) {
                          if (t.n1 < 0 || t.n2 < 0) throw std::invalid_argument("thermal occupation must be >= 0");
                        },
                        [&](const TwoModeSqueezedParams& t) { pure_ = build_two_mode_squeezed(t, grid_); },
                        [&](const HermiteGaussParams& h) { pure_ = build_hermite_gauss(h, grid_); },
                        [&](const NoonParams& p) { pure_ = build_noon(p, grid_); },
                        [&](const CatParams& c) { c.validate(); }},
             descriptor_.params);
  diagnostics_.merge(pure_.diagnostics);
}

JointDensity2D PreparedState::joint(const QuadratureAngles& angles) const {
  JointDensity2D out = std::visit(
      overloaded{[&](const ThermalParams& t) { return thermal_joint_density(t, grid_); },
                 [&](const CatParams& c) { return cat_joint_density(c, angles, grid_); },
                 [&](const auto&) { return joint_density_pure(pure_, angles); }},
      descriptor_.params);
  out.diagnostics.merge(diagnostics_);
  return out;
}

}  // namespace cvw

#include <doctest.h>

#include <cmath>

#include "cvw/convolve.hpp"
#include "cvw/entropies.hpp"
#include "cvw/marginals.hpp"
#include "support.hpp"

using namespace cvw;

namespace {

JointDensity2D correlated_gaussian(const Grid1D& g, double v1, double v2, double c, double m1 = 0.0,
                                   double m2 = 0.0) {
  const double det = v1 * v2 - c * c;
  std::vector<double> v(g.n_points * g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i)
    for (std::size_t j = 0; j < g.n_points; ++j) {
      const double x = g.point(i) - m1, y = g.point(j) - m2;
      v[i * g.n_points + j] = std::exp(-(v2 * x * x - 2 * c * x * y + v1 * y * y) / (2 * det));
    }
  return JointDensity2D::normalized(g, g, std::move(v));
}

void check_parallelogram(const MarginalSet& m) {
  CHECK(std::abs(variance(m.Rplus) + variance(m.Rminus) - 2 * (variance(m.R1) + variance(m.R2))) < 1e-4);
  CHECK(std::abs(variance(m.Splus) + variance(m.Sminus) - 2 * (variance(m.S1) + variance(m.S2))) < 1e-4);
}

}  // namespace

TEST_CASE("variance and mean oracles") {
  const Grid1D g = Grid1D::from_range(-15, 15, 3001);
  CHECK(variance(testing::gaussian_density(g, 0, 1)) == doctest::Approx(1.0).epsilon(1e-6));
  const auto shifted = testing::gaussian_density(g, 3, 2);
  CHECK(variance(shifted) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(mean(shifted) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("global marginals of the two-mode vacuum") {
  const auto m = testing::marginals_of(StateDescriptor{VacuumParams{}});
  for (const SampledDensity1D* d : {&m.Rplus, &m.Rminus, &m.Splus, &m.Sminus}) {
    CHECK(std::abs(d->mass() - 1.0) < 1e-6);
    CHECK(std::abs(variance(*d) - 1.0) < 1e-5);
    double dev = 0.0;
    for (std::size_t k = 0; k < d->grid.n_points; ++k)
      dev = std::max(dev, std::abs(d->values[k] - testing::normal_pdf(d->grid.point(k), 0.0, 1.0)));
    CHECK(dev < 1e-6);
  }
  for (const SampledDensity1D* d : {&m.R1, &m.R2, &m.S1, &m.S2}) {
    CHECK(std::abs(d->mass() - 1.0) < 1e-6);
    CHECK(std::abs(variance(*d) - 0.5) < 1e-6);
  }
  CHECK(m.max_renormalization() < 1e-6);
}

TEST_CASE("product states: global marginals are convolutions of subsystem marginals") {
  for (const StateDescriptor& d : {StateDescriptor{SqueezedProductParams{0.4, -0.7}},
                                    StateDescriptor{ThermalParams{0.5, 1.5}}}) {
    const auto m = testing::marginals_of(d, {1024, 0.0});
    const auto plus = convolve(m.R1, m.R2);
    const auto minus = convolve(m.R1, reflect(m.R2));
    CHECK(plus.grid.min == doctest::Approx(m.Rplus.grid.min));
    CHECK(minus.grid.min == doctest::Approx(m.Rminus.grid.min));
    CHECK(testing::max_abs_diff(plus.values, m.Rplus.values) < 1e-6);
    CHECK(testing::max_abs_diff(minus.values, m.Rminus.values) < 1e-6);
    CHECK(testing::max_abs_diff(convolve(m.S1, m.S2).values, m.Splus.values) < 1e-6);
  }
}

TEST_CASE("mirror identity: flipping the second axis swaps R+ and R-") {
  const Grid1D g = Grid1D::from_range(-8, 8, 321);
  const auto joint = correlated_gaussian(g, 1.3, 0.7, 0.5, 0.4, -0.9);
  std::vector<double> flipped(joint.values.size());
  const std::size_t n = g.n_points;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flipped[i * n + j] = joint.values[i * n + (n - 1 - j)];
  const auto mirrored = JointDensity2D::normalized(g, g, flipped);
  const auto a = joint_marginals(joint);
  const auto b = joint_marginals(mirrored);
  CHECK(testing::max_abs_diff(a.sum.values, b.difference.values) < 1e-14);
  CHECK(testing::max_abs_diff(a.difference.values, b.sum.values) < 1e-14);
  CHECK(a.sum.grid.min == doctest::Approx(b.difference.grid.min));
}

TEST_CASE("parallelogram variance identity across the catalog") {
  const GridSettings grid{1024, 0.0};
  for (const auto& d : testing::separable_catalog()) {
    CAPTURE(d.label());
    check_parallelogram(testing::marginals_of(d, grid));
  }
  for (const StateDescriptor& d :
       {StateDescriptor{HermiteGaussParams::from_ratio(0.5)}, StateDescriptor{NoonParams{3, 10}},
        StateDescriptor{TwoModeSqueezedParams{0.5}}, StateDescriptor{CatParams{{1.5, 0.0}, 0.2}}}) {
    CAPTURE(d.label());
    check_parallelogram(testing::marginals_of(d, grid));
  }
}

TEST_CASE("discretize: uniform, normalization, bin anchoring") {
  const Grid1D unit = Grid1D::from_range(0.0, 1.0, 101);
  const auto u = discretize(testing::uniform_density(unit, 0.0, 1.0), 0.25);
  REQUIRE(u.probabilities.size() == 4);
  for (double p : u.probabilities) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(u.offset == doctest::Approx(0.0));

  const Grid1D g = Grid1D::centered(1024, 0.03);
  const auto n01 = testing::gaussian_density(g, 0.3, 1.0);
  for (double offset : {0.0, 0.037, -0.41}) {
    const auto dd = discretize(n01, 0.2, offset);
    double s = 0.0;
    for (double p : dd.probabilities) s += p;
    CHECK(std::abs(s - 1.0) < 1e-9);
    // Stored offset is a bin edge of the requested lattice.
    const double k = (dd.offset - offset) / 0.2;
    CHECK(std::abs(k - std::round(k)) < 1e-9);
    CHECK_NOTHROW(dd.validate());
  }
  // Probability of a bin equals the Gaussian CDF difference.
  const auto dd = discretize(n01, 0.5, 0.0);
  for (std::size_t k = 0; k < dd.probabilities.size(); ++k) {
    const double a = dd.offset + 0.5 * static_cast<double>(k), b = a + 0.5;
    const double exact = 0.5 * (std::erf((b - 0.3) / std::sqrt(2.0)) - std::erf((a - 0.3) / std::sqrt(2.0)));
    CHECK(std::abs(dd.probabilities[k] - exact) < 1e-7);
  }
  CHECK_THROWS(discretize(n01, 0.01));
  CHECK_THROWS(discretize(n01, -1.0));
}

TEST_CASE("discretize: Gaussian discrete entropy plus ln delta approaches the continuous entropy") {
  const Grid1D g = Grid1D::centered(2048, 0.02);
  const auto n01 = testing::gaussian_density(g, 0.0, 1.0);
  for (double alpha : {0.6, 1.0, 2.0}) {
    const auto dd = discretize(n01, 0.1);
    CHECK(std::abs(renyi_discrete(dd, alpha) + std::log(0.1) - renyi_continuous(n01, alpha)) < 1e-3);
  }
}

TEST_CASE("covariance from quadratures: vacuum, Hermite-Gauss, dephased cat, two-mode squeezing") {
  const auto vac = covariance_from_quadratures(PreparedState(StateDescriptor{VacuumParams{}}, {}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(vac(i, j) - (i == j ? 0.5 : 0.0)) < 1e-5);
  CHECK(vac.is_symmetric());
  CHECK(vac.consistency_error < 1e-6);

  const auto hg = covariance_from_quadratures(PreparedState(StateDescriptor{HermiteGaussParams{1.0, 1.0}}, {}));
  for (int i : {0, 2})
    for (int j : {1, 3}) CHECK(std::abs(hg(i, j)) < 1e-5);

  // Equal-weight mixture of coherent pairs at ±(√2, √2): Var x = 1/2 + 2, Cov(x1, x2) = 2.
  const auto cat = covariance_from_quadratures(PreparedState(StateDescriptor{CatParams{{1.0, 0.0}, 1.0}}, {}));
  const double expected[4][4] = {{2.5, 0, 2, 0}, {0, 0.5, 0, 0}, {2, 0, 2.5, 0}, {0, 0, 0, 0.5}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(cat(i, j) - expected[i][j]) < 1e-5);

  const double r = 0.5;
  const auto tm = covariance_from_quadratures(PreparedState(StateDescriptor{TwoModeSqueezedParams{r}}, {}));
  const double ch = 0.5 * std::cosh(2 * r), sh = 0.5 * std::sinh(2 * r);
  const double tmsv[4][4] = {{ch, 0, sh, 0}, {0, ch, 0, -sh}, {sh, 0, ch, 0}, {0, -sh, 0, ch}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(tm(i, j) - tmsv[i][j]) < 1e-5);
}

TEST_CASE("covariance: x-p correlations from the diagonal joint") {
  // A rotated squeezed product has a nonzero symmetrized x-p covariance.
  const Grid1D g = Grid1D::self_dual(1024);
  const auto s = build_squeezed_product({0.5, 0.0}, g);
  const double phi = 0.3;
  // Mode 1 rotated by phi: Var x = ½(e^{-2r}cos² + e^{2r}sin²), |Cov(x, p)| = ½ sin cos (e^{2r} - e^{-2r}).
  const auto rotate = [&](double t1, double t2) { return joint_density_pure(s, {t1 + phi, t2}); };
  const auto cm = covariance_from_joints(rotate(0, 0), rotate(kPi / 2, kPi / 2), rotate(kPi / 4, kPi / 4),
                                         rotate(0, kPi / 2));
  const double a = std::exp(-1.0), b = std::exp(1.0);
  CHECK(cm(0, 0) == doctest::Approx(0.5 * (a * std::cos(phi) * std::cos(phi) + b * std::sin(phi) * std::sin(phi))).epsilon(1e-6));
  CHECK(std::abs(std::abs(cm(0, 1)) - 0.5 * std::sin(phi) * std::cos(phi) * (b - a)) < 1e-5);
  // Determinant of a pure single-mode block is 1/4.
  CHECK(cm(0, 0) * cm(1, 1) - cm(0, 1) * cm(0, 1) == doctest::Approx(0.25).epsilon(1e-5));
}

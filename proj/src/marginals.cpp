#include "cvw/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cvw/kernels.hpp"
#include "cvw/quadrature.hpp"

namespace cvw {

namespace {

void check_joint(const JointDensity2D& j) {
  if (!j.grid1.same_spacing(j.grid2))
    throw std::invalid_argument("joint density axes must share a grid spacing");
  if (j.values.size() != j.grid1.n_points * j.grid2.n_points)
    throw std::invalid_argument("joint density shape mismatch");
}

SampledDensity1D scaled(const Grid1D& g, std::vector<double> v, double h) {
  for (double& x : v) x *= h;
  return SampledDensity1D::normalized(g, std::move(v));
}

struct Moments2D {
  double mean1 = 0, mean2 = 0, var1 = 0, var2 = 0, cov = 0;
};

Moments2D moments(const JointDensity2D& j) {
  const std::size_t n1 = j.grid1.n_points;
  const std::size_t n2 = j.grid2.n_points;
  double m0 = 0, m1 = 0, m2 = 0, m11 = 0, m22 = 0, m12 = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    const double q1 = j.grid1.point(i);
    double row = 0, row_q2 = 0, row_q22 = 0;
    for (std::size_t k = 0; k < n2; ++k) {
      const double w = j.values[i * n2 + k];
      const double q2 = j.grid2.point(k);
      row += w;
      row_q2 += w * q2;
      row_q22 += w * q2 * q2;
    }
    m0 += row;
    m1 += row * q1;
    m11 += row * q1 * q1;
    m2 += row_q2;
    m22 += row_q22;
    m12 += q1 * row_q2;
  }
  Moments2D m;
  m.mean1 = m1 / m0;
  m.mean2 = m2 / m0;
  m.var1 = m11 / m0 - m.mean1 * m.mean1;
  m.var2 = m22 / m0 - m.mean2 * m.mean2;
  m.cov = m12 / m0 - m.mean1 * m.mean2;
  return m;
}

}  // namespace

double MarginalSet::max_renormalization() const {
  double r = diagnostics.renormalization;
  for (const SampledDensity1D* d : {&R1, &R2, &S1, &S2, &Rplus, &Rminus, &Splus, &Sminus})
    r = std::max(r, d->renormalization);
  return r;
}

JointMarginals joint_marginals(const JointDensity2D& joint) {
  check_joint(joint);
  const Grid1D& g1 = joint.grid1;
  const Grid1D& g2 = joint.grid2;
  const std::size_t n1 = g1.n_points;
  const std::size_t n2 = g2.n_points;
  const double h = g1.spacing;
  const std::size_t n = n1 + n2 - 1;
  JointMarginals out;
  out.first = scaled(g1, kernels::parallel::row_sums(joint.values, n1, n2), g2.spacing);
  out.second = scaled(g2, kernels::parallel::column_sums(joint.values, n1, n2), g1.spacing);
  Grid1D sum_grid{g1.min + g2.min, g1.min + g2.min + static_cast<double>(n - 1) * h, n, h};
  Grid1D diff_grid{g1.min - g2.max, g1.min - g2.max + static_cast<double>(n - 1) * h, n, h};
  out.sum = scaled(sum_grid, kernels::parallel::anti_diagonal_sums(joint.values, n1, n2), h);
  out.difference = scaled(diff_grid, kernels::parallel::diagonal_sums(joint.values, n1, n2), h);
  return out;
}

MarginalSet global_marginals(const JointDensity2D& jointR, const JointDensity2D& jointS) {
  JointMarginals r = joint_marginals(jointR);
  JointMarginals s = joint_marginals(jointS);
  MarginalSet m{std::move(r.first),  std::move(r.second), std::move(s.first), std::move(s.second),
                std::move(r.sum),    std::move(r.difference), std::move(s.sum), std::move(s.difference),
                {}};
  m.diagnostics.merge(jointR.diagnostics);
  m.diagnostics.merge(jointS.diagnostics);
  return m;
}

double mean(const SampledDensity1D& d) { return d.mean(); }

double variance(const SampledDensity1D& d) {
  const double mu = d.mean();
  std::vector<double> w(d.values.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double dq = d.grid.point(k) - mu;
    w[k] = dq * dq * d.values[k];
  }
  return integrate(d.grid, w) / d.mass();
}

void DiscreteDistribution::validate() const {
  if (!(bin_width > 0) || !std::isfinite(bin_width)) throw std::invalid_argument("bin width must be positive");
  if (probabilities.empty()) throw std::invalid_argument("discrete distribution is empty");
  double s = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0) || !std::isfinite(p)) throw std::invalid_argument("probabilities must be finite and >= 0");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-9) throw std::invalid_argument("probabilities do not sum to 1");
}

DiscreteDistribution discretize(const SampledDensity1D& d, double bin_width, double offset) {
  if (!(bin_width > 0) || !std::isfinite(bin_width)) throw std::invalid_argument("bin width must be positive");
  if (!std::isfinite(offset)) throw std::invalid_argument("bin offset must be finite");
  const Grid1D& g = d.grid;
  const double h = g.spacing;
  if (bin_width < h * (1.0 - 1e-12)) throw std::invalid_argument("bin width is smaller than the grid spacing");
  const std::size_t n = g.n_points;
  if (n < 4) throw std::invalid_argument("discretize needs at least 4 grid points");
  const auto& f = d.values;

  // ∫_c^{c+t} of the cubic through the four samples nearest cell c, with the
  // stencil shifted inward at the grid ends.
  auto partial = [&](std::size_t c, double t) {
    const std::size_t s = std::min(c > 0 ? c - 1 : 0, n - 4);
    const double m = static_cast<double>(s) - static_cast<double>(c);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      // Basis polynomial l_i(u) = Π_{j≠i} (u - x_j)/(x_i - x_j) expanded as a cubic.
      double coef[4] = {1.0, 0.0, 0.0, 0.0};
      double denom = 1.0;
      const double xi = m + i;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        const double xj = m + j;
        for (int k = 3; k > 0; --k) coef[k] = coef[k - 1] - xj * coef[k];
        coef[0] = -xj * coef[0];
        denom *= xi - xj;
      }
      double integral = 0.0, tp = t;
      for (int k = 0; k < 4; ++k, tp *= t) integral += coef[k] * tp / (k + 1);
      acc += f[s + static_cast<std::size_t>(i)] * integral / denom;
    }
    return h * acc;
  };

  std::vector<double> node(n, 0.0);
  for (std::size_t c = 0; c + 1 < n; ++c) node[c + 1] = node[c] + partial(c, 1.0);
  auto cumulative = [&](double x) {
    if (x <= g.min) return 0.0;
    if (x >= g.point(n - 1)) return node[n - 1];
    double u = (x - g.min) / h;
    auto c = static_cast<std::size_t>(std::floor(u));
    if (c >= n - 1) c = n - 2;
    return node[c] + partial(c, u - static_cast<double>(c));
  };

  const auto first = static_cast<long long>(std::floor((g.min - offset) / bin_width));
  const auto last = static_cast<long long>(std::ceil((g.point(n - 1) - offset) / bin_width));
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(last - first));
  double prev = cumulative(offset + static_cast<double>(first) * bin_width);
  for (long long k = first; k < last; ++k) {
    double next = cumulative(offset + static_cast<double>(k + 1) * bin_width);
    p.push_back(std::max(0.0, next - prev));
    prev = next;
  }
  std::size_t lo = 0;
  std::size_t hi = p.size();
  while (lo < hi && p[lo] == 0.0) ++lo;
  while (hi > lo && p[hi - 1] == 0.0) --hi;
  if (lo == hi) throw NumericError("discretize: density has no mass");
  DiscreteDistribution out;
  out.bin_width = bin_width;
  out.offset = offset + static_cast<double>(first + static_cast<long long>(lo)) * bin_width;
  out.probabilities.assign(p.begin() + static_cast<std::ptrdiff_t>(lo), p.begin() + static_cast<std::ptrdiff_t>(hi));
  double s = 0.0;
  for (double x : out.probabilities) s += x;
  for (double& x : out.probabilities) x /= s;
  return out;
}

bool CovarianceMatrix4::is_symmetric(double tol) const {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(v[i][j] - v[j][i]) > tol) return false;
  return true;
}

CovarianceMatrix4 covariance_from_joints(const JointDensity2D& xx, const JointDensity2D& pp,
                                         const JointDensity2D& diagonal, const JointDensity2D& xp) {
  for (const JointDensity2D* j : {&xx, &pp, &diagonal, &xp}) check_joint(*j);
  const Moments2D a = moments(xx);
  const Moments2D b = moments(pp);
  const Moments2D c = moments(diagonal);
  const Moments2D d = moments(xp);

  enum { X1 = 0, P1 = 1, X2 = 2, P2 = 3 };
  CovarianceMatrix4 cm;
  auto set = [&](int i, int j, double value) { cm.v[i][j] = cm.v[j][i] = value; };
  set(X1, X1, a.var1);
  set(X2, X2, a.var2);
  set(X1, X2, a.cov);
  set(P1, P1, b.var1);
  set(P2, P2, b.var2);
  set(P1, P2, b.cov);
  set(X1, P2, d.cov);
  set(X1, P1, c.var1 - 0.5 * (a.var1 + b.var1));
  set(X2, P2, c.var2 - 0.5 * (a.var2 + b.var2));
  // Cov(r1, r2) at π/4 = (Cov x1x2 + Cov x1p2 + Cov p1x2 + Cov p1p2) / 2.
  set(P1, X2, 2.0 * c.cov - a.cov - d.cov - b.cov);

  cm.consistency_error = std::max(std::abs(a.var1 - d.var1), std::abs(b.var2 - d.var2));
  for (const JointDensity2D* j : {&xx, &pp, &diagonal, &xp}) cm.diagnostics.merge(j->diagnostics);
  if (cm.consistency_error > 1e-3) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "covariance: angle-resolved densities disagree by %.3g", cm.consistency_error);
    cm.diagnostics.warnings.emplace_back(buf);
  }
  return cm;
}

CovarianceMatrix4 covariance_from_quadratures(const PreparedState& state) {
  return covariance_from_joints(state.joint({0.0, 0.0}), state.joint({kPi / 2, kPi / 2}),
                                state.joint({kPi / 4, kPi / 4}), state.joint({0.0, kPi / 2}));
}

}  // namespace cvw

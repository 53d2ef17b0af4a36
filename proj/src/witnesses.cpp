#include "cvw/witnesses.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cvw/special_functions.hpp"

namespace cvw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTailWarning = 1e-6;
constexpr double kReciprocalSnap = 1e-12;

struct NameEntry {
  CriterionId id;
  std::string_view name;
};

constexpr std::array<NameEntry, 8> kNames{{
    {CriterionId::shannon_weak, "shannon-weak"},
    {CriterionId::shannon_strong, "shannon-strong"},
    {CriterionId::renyi_weak, "renyi-weak"},
    {CriterionId::renyi_strong, "renyi-strong"},
    {CriterionId::renyi_weak_discrete, "renyi-discrete"},
    {CriterionId::tsallis, "tsallis"},
    {CriterionId::mgvt, "mgvt"},
    {CriterionId::simon_ppt, "simon"},
}};

double order_value(EntropyOrder t) { return t.is_infinite() ? kInf : t.value(); }

/// (t-1)/t, 1 at t = ∞.
double kappa(EntropyOrder t) { return t.is_infinite() ? 1.0 : (t.value() - 1.0) / t.value(); }

/// ln t/(1-t) with its limits -1 at t = 1 and 0 at t = ∞.
double log_ratio(EntropyOrder t) {
  if (t.is_infinite()) return 0.0;
  const double x = t.value();
  if (std::abs(x - 1.0) < kShannonWindow) return -1.0 + 0.5 * (x - 1.0);
  return std::log(x) / (1.0 - x);
}

Diagnostics marginal_metadata(const MarginalSet& m) {
  Diagnostics d = m.diagnostics;
  d.renormalization = m.max_renormalization();
  return d;
}

void note_tail(Diagnostics& d, const SampledDensity1D& density, EntropyOrder order, const char* what) {
  if (order.is_infinite() || order.value() >= 1.0) return;
  const double f = renyi_tail_fraction(density, order);
  if (f > kTailWarning) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %.3g of the order-%s integral comes from the grid edge", what, f,
                  order.str().c_str());
    d.warnings.emplace_back(buf);
  }
}

const SampledDensity1D& r_of(const MarginalSet& m, Pairing p) { return p == Pairing::plus_minus ? m.Rplus : m.Rminus; }
const SampledDensity1D& s_of(const MarginalSet& m, Pairing p) { return p == Pairing::plus_minus ? m.Sminus : m.Splus; }

constexpr std::array<Pairing, 2> kPairings{Pairing::plus_minus, Pairing::minus_plus};

}  // namespace

// ------------------------------------------------------------ identifiers

std::string_view criterion_name(CriterionId id) {
  for (const auto& e : kNames)
    if (e.id == id) return e.name;
  return "unknown";
}

std::optional<CriterionId> parse_criterion(std::string_view name) {
  for (const auto& e : kNames)
    if (e.name == name) return e.id;
  return std::nullopt;
}

const std::vector<CriterionId>& all_criteria() {
  static const std::vector<CriterionId> ids = [] {
    std::vector<CriterionId> v;
    for (const auto& e : kNames) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string_view pairing_name(Pairing p) {
  switch (p) {
    case Pairing::plus_minus: return "R+S-";
    case Pairing::minus_plus: return "R-S+";
    default: return "-";
  }
}

std::string_view assignment_name(Assignment a) {
  switch (a) {
    case Assignment::alpha_on_r: return "alpha-on-R";
    case Assignment::alpha_on_s: return "alpha-on-S";
    default: return "-";
  }
}

std::optional<double> WitnessVerdict::parameter(std::string_view name) const {
  for (const auto& [k, v] : parameters)
    if (k == name) return v;
  return std::nullopt;
}

void settle(WitnessVerdict& v, double tol) {
  v.margin = v.lhs - v.rhs;
  if (!std::isfinite(v.margin)) throw NumericError("witness margin is not finite");
  v.detected = v.margin < -tol;
  v.status = VerdictStatus::evaluated;
}

WitnessVerdict failed_verdict(CriterionId id, std::string message) {
  WitnessVerdict v;
  v.criterion = id;
  v.lhs = v.rhs = v.margin = kNaN;
  v.status = VerdictStatus::failed;
  v.message = std::move(message);
  return v;
}

// ------------------------------------------------------------- exponents

EntropyOrder conjugate_beta(EntropyOrder alpha) {
  const double r = 2.0 - alpha.reciprocal();
  if (r < -kReciprocalSnap) throw std::invalid_argument("conjugate order needs alpha >= 1/2");
  if (r <= kReciprocalSnap) return EntropyOrder::infinity();
  if (alpha.is_shannon()) return EntropyOrder(1.0);
  return EntropyOrder::from_reciprocal(r);
}

ConjugateExponents ConjugateExponents::from_alpha(EntropyOrder alpha) { return {alpha, conjugate_beta(alpha)}; }

double log_young_factor(EntropyOrder t) {
  if (t.is_infinite() || t.is_shannon()) return 0.0;
  const double x = t.value();
  return 0.5 * (std::log(x) / x - (1.0 - 1.0 / x) * std::log(std::abs(x / (x - 1.0))));
}

namespace {

EntropyOrder combined_order(EntropyOrder a1, EntropyOrder a2) {
  double r = a1.reciprocal() + a2.reciprocal() - 1.0;
  if (std::abs(r) <= kReciprocalSnap) r = 0.0;
  if (r < 0) throw ForbiddenExponents("1/a1 + 1/a2 - 1 must be >= 0");
  return EntropyOrder::from_reciprocal(r);
}

}  // namespace

double log_young_coefficient(EntropyOrder a1, EntropyOrder a2) {
  EntropyOrder a = combined_order(a1, a2);
  return log_young_factor(a1) + log_young_factor(a2) - log_young_factor(a);
}

double young_coefficient(EntropyOrder a1, EntropyOrder a2) { return std::exp(log_young_coefficient(a1, a2)); }

std::optional<std::string> StrongRenyiExponents::forbidden_reason(double alpha1, double alpha2) {
  for (double a : {alpha1, alpha2}) {
    if (!(a >= 0.5)) return "alpha_j >= 1/2 (conjugate beta_j must be positive)";
    if (std::abs(a - 1.0) < kShannonWindow) return "alpha_j != 1 (use shannon-strong at alpha_j = 1)";
  }
  if ((alpha1 > 1.0) != (alpha2 > 1.0)) return "alpha1 and alpha2 on the same side of 1";
  auto reciprocal = [](double a) { return std::isinf(a) ? 0.0 : 1.0 / a; };
  const double ra = reciprocal(alpha1) + reciprocal(alpha2) - 1.0;
  if (ra < -kReciprocalSnap) return "1/alpha = 1/alpha1 + 1/alpha2 - 1 >= 0";
  const double rb = (2.0 - reciprocal(alpha1)) + (2.0 - reciprocal(alpha2)) - 1.0;
  if (rb < -kReciprocalSnap) return "1/beta = 1/beta1 + 1/beta2 - 1 >= 0";
  return std::nullopt;
}

StrongRenyiExponents StrongRenyiExponents::from_alphas(double alpha1, double alpha2) {
  if (auto reason = forbidden_reason(alpha1, alpha2)) throw ForbiddenExponents("forbidden exponents: " + *reason);
  StrongRenyiExponents e;
  e.alpha1 = EntropyOrder(alpha1);
  e.alpha2 = EntropyOrder(alpha2);
  e.beta1 = conjugate_beta(e.alpha1);
  e.beta2 = conjugate_beta(e.alpha2);
  e.alpha = combined_order(e.alpha1, e.alpha2);
  e.beta = combined_order(e.beta1, e.beta2);
  return e;
}

// -------------------------------------------------------------- criteria

double renyi_weak_bound(EntropyOrder alpha) {
  const EntropyOrder beta = conjugate_beta(alpha);
  return std::log(2.0 * kPi) - 0.5 * (log_ratio(alpha) + log_ratio(beta));
}

std::vector<WitnessVerdict> shannon_weak(const MarginalSet& m, double tol) {
  std::vector<WitnessVerdict> out;
  const double rhs = std::log(2.0 * kPi * std::exp(1.0));
  for (Pairing p : kPairings) {
    WitnessVerdict v;
    v.criterion = CriterionId::shannon_weak;
    v.pairing = p;
    v.lhs = shannon_continuous(r_of(m, p)) + shannon_continuous(s_of(m, p));
    v.rhs = rhs;
    v.metadata = marginal_metadata(m);
    settle(v, tol);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<WitnessVerdict> shannon_strong(const MarginalSet& m, bool pure, double tol) {
  if (!pure) throw std::invalid_argument("shannon-strong applies to pure states only");
  const std::array<double, 2> hr{shannon_continuous(m.R1), shannon_continuous(m.R2)};
  const std::array<double, 2> hs{shannon_continuous(m.S1), shannon_continuous(m.S2)};
  std::array<double, 4> terms{};
  std::size_t k = 0;
  for (double a : hr)
    for (double b : hs) terms[k++] = 2.0 * (a + b);
  const double top = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  const double rhs = 0.5 * (top + std::log(sum));

  std::vector<WitnessVerdict> out;
  for (Pairing p : kPairings) {
    WitnessVerdict v;
    v.criterion = CriterionId::shannon_strong;
    v.pairing = p;
    v.lhs = shannon_continuous(r_of(m, p)) + shannon_continuous(s_of(m, p));
    v.rhs = rhs;
    v.metadata = marginal_metadata(m);
    settle(v, tol);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<WitnessVerdict> renyi_weak(const MarginalSet& m, EntropyOrder alpha, double tol) {
  const EntropyOrder beta = conjugate_beta(alpha);
  const double rhs = renyi_weak_bound(alpha);
  std::vector<WitnessVerdict> out;
  for (Pairing p : kPairings) {
    for (Assignment a : {Assignment::alpha_on_r, Assignment::alpha_on_s}) {
      const EntropyOrder on_r = a == Assignment::alpha_on_r ? alpha : beta;
      const EntropyOrder on_s = a == Assignment::alpha_on_r ? beta : alpha;
      WitnessVerdict v;
      v.criterion = CriterionId::renyi_weak;
      v.pairing = p;
      v.assignment = a;
      v.parameters = {{"alpha", order_value(alpha)}, {"beta", order_value(beta)}};
      v.metadata = marginal_metadata(m);
      note_tail(v.metadata, r_of(m, p), on_r, "R");
      note_tail(v.metadata, s_of(m, p), on_s, "S");
      v.lhs = renyi_continuous(r_of(m, p), on_r) + renyi_continuous(s_of(m, p), on_s);
      v.rhs = rhs;
      settle(v, tol);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<WitnessVerdict> renyi_strong(const MarginalSet& m, const StrongRenyiExponents& e, bool pure, double tol) {
  if (!pure) throw std::invalid_argument("renyi-strong applies to pure states only");
  const double scale = std::abs(kappa(e.alpha));
  if (!(scale > 0)) throw std::invalid_argument("renyi-strong is degenerate at alpha = 1");
  // +1 when the α family (on R) is ≥ 1, so Young's inequality bounds R from
  // below and the reverse inequality bounds S.
  const double sign = (e.alpha.is_infinite() || e.alpha.value() > 1.0) ? 1.0 : -1.0;

  const double sub_r = kappa(e.alpha1) * renyi_continuous(m.R1, e.alpha1) +
                       kappa(e.alpha2) * renyi_continuous(m.R2, e.alpha2);
  const double sub_s = kappa(e.beta1) * renyi_continuous(m.S1, e.beta1) +
                       kappa(e.beta2) * renyi_continuous(m.S2, e.beta2);
  const double log_c_alpha = log_young_coefficient(e.alpha1, e.alpha2);
  const double log_c_beta = log_young_coefficient(e.beta1, e.beta2);
  const double rhs = sign * ((sub_r - log_c_alpha) - (sub_s - log_c_beta)) / scale;

  std::vector<WitnessVerdict> out;
  for (Pairing p : kPairings) {
    WitnessVerdict v;
    v.criterion = CriterionId::renyi_strong;
    v.pairing = p;
    v.assignment = Assignment::alpha_on_r;
    v.parameters = {{"alpha1", order_value(e.alpha1)}, {"alpha2", order_value(e.alpha2)},
                    {"beta1", order_value(e.beta1)},   {"beta2", order_value(e.beta2)},
                    {"alpha", order_value(e.alpha)},   {"beta", order_value(e.beta)}};
    v.metadata = marginal_metadata(m);
    note_tail(v.metadata, s_of(m, p), e.beta, "S");
    v.lhs = sign *
            (kappa(e.alpha) * renyi_continuous(r_of(m, p), e.alpha) -
             kappa(e.beta) * renyi_continuous(s_of(m, p), e.beta)) /
            scale;
    v.rhs = rhs;
    settle(v, tol);
    out.push_back(std::move(v));
  }
  return out;
}

WitnessVerdict renyi_weak_discrete(const DiscreteDistribution& dR, const DiscreteDistribution& dS, EntropyOrder alpha,
                                   double tol, Assignment assignment) {
  dR.validate();
  dS.validate();
  const EntropyOrder beta = conjugate_beta(alpha);
  const bool swap = assignment == Assignment::alpha_on_s;
  const double product = dR.bin_width * dS.bin_width;
  WitnessVerdict v;
  v.criterion = CriterionId::renyi_weak_discrete;
  v.assignment = swap ? Assignment::alpha_on_s : Assignment::alpha_on_r;
  v.parameters = {{"alpha", order_value(alpha)},
                  {"beta", order_value(beta)},
                  {"delta", dR.bin_width},
                  {"Delta", dS.bin_width}};
  v.lhs = renyi_discrete(dR, swap ? beta : alpha) + renyi_discrete(dS, swap ? alpha : beta);
  v.rhs = renyi_weak_bound(alpha) - std::log(product);
  if (product >= 2.0 * kPi) v.metadata.warnings.emplace_back("delta*Delta >= 2 pi: bound is uninformative");
  settle(v, tol);
  return v;
}

namespace {

std::pair<double, double> ordered(EntropyOrder alpha, EntropyOrder beta) {
  if (alpha.is_infinite() || beta.is_infinite())
    throw std::invalid_argument("tsallis bound needs finite orders");
  if (alpha.is_shannon() || beta.is_shannon())
    throw std::invalid_argument("tsallis bound is degenerate at order 1; use renyi-discrete");
  return {std::max(alpha.value(), beta.value()), std::min(alpha.value(), beta.value())};
}

}  // namespace

double tsallis_crossover(EntropyOrder alpha, EntropyOrder beta) {
  auto [a, b] = ordered(alpha, beta);
  return (2.0 * kPi / b) * std::pow(a / b, 1.0 / (2.0 * (a - 1.0)));
}

double tsallis_bound_small(EntropyOrder alpha, EntropyOrder beta, double resolution_product) {
  auto [a, b] = ordered(alpha, beta);
  return (std::pow(b / a, 1.0 / (2.0 * a)) * std::pow(b * resolution_product / (2.0 * kPi), (a - 1.0) / a) - 1.0) /
         (1.0 - a);
}

double tsallis_bound_large(EntropyOrder alpha, EntropyOrder beta, double resolution_product) {
  auto [a, b] = ordered(alpha, beta);
  return (std::pow(a / b, 1.0 / (2.0 * a)) * std::pow(b * resolution_product / (2.0 * kPi), (1.0 - a) / a) - 1.0) /
         (a - 1.0);
}

double tsallis_bound(EntropyOrder alpha, EntropyOrder beta, double resolution_product) {
  if (!(resolution_product > 0)) throw std::invalid_argument("resolution product must be positive");
  return resolution_product <= tsallis_crossover(alpha, beta)
             ? tsallis_bound_small(alpha, beta, resolution_product)
             : tsallis_bound_large(alpha, beta, resolution_product);
}

WitnessVerdict tsallis_witness(const DiscreteDistribution& dR, const DiscreteDistribution& dS, EntropyOrder alpha,
                               EntropyOrder beta, double tol) {
  dR.validate();
  dS.validate();
  const double product = dR.bin_width * dS.bin_width;
  WitnessVerdict v;
  v.criterion = CriterionId::tsallis;
  v.parameters = {{"alpha", order_value(alpha)},
                  {"beta", order_value(beta)},
                  {"delta", dR.bin_width},
                  {"Delta", dS.bin_width},
                  {"crossover", tsallis_crossover(alpha, beta)}};
  v.lhs = tsallis_discrete(dR, alpha) + tsallis_discrete(dS, beta);
  v.rhs = tsallis_bound(alpha, beta, product);
  settle(v, tol);
  return v;
}

std::vector<WitnessVerdict> mgvt(const MarginalSet& m, double tol) {
  std::vector<WitnessVerdict> out;
  for (Pairing p : kPairings) {
    WitnessVerdict v;
    v.criterion = CriterionId::mgvt;
    v.pairing = p;
    v.lhs = variance(r_of(m, p)) * variance(s_of(m, p));
    v.rhs = 1.0;
    v.metadata = marginal_metadata(m);
    settle(v, tol);
    out.push_back(std::move(v));
  }
  return out;
}

std::pair<double, double> symplectic_eigenvalues(const CovarianceMatrix4& cm, bool partial_transpose) {
  const auto& v = cm.v;
  auto det2 = [&](int r, int c) { return v[r][c] * v[r + 1][c + 1] - v[r][c + 1] * v[r + 1][c]; };
  const double det_a = det2(0, 0);
  const double det_b = det2(2, 2);
  const double det_c = det2(0, 2);
  // 4x4 determinant by cofactor expansion over the first row.
  auto det3 = [&](int skip) {
    int cols[3];
    for (int c = 0, k = 0; c < 4; ++c)
      if (c != skip) cols[k++] = c;
    auto e = [&](int r, int k) { return v[r][cols[k]]; };
    return e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)) - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0)) +
           e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0));
  };
  double det_v = 0.0;
  for (int c = 0; c < 4; ++c) det_v += (c % 2 == 0 ? 1.0 : -1.0) * v[0][c] * det3(c);
  const double delta = det_a + det_b + (partial_transpose ? -2.0 : 2.0) * det_c;
  const double disc = std::max(0.0, delta * delta - 4.0 * det_v);
  const double hi = 0.5 * (delta + std::sqrt(disc));
  const double lo = 0.5 * (delta - std::sqrt(disc));
  return {std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi))};
}

WitnessVerdict simon_ppt(const CovarianceMatrix4& cm, double tol) {
  if (!cm.is_symmetric(1e-9)) throw std::invalid_argument("covariance matrix is not symmetric");
  for (int i = 0; i < 4; ++i)
    if (!(cm.v[i][i] > 0)) throw std::invalid_argument("covariance matrix has a non-positive variance");
  const auto physical = symplectic_eigenvalues(cm, false);
  if (physical.first < 0.5 - 1e-3) throw std::invalid_argument("covariance matrix violates the uncertainty principle");
  const auto transposed = symplectic_eigenvalues(cm, true);
  WitnessVerdict v;
  v.criterion = CriterionId::simon_ppt;
  v.lhs = transposed.first;
  v.rhs = 0.5;
  v.parameters = {{"nu_plus", transposed.second}};
  v.metadata = cm.diagnostics;
  settle(v, tol);
  return v;
}

ThresholdPair hermite_gauss_thresholds(EntropyOrder alpha) {
  if (alpha.is_infinite()) throw std::invalid_argument("threshold needs a finite order");
  const double a = alpha.value();
  if (!(a >= 0.5)) throw std::invalid_argument("threshold needs alpha >= 1/2");
  double lower;
  if (alpha.is_shannon()) {
    lower = std::exp(1.0 - kEulerGamma) / 2.0;
  } else {
    const double log_base = 0.5 * std::log(kPi) - log_gamma(a + 0.5) + a * std::log(a / 2.0);
    lower = std::exp(log_base / (1.0 - a));
  }
  return {lower, 1.0 / lower};
}

}  // namespace cvw

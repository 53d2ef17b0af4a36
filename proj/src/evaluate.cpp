#include "cvw/evaluate.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>

namespace cvw {

std::vector<double> default_alpha_list() { return {0.501, 0.51, 0.55, 0.6, 0.75, 1.0, 1.5, 2.0, 4.0}; }

bool EvaluationConfig::enabled(CriterionId id) const {
  return std::find(criteria.begin(), criteria.end(), id) != criteria.end();
}

namespace {

using Task = std::function<std::vector<WitnessVerdict>()>;

struct LabeledTask {
  CriterionId id;
  std::vector<std::pair<std::string, double>> parameters;
  Task run;
};

struct DiscretePair {
  Pairing pairing;
  double delta;
  double big_delta;
  std::shared_ptr<const DiscreteDistribution> r;
  std::shared_ptr<const DiscreteDistribution> s;
  std::string error;
};

}  // namespace

std::vector<WitnessVerdict> evaluate_marginals(const MarginalSet& m, bool pure, const CovarianceMatrix4* covariance,
                                               const EvaluationConfig& config) {
  const double tol = config.tolerance;
  std::vector<LabeledTask> tasks;

  // Binned marginals are shared by both discrete criteria.
  std::vector<DiscretePair> binned;
  if (config.enabled(CriterionId::renyi_weak_discrete) || config.enabled(CriterionId::tsallis)) {
    for (double delta : config.deltas) {
      for (double big_delta : config.big_deltas) {
        for (Pairing p : {Pairing::plus_minus, Pairing::minus_plus}) {
          DiscretePair d{p, delta, big_delta, nullptr, nullptr, {}};
          try {
            const auto& r = p == Pairing::plus_minus ? m.Rplus : m.Rminus;
            const auto& s = p == Pairing::plus_minus ? m.Sminus : m.Splus;
            d.r = std::make_shared<DiscreteDistribution>(discretize(r, delta, config.bin_offset));
            d.s = std::make_shared<DiscreteDistribution>(discretize(s, big_delta, config.bin_offset));
          } catch (const std::exception& e) {
            d.error = e.what();
          }
          binned.push_back(std::move(d));
        }
      }
    }
  }

  for (CriterionId id : config.criteria) {
    switch (id) {
      case CriterionId::shannon_weak:
        tasks.push_back({id, {}, [&] { return shannon_weak(m, tol); }});
        break;
      case CriterionId::shannon_strong:
        tasks.push_back({id, {}, [&, pure] { return shannon_strong(m, pure, tol); }});
        break;
      case CriterionId::renyi_weak:
        for (double a : config.alphas)
          tasks.push_back({id, {{"alpha", a}}, [&, a] { return renyi_weak(m, EntropyOrder(a), tol); }});
        break;
      case CriterionId::renyi_strong:
        for (auto [a1, a2] : config.strong_exponents) {
          tasks.push_back({id, {{"alpha1", a1}, {"alpha2", a2}}, [&, pure, a1, a2]() -> std::vector<WitnessVerdict> {
                             if (auto reason = StrongRenyiExponents::forbidden_reason(a1, a2)) {
                               WitnessVerdict v = failed_verdict(CriterionId::renyi_strong, *reason);
                               v.status = VerdictStatus::forbidden;
                               v.parameters = {{"alpha1", a1}, {"alpha2", a2}};
                               return {v};
                             }
                             return renyi_strong(m, StrongRenyiExponents::from_alphas(a1, a2), pure, tol);
                           }});
        }
        break;
      case CriterionId::renyi_weak_discrete:
        for (const DiscretePair& d : binned) {
          for (double a : config.discrete_alphas) {
            tasks.push_back({id,
                             {{"alpha", a}, {"delta", d.delta}, {"Delta", d.big_delta}},
                             [&d, a, tol]() -> std::vector<WitnessVerdict> {
                               if (!d.error.empty()) throw std::runtime_error(d.error);
                               std::vector<WitnessVerdict> out;
                               for (Assignment as : {Assignment::alpha_on_r, Assignment::alpha_on_s}) {
                                 WitnessVerdict v = renyi_weak_discrete(*d.r, *d.s, EntropyOrder(a), tol, as);
                                 v.pairing = d.pairing;
                                 out.push_back(std::move(v));
                               }
                               return out;
                             }});
          }
        }
        break;
      case CriterionId::tsallis:
        for (const DiscretePair& d : binned) {
          for (double a : config.discrete_alphas) {
            if (EntropyOrder(a).is_shannon()) continue;
            tasks.push_back({id,
                             {{"alpha", a}, {"delta", d.delta}, {"Delta", d.big_delta}},
                             [&d, a, tol]() -> std::vector<WitnessVerdict> {
                               if (!d.error.empty()) throw std::runtime_error(d.error);
                               const EntropyOrder alpha(a);
                               const EntropyOrder beta = conjugate_beta(alpha);
                               std::vector<WitnessVerdict> out;
                               for (Assignment as : {Assignment::alpha_on_r, Assignment::alpha_on_s}) {
                                 const bool swap = as == Assignment::alpha_on_s;
                                 WitnessVerdict v =
                                     tsallis_witness(*d.r, *d.s, swap ? beta : alpha, swap ? alpha : beta, tol);
                                 v.pairing = d.pairing;
                                 v.assignment = as;
                                 out.push_back(std::move(v));
                               }
                               return out;
                             }});
          }
        }
        break;
      case CriterionId::mgvt:
        tasks.push_back({id, {}, [&] { return mgvt(m, tol); }});
        break;
      case CriterionId::simon_ppt:
        tasks.push_back({id, {}, [&, covariance]() -> std::vector<WitnessVerdict> {
                           if (covariance == nullptr) throw std::invalid_argument("simon needs a covariance matrix");
                           return {simon_ppt(*covariance, tol)};
                         }});
        break;
    }
  }

  std::vector<std::vector<WitnessVerdict>> results(tasks.size());
  const auto count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    const LabeledTask& t = tasks[static_cast<std::size_t>(k)];
    try {
      results[static_cast<std::size_t>(k)] = t.run();
    } catch (const std::exception& e) {
      WitnessVerdict v = failed_verdict(t.id, e.what());
      v.parameters = t.parameters;
      results[static_cast<std::size_t>(k)] = {std::move(v)};
    }
  }
  std::vector<WitnessVerdict> out;
  for (auto& r : results)
    for (auto& v : r) out.push_back(std::move(v));
  return out;
}

std::vector<WitnessVerdict> evaluate_all(const PreparedState& state, const EvaluationConfig& config) {
  const JointDensity2D joint_r = state.joint(config.angles);
  const QuadratureAngles conj = config.angles.conjugate();
  const JointDensity2D joint_s = state.joint(conj);
  const MarginalSet m = global_marginals(joint_r, joint_s);

  std::unique_ptr<CovarianceMatrix4> cov;
  std::string cov_error;
  if (config.enabled(CriterionId::simon_ppt)) {
    try {
      // The covariance always refers to the unrotated (x, p) frame.
      const bool unrotated = config.angles.theta1 == 0.0 && config.angles.theta2 == 0.0;
      JointDensity2D xx = unrotated ? joint_r : state.joint({0.0, 0.0});
      JointDensity2D pp = unrotated ? joint_s : state.joint({kPi / 2, kPi / 2});
      cov = std::make_unique<CovarianceMatrix4>(
          covariance_from_joints(xx, pp, state.joint({kPi / 4, kPi / 4}), state.joint({0.0, kPi / 2})));
    } catch (const std::exception& e) {
      cov_error = e.what();
    }
  }
  std::vector<WitnessVerdict> out = evaluate_marginals(m, state.is_pure(), cov.get(), config);
  if (!cov_error.empty()) {
    for (WitnessVerdict& v : out)
      if (v.criterion == CriterionId::simon_ppt) v.message = cov_error;
  }
  return out;
}

}  // namespace cvw

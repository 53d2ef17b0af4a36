// Acceptance checks: one PASS/FAIL line per criterion.
// Exit status is 0 when the failing criteria are exactly those named with
// --known-failure, so a fixed or a newly broken criterion both show up.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cvw/commands.hpp"
#include "cvw/entropies.hpp"
#include "cvw/evaluate.hpp"
#include "cvw/marginals.hpp"
#include "cvw/scans.hpp"
#include "cvw/witnesses.hpp"

using namespace cvw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string f(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

const GridSettings kDefaultGrid{1024, 0.0};

MarginalSet marginals(const StateDescriptor& d, const GridSettings& g = kDefaultGrid) {
  const PreparedState s(d, g);
  const QuadratureAngles a{};
  return global_marginals(s.joint(a), s.joint(a.conjugate()));
}

bool any_detected(const std::vector<WitnessVerdict>& v) {
  for (const auto& w : v)
    if (w.detected) return true;
  return false;
}

double min_margin(const std::vector<WitnessVerdict>& v) {
  double m = INFINITY;
  for (const auto& w : v) m = std::min(m, w.margin);
  return m;
}

// ---------------------------------------------------------------- criteria

Outcome hermite_gauss_thresholds_match() {
  Outcome o;
  for (double alpha : {0.501, 0.75, 1.0, 2.0}) {
    const auto t = hermite_gauss_thresholds(alpha);
    const auto lo = find_hermite_gauss_boundary(HermiteGaussCriterion::renyi_weak_alpha_on_plus, alpha, 0.3, 1.0);
    const auto hi = find_hermite_gauss_boundary(HermiteGaussCriterion::renyi_weak_alpha_on_plus, alpha, 1.0, 3.0);
    o.require(lo.found && hi.found, f("alpha %g: boundary not bracketed", alpha));
    const double e1 = std::abs(lo.location - t.lower), e2 = std::abs(hi.location - t.upper);
    o.require(e1 <= 1e-3 && e2 <= 1e-3, f("alpha %g: numeric %.5f/%.5f", alpha, lo.location, hi.location) +
                                            f(" vs closed form %.5f/%.5f", t.lower, t.upper));
    if (alpha == 1.0)
      o.require(std::abs(lo.location - 0.76310) <= 1e-3 && std::abs(hi.location - 1.31045) <= 1e-3, "alpha 1 values");
    if (alpha == 2.0)
      o.require(std::abs(lo.location - 0.75) <= 1e-3 && std::abs(hi.location - 4.0 / 3.0) <= 1e-3, "alpha 2 values");
    if (o.pass) o.detail += f("a=%g: %.5f %.5f; ", alpha, lo.location, hi.location);
  }
  return o;
}

Outcome headline_sensitivity() {
  Outcome o;
  const StateDescriptor d{HermiteGaussParams::from_ratio(1.3)};
  const auto m = marginals(d);
  const auto sh = shannon_weak(m);
  const auto rw = renyi_weak(m, 0.51);
  const auto simon = simon_ppt(covariance_from_quadratures(PreparedState(d, kDefaultGrid)));
  o.require(!any_detected(sh), "shannon-weak detects");
  o.require(any_detected(rw), "renyi-weak at 0.51 misses");
  o.require(!simon.detected, "simon detects");
  o.detail = (o.pass ? "" : o.detail + "; ") + f("shannon %.3e, renyi(0.51) %.3e, simon %.3e", min_margin(sh),
                                                 min_margin(rw), simon.margin);
  return o;
}

Outcome simon_region() {
  Outcome o;
  const auto lo = find_hermite_gauss_boundary(HermiteGaussCriterion::simon_ppt, 1.0, 0.3, 1.0);
  const auto hi = find_hermite_gauss_boundary(HermiteGaussCriterion::simon_ppt, 1.0, 1.0, 3.0);
  o.require(lo.found && hi.found, "boundary not bracketed");
  o.require(std::abs(lo.location - 1 / std::sqrt(3.0)) <= 1e-3, "lower boundary off");
  o.require(std::abs(hi.location - std::sqrt(3.0)) <= 1e-3, "upper boundary off");
  o.detail += f("%.5f (1/sqrt3 %.5f), %.5f (sqrt3 %.5f)", lo.location, 1 / std::sqrt(3.0), hi.location, std::sqrt(3.0));
  return o;
}

Outcome noon_detection() {
  Outcome o;
  const auto e22 = StrongRenyiExponents::from_alphas(2.0, 2.0);
  std::string margins;
  for (int n = 1; n <= 8; ++n) {
    const auto m = marginals(StateDescriptor{NoonParams{n, 10}});
    if (n <= 6) {
      const auto v = renyi_strong(m, e22, true);
      o.require(any_detected(v), f("renyi-strong misses N=%g", n));
      margins += f("%.3f ", min_margin(v));
    }
    for (double a : default_alpha_list()) o.require(!any_detected(renyi_weak(m, a)), f("renyi-weak detects N=%g", n));
    o.require(!any_detected(mgvt(m)), f("mgvt detects N=%g", n));
  }
  o.detail = (o.pass ? "" : o.detail + "; ") + "strong margins N=1..6: " + margins;
  return o;
}

Outcome noon_hermite_gauss_equivalence() {
  Outcome o;
  const PreparedState noon(StateDescriptor{NoonParams{1, 10}}, kDefaultGrid);
  const PreparedState hg(StateDescriptor{HermiteGaussParams{1.0, 1.0}}, kDefaultGrid);
  const QuadratureAngles a{};
  const auto mn = global_marginals(noon.joint(a), noon.joint(a.conjugate()));
  const auto mh = global_marginals(hg.joint(a), hg.joint(a.conjugate()));
  double worst = 0.0;
  const SampledDensity1D* pn[] = {&mn.R1, &mn.R2, &mn.S1, &mn.S2, &mn.Rplus, &mn.Rminus, &mn.Splus, &mn.Sminus};
  const SampledDensity1D* ph[] = {&mh.R1, &mh.R2, &mh.S1, &mh.S2, &mh.Rplus, &mh.Rminus, &mh.Splus, &mh.Sminus};
  for (int k = 0; k < 8; ++k) {
    o.require(pn[k]->grid == ph[k]->grid, "grids differ");
    for (std::size_t i = 0; i < pn[k]->values.size(); ++i)
      worst = std::max(worst, std::abs(pn[k]->values[i] - ph[k]->values[i]));
  }
  o.require(worst <= 1e-6, "marginals differ");
  const auto vn = evaluate_all(noon, EvaluationConfig{});
  const auto vh = evaluate_all(hg, EvaluationConfig{});
  o.require(vn.size() == vh.size(), "verdict lists differ in length");
  double worst_margin = 0.0;
  for (std::size_t k = 0; k < std::min(vn.size(), vh.size()); ++k) {
    if (vn[k].status != vh[k].status) o.require(false, "verdict status differs");
    if (std::isfinite(vn[k].margin) || std::isfinite(vh[k].margin))
      worst_margin = std::max(worst_margin, std::abs(vn[k].margin - vh[k].margin));
  }
  o.require(worst_margin <= 1e-4, "margins differ");
  o.detail = (o.pass ? "" : o.detail + "; ") +
             f("max marginal diff %.2e, max margin diff %.2e over %g verdicts", worst, worst_margin,
               static_cast<double>(vn.size()));
  return o;
}

Outcome cat_regions() {
  Outcome o;
  std::vector<double> nu;
  for (int k = 1; k <= 50; ++k) nu.push_back(3.0 * k / 50.0);
  const auto p = linspace(0.0, 1.0, 50);
  const auto map = scan_cat(nu, p, {0.501, 1.0});
  const auto sh = *map.column("shannon-weak");
  const auto re = *map.column("renyi-weak@0.501");
  int shannon = 0, renyi = 0, extra = 0, missing = 0, last_row = 0;
  std::string where;
  for (std::size_t i = 0; i < nu.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      const bool s = map.at(i, j, sh).detected(), r = map.at(i, j, re).detected();
      shannon += s;
      renyi += r;
      if (r && !s) ++extra;
      if (s && !r) {
        ++missing;
        if (where.size() < 200)
          where += f(" (nu %.2f p %.4f: shannon %.2e renyi %.2e)", nu[i], p[j], map.at(i, j, sh).margin,
                     map.at(i, j, re).margin);
      }
      if (j + 1 == p.size())
        for (std::size_t c = 0; c < map.columns.size(); ++c) last_row += map.at(i, j, c).detected();
    }
  o.require(missing == 0, f("%g Shannon cells not detected at 0.501:", missing) + where);
  o.require(extra >= 1, "no extra Renyi cells");
  o.require(last_row == 0, f("%g detections in the p=1 row", last_row));
  o.detail = (o.pass ? "" : o.detail + "; ") +
             f("shannon %g cells, renyi(0.501) %g cells, %g only by renyi", shannon, renyi, extra);
  return o;
}

Outcome gaussian_saturation() {
  Outcome o;
  const auto m = marginals(StateDescriptor{VacuumParams{}});
  double worst = 0.0;
  for (const auto& v : shannon_weak(m)) worst = std::max(worst, std::abs(v.margin));
  for (double a : {0.6, 2.0, 4.0})
    for (const auto& v : renyi_weak(m, a)) worst = std::max(worst, std::abs(v.margin));
  double product = 0.0;
  for (const auto& v : mgvt(m)) product = std::max(product, std::abs(v.lhs - 1.0));
  o.require(worst <= 1e-4, "entropic margins not saturated");
  o.require(product <= 1e-4, "variance product not 1");
  o.detail = (o.pass ? "" : o.detail + "; ") + f("max |margin| %.2e, max |product - 1| %.2e", worst, product);
  return o;
}

Outcome separable_soundness() {
  Outcome o;
  EvaluationConfig c;
  c.deltas = c.big_deltas = {0.05, 0.2, 1.0};
  c.discrete_alphas = {0.6, 1.0, 2.0, 4.0};
  // Spacing below the finest bin width (17/1024 ≈ 0.017) and wide enough for ν = 3.
  const GridSettings grid{2048, 17.0};
  const std::vector<StateDescriptor> catalog{
      {VacuumParams{}},           {SqueezedProductParams{0.4, -0.7}}, {ThermalParams{0.5, 1.5}},
      {CatParams{{0.5, 0.0}, 1.0}}, {CatParams{{1.5, 0.0}, 1.0}},       {CatParams{{3.0, 0.0}, 1.0}}};
  int evaluated = 0, skipped = 0;
  double worst = INFINITY;
  for (const auto& d : catalog) {
    for (const auto& v : evaluate_all(PreparedState(d, grid), c)) {
      const bool strong = v.criterion == CriterionId::shannon_strong || v.criterion == CriterionId::renyi_strong;
      if (v.status == VerdictStatus::failed) {
        // Strong criteria are defined for pure states only.
        o.require(strong && !d.is_pure(), d.label() + " " + std::string(criterion_name(v.criterion)) + " failed: " +
                                              v.message);
        ++skipped;
        continue;
      }
      ++evaluated;
      worst = std::min(worst, v.margin);
      o.require(!v.detected, d.label() + " detected by " + std::string(criterion_name(v.criterion)) +
                                 f(" (margin %.2e)", v.margin));
    }
  }
  o.detail = (o.pass ? "" : o.detail + "; ") +
             f("%g verdicts, 0 detections expected, smallest margin %.2e, %g strong verdicts skipped on mixed states",
               evaluated, worst, skipped);
  return o;
}

Outcome discretization_bridge() {
  Outcome o;
  const Grid1D g = Grid1D::centered(4096, 0.01);
  std::vector<double> v(g.n_points);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::exp(-0.5 * g.point(k) * g.point(k)) / std::sqrt(2 * kPi);
  const SampledDensity1D n01(g, v);
  for (double alpha : {0.6, 1.0, 2.0}) {
    double prev = INFINITY;
    std::string gaps;
    for (double delta : {0.2, 0.1, 0.05}) {
      const double gap =
          std::abs(renyi_discrete(discretize(n01, delta), alpha) + std::log(delta) - renyi_continuous(n01, alpha));
      o.require(gap < prev, f("alpha %g: gap not decreasing at delta %g", alpha, delta));
      prev = gap;
      gaps += f("%.1e ", gap);
    }
    o.require(prev <= 1e-3, f("alpha %g: gap %.2e at 0.05", alpha, prev));
    if (o.pass) o.detail += f("a=%g: ", alpha) + gaps;
  }
  return o;
}

Outcome entropy_oracles() {
  Outcome o;
  const Grid1D g = Grid1D::centered(4096, 0.01);
  double worst = 0.0;
  for (double var : {0.5, 1.0, 4.0}) {
    std::vector<double> v(g.n_points);
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] = std::exp(-0.5 * g.point(k) * g.point(k) / var) / std::sqrt(2 * kPi * var);
    const SampledDensity1D d(g, v);
    worst = std::max(worst, std::abs(shannon_continuous(d) - 0.5 * std::log(2 * kPi * std::exp(1.0) * var)));
    for (double a : {0.6, 2.0, 5.0}) {
      const double exact = 0.5 * std::log(2 * kPi * var) + std::log(a) / (2 * (a - 1));
      worst = std::max(worst, std::abs(renyi_continuous(d, a) - exact));
    }
  }
  o.require(worst <= 1e-6, "continuous closed forms");
  double identity = 0.0;
  for (const auto& p : std::vector<std::vector<double>>{{0.05, 0.2, 0.4, 0.25, 0.1}, {0.5, 0.5}, {0.9, 0.05, 0.05}}) {
    DiscreteDistribution d;
    d.probabilities = p;
    for (double a : {0.3, 0.6, 1.5, 2.0, 4.0}) {
      const double t = tsallis_discrete(d, a);
      identity = std::max(identity, std::abs(std::log(1 + (1 - a) * t) / (1 - a) - renyi_discrete(d, a)));
    }
  }
  o.require(identity <= 1e-10, "Renyi/Tsallis identity");
  o.detail = (o.pass ? "" : o.detail + "; ") + f("closed forms %.2e, identity %.2e", worst, identity);
  return o;
}

Outcome limit_consistency() {
  Outcome o;
  double worst_weak = 0.0;
  for (const StateDescriptor& d : {StateDescriptor{VacuumParams{}}, StateDescriptor{SqueezedProductParams{0.4, -0.7}},
                                   StateDescriptor{CatParams{{1.5, 0.0}, 1.0}}}) {
    const auto m = marginals(d);
    const auto sh = shannon_weak(m);
    for (double a : {1.0 + 1e-4, 1.0 - 1e-4}) {
      const auto rw = renyi_weak(m, a);
      // Verdicts 0, 1 pair R+ with S-; 2, 3 pair R- with S+.
      for (std::size_t k = 0; k < rw.size(); ++k) worst_weak = std::max(worst_weak, std::abs(rw[k].margin - sh[k / 2].margin));
    }
  }
  o.require(worst_weak <= 1e-3, "weak limit");
  const auto m = marginals(StateDescriptor{NoonParams{1, 10}});
  const auto ss = shannon_strong(m, true);
  double worst_strong = 0.0;
  for (double a : {1.0 + 1e-4, 1.0 - 1e-4}) {
    const auto rs = renyi_strong(m, StrongRenyiExponents::from_alphas(a, a), true);
    for (std::size_t k = 0; k < rs.size(); ++k) worst_strong = std::max(worst_strong, std::abs(rs[k].margin - ss[k].margin));
  }
  o.require(worst_strong <= 1e-3, "strong limit");
  o.detail = (o.pass ? "" : o.detail + "; ") + f("weak %.2e, strong %.2e", worst_weak, worst_strong);
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome reproducibility() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "cvw_acceptance_repro";
  fs::remove_all(root);
  std::vector<RunConfig> runs(3);
  for (auto& c : runs) {
    c.command = Command::scan;
    c.grid = {512, 0.0};
  }
  runs[0].scan_kind = ScanKind::hermite_gauss;
  runs[0].scan_alphas = {0.501, 1.0, 2.0};
  runs[0].ratios = linspace(0.4, 2.5, 5);
  runs[1].scan_kind = ScanKind::noon;
  runs[1].noon_n = {1, 2};
  runs[1].alpha1_grid = runs[1].alpha2_grid = arange(1.05, 4.0, 0.5);
  runs[2].scan_kind = ScanKind::cat;
  runs[2].nu_grid = {0.5, 1.5, 3.0};
  runs[2].p_grid = linspace(0.0, 1.0, 3);
  runs[2].scan_alphas = {0.501, 1.0};
  int files = 0;
  for (auto& c : runs) {
    c.output_dir = (root / "first").string();
    fs::create_directories(c.output_dir);
    std::ostringstream sink;
    const auto first = cmd_scan(c, sink);
    RunConfig again = RunConfig::load((root / "first" / (c.resolved_name() + ".config.ini")).string());
    again.output_dir = (root / "second").string();
    fs::create_directories(again.output_dir);
    cmd_scan(again, sink);
    for (const auto& path : first.files) {
      if (fs::path(path).extension() != ".csv") continue;
      ++files;
      const fs::path twin = root / "second" / fs::path(path).filename();
      o.require(read_file(path) == read_file(twin), fs::path(path).filename().string() + " differs");
    }
  }
  fs::remove_all(root);
  o.require(files >= 4, "too few CSV files written");
  o.detail = (o.pass ? "" : o.detail + "; ") + f("%g CSV files identical on rerun", files);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int k = 1; k + 1 < argc; ++k)
    if (std::string(argv[k]) == "--known-failure") known.insert(std::atoi(argv[++k]));

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "Hermite-Gauss threshold oracle", hermite_gauss_thresholds_match, 120},
      {2, "ratio 1.3: Renyi 0.51 only", headline_sensitivity, 60},
      {3, "Simon region", simon_region, 120},
      {4, "NOON detection", noon_detection, 600},
      {5, "NOON N=1 equals Hermite-Gauss (1,1)", noon_hermite_gauss_equivalence, 120},
      {6, "cat regions 50x50", cat_regions, 600},
      {7, "Gaussian saturation", gaussian_saturation, 60},
      {8, "separable soundness", separable_soundness, 600},
      {9, "discretization bridge", discretization_bridge, 60},
      {10, "entropy oracles", entropy_oracles, 60},
      {11, "limit consistency", limit_consistency, 60},
      {12, "scan reproducibility", reproducibility, 120},
  };
  int failed = 0;
  bool as_expected = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) o.require(false, f("over time budget (%.0f s)", c.budget_seconds));
    failed += !o.pass;
    if (o.pass == known.count(c.id) > 0) as_expected = false;
    std::printf("%s %2d %s [%.1f s]: %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str(),
                known.count(c.id) ? " (known failure)" : "");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  if (!as_expected) std::printf("failing criteria differ from the known failures\n");
  return as_expected ? 0 : 1;
}

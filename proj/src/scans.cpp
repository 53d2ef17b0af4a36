#include "cvw/scans.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace cvw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view flag_text(CellFlag f) {
  switch (f) {
    case CellFlag::detected: return "1";
    case CellFlag::forbidden: return "FPR";
    case CellFlag::failed: return "ERR";
    default: return "0";
  }
}

CellEntry failed_entry(const std::string& message) { return {kNaN, CellFlag::failed, message}; }

/// Smallest margin across verdicts; detected when any verdict detects.
CellEntry summarize(const std::vector<WitnessVerdict>& verdicts) {
  CellEntry e{std::numeric_limits<double>::infinity(), CellFlag::undetected, {}};
  for (const WitnessVerdict& v : verdicts) {
    if (v.status == VerdictStatus::forbidden) return {kNaN, CellFlag::forbidden, v.message};
    if (v.status == VerdictStatus::failed) return failed_entry(v.message);
    e.margin = std::min(e.margin, v.margin);
    if (v.detected) e.flag = CellFlag::detected;
  }
  return e;
}

std::string alpha_column(double a) { return "renyi-weak@" + fmt(a); }

}  // namespace

std::optional<std::size_t> RegionMap::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns.begin());
}

void RegionMap::validate() const {
  if (cells.size() != values1.size() * values2.size()) throw std::invalid_argument("region map: wrong cell count");
  for (const auto& c : cells)
    if (c.size() != columns.size()) throw std::invalid_argument("region map: wrong entry count in a cell");
  for (const auto* axis : {&values1, &values2})
    for (std::size_t k = 1; k < axis->size(); ++k)
      if (!((*axis)[k] > (*axis)[k - 1])) throw std::invalid_argument("region map: axis not strictly increasing");
}

std::string RegionMap::to_csv() const {
  std::string out = axis1 + "," + axis2;
  for (const auto& c : columns) out += "," + c + "_margin," + c + "_flag";
  out += "\n";
  for (std::size_t i = 0; i < values1.size(); ++i) {
    for (std::size_t j = 0; j < values2.size(); ++j) {
      out += fmt(values1[i]) + "," + fmt(values2[j]);
      for (const CellEntry& e : cells[index(i, j)]) {
        out += ",";
        out += e.flag == CellFlag::forbidden || e.flag == CellFlag::failed ? "nan" : fmt(e.margin);
        out += ",";
        out += flag_text(e.flag);
      }
      out += "\n";
    }
  }
  return out;
}

std::string RegionMap::to_json() const {
  using nlohmann::json;
  json j;
  j["axes"] = {{"axis1", {{"name", axis1}, {"values", values1}}}, {"axis2", {{"name", axis2}, {"values", values2}}}};
  json meta = json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  json criteria = json::object();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    json rows = json::array();
    for (std::size_t i = 0; i < values1.size(); ++i) {
      for (std::size_t jj = 0; jj < values2.size(); ++jj) {
        const CellEntry& e = cells[index(i, jj)][c];
        json cell = {{axis1, values1[i]}, {axis2, values2[jj]}, {"flag", std::string(flag_text(e.flag))}};
        cell["margin"] = std::isnan(e.margin) ? json(nullptr) : json(e.margin);
        if (!e.message.empty()) cell["message"] = e.message;
        rows.push_back(std::move(cell));
      }
    }
    criteria[columns[c]] = std::move(rows);
  }
  j["criteria"] = std::move(criteria);
  return j.dump(2) + "\n";
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("linspace needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

std::vector<double> arange(double lo, double hi, double step) {
  if (!(step > 0)) throw std::invalid_argument("arange needs a positive step");
  if (hi < lo) throw std::invalid_argument("arange needs hi >= lo");
  std::vector<double> v;
  for (std::size_t k = 0;; ++k) {
    double x = lo + step * static_cast<double>(k);
    if (x > hi + step * 1e-3) break;
    v.push_back(std::round(x * 1e12) / 1e12);
  }
  return v;
}

// ---------------------------------------------------------------- scans

RegionMap scan_hermite_gauss(const std::vector<double>& alpha_grid, const std::vector<double>& ratio_grid,
                             const ScanSettings& settings) {
  RegionMap map;
  map.axis1 = "alpha";
  map.axis2 = "ratio";
  map.values1 = alpha_grid;
  map.values2 = ratio_grid;
  map.columns = {"renyi-weak", "threshold", "simon"};
  map.cells.assign(alpha_grid.size() * ratio_grid.size(), std::vector<CellEntry>(3));
  map.metadata = {{"state", "hermite-gauss"},
                  {"grid_points", std::to_string(settings.grid.points)},
                  {"tolerance", fmt(settings.tolerance)}};
  map.validate();

  const auto nr = static_cast<std::int64_t>(ratio_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t jr = 0; jr < nr; ++jr) {
    const auto j = static_cast<std::size_t>(jr);
    const double ratio = ratio_grid[j];
    try {
      PreparedState state(StateDescriptor{HermiteGaussParams::from_ratio(ratio)}, settings.grid);
      const JointDensity2D jr0 = state.joint({0.0, 0.0});
      const JointDensity2D js0 = state.joint({kPi / 2, kPi / 2});
      const MarginalSet m = global_marginals(jr0, js0);
      CellEntry simon;
      try {
        const auto cm = covariance_from_joints(jr0, js0, state.joint({kPi / 4, kPi / 4}), state.joint({0.0, kPi / 2}));
        simon = summarize({simon_ppt(cm, settings.tolerance)});
      } catch (const std::exception& e) {
        simon = failed_entry(e.what());
      }
      for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        auto& cell = map.cells[map.index(i, j)];
        cell[2] = simon;
        try {
          cell[0] = summarize(renyi_weak(m, EntropyOrder(alpha_grid[i]), settings.tolerance));
        } catch (const std::exception& e) {
          cell[0] = failed_entry(e.what());
        }
        try {
          const ThresholdPair t = hermite_gauss_thresholds(EntropyOrder(alpha_grid[i]));
          const double margin = std::min(ratio - t.lower, t.upper - ratio);
          cell[1] = {margin, margin < 0 ? CellFlag::detected : CellFlag::undetected, {}};
        } catch (const std::exception& e) {
          cell[1] = failed_entry(e.what());
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t i = 0; i < alpha_grid.size(); ++i)
        map.cells[map.index(i, j)] = std::vector<CellEntry>(3, failed_entry(e.what()));
    }
  }
  return map;
}

std::vector<RegionMap> scan_noon(const std::vector<int>& n_list, const std::vector<double>& alpha1_grid,
                                 const std::vector<double>& alpha2_grid, const ScanSettings& settings) {
  std::vector<RegionMap> maps;
  for (int n : n_list) {
    RegionMap map;
    map.axis1 = "alpha1";
    map.axis2 = "alpha2";
    map.values1 = alpha1_grid;
    map.values2 = alpha2_grid;
    map.columns = {"renyi-strong"};
    map.cells.assign(alpha1_grid.size() * alpha2_grid.size(), std::vector<CellEntry>(1));
    map.metadata = {{"state", "noon"},
                    {"n_photons", std::to_string(n)},
                    {"theta", "0"},
                    {"grid_points", std::to_string(settings.grid.points)},
                    {"tolerance", fmt(settings.tolerance)}};
    map.validate();
    try {
      NoonParams params;
      params.n_photons = n;
      params.max_photons = std::max(params.max_photons, n);
      PreparedState state(StateDescriptor{params}, settings.grid);
      const MarginalSet m = global_marginals(state.joint({0.0, 0.0}), state.joint({kPi / 2, kPi / 2}));
      const auto total = static_cast<std::int64_t>(map.cells.size());
#pragma omp parallel for schedule(dynamic)
      for (std::int64_t k = 0; k < total; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const double a1 = alpha1_grid[idx / alpha2_grid.size()];
        const double a2 = alpha2_grid[idx % alpha2_grid.size()];
        if (auto reason = StrongRenyiExponents::forbidden_reason(a1, a2)) {
          map.cells[idx][0] = {kNaN, CellFlag::forbidden, *reason};
          continue;
        }
        try {
          map.cells[idx][0] = summarize(
              renyi_strong(m, StrongRenyiExponents::from_alphas(a1, a2), true, settings.tolerance));
        } catch (const std::exception& e) {
          map.cells[idx][0] = failed_entry(e.what());
        }
      }
    } catch (const std::exception& e) {
      for (auto& c : map.cells) c[0] = failed_entry(e.what());
    }
    maps.push_back(std::move(map));
  }
  return maps;
}

RegionMap scan_cat(const std::vector<double>& nu_grid, const std::vector<double>& p_grid,
                   const std::vector<double>& alpha_list, const ScanSettings& settings) {
  RegionMap map;
  map.axis1 = "nu";
  map.axis2 = "p";
  map.values1 = nu_grid;
  map.values2 = p_grid;
  map.columns.push_back("shannon-weak");
  for (double a : alpha_list) map.columns.push_back(alpha_column(a));
  map.columns.push_back("detecting-alpha");
  const std::size_t width = map.columns.size();
  map.cells.assign(nu_grid.size() * p_grid.size(), std::vector<CellEntry>(width));
  map.metadata = {{"state", "cat"},
                  {"nu", "real"},
                  {"grid_points", std::to_string(settings.grid.points)},
                  {"tolerance", fmt(settings.tolerance)}};
  map.validate();

  const auto total = static_cast<std::int64_t>(map.cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < total; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    auto& cell = map.cells[idx];
    try {
      CatParams params{cplx(nu_grid[idx / p_grid.size()], 0.0), p_grid[idx % p_grid.size()]};
      PreparedState state(StateDescriptor{params}, settings.grid);
      const MarginalSet m = global_marginals(state.joint({0.0, 0.0}), state.joint({kPi / 2, kPi / 2}));
      cell[0] = summarize(shannon_weak(m, settings.tolerance));
      double best = kNaN;
      for (std::size_t a = 0; a < alpha_list.size(); ++a) {
        try {
          cell[a + 1] = summarize(renyi_weak(m, EntropyOrder(alpha_list[a]), settings.tolerance));
          if (cell[a + 1].detected() && !(alpha_list[a] >= best)) best = alpha_list[a];
        } catch (const std::exception& e) {
          cell[a + 1] = failed_entry(e.what());
        }
      }
      cell[width - 1] = {best, std::isnan(best) ? CellFlag::undetected : CellFlag::detected, {}};
    } catch (const std::exception& e) {
      cell.assign(width, failed_entry(e.what()));
    }
  }
  return map;
}

// ------------------------------------------------------------- boundaries

BoundaryResult find_boundary(const std::function<double(double)>& margin, double lo, double hi, double width) {
  if (!(hi > lo)) throw std::invalid_argument("find_boundary needs lo < hi");
  if (!(width > 0)) throw std::invalid_argument("find_boundary needs a positive width");
  BoundaryResult r;
  r.lo = lo;
  r.hi = hi;
  double m_lo = margin(lo);
  double m_hi = margin(hi);
  r.evaluations = 2;
  const bool neg_lo = m_lo < 0;
  if (neg_lo == (m_hi < 0)) {
    r.message = "no sign change of the margin on the interval";
    return r;
  }
  while (r.hi - r.lo >= width) {
    const double mid = 0.5 * (r.lo + r.hi);
    const double m = margin(mid);
    ++r.evaluations;
    if ((m < 0) == neg_lo) {
      r.lo = mid;
    } else {
      r.hi = mid;
    }
  }
  r.found = true;
  r.location = 0.5 * (r.lo + r.hi);
  return r;
}

double hermite_gauss_margin(HermiteGaussCriterion criterion, EntropyOrder alpha, double ratio,
                            const GridSettings& grid) {
  PreparedState state(StateDescriptor{HermiteGaussParams::from_ratio(ratio)}, grid);
  const JointDensity2D jr = state.joint({0.0, 0.0});
  const JointDensity2D js = state.joint({kPi / 2, kPi / 2});
  if (criterion == HermiteGaussCriterion::simon_ppt) {
    const auto cm = covariance_from_joints(jr, js, state.joint({kPi / 4, kPi / 4}), state.joint({0.0, kPi / 2}));
    return simon_ppt(cm).margin;
  }
  const MarginalSet m = global_marginals(jr, js);
  std::vector<WitnessVerdict> verdicts;
  switch (criterion) {
    case HermiteGaussCriterion::shannon_weak: verdicts = shannon_weak(m); break;
    case HermiteGaussCriterion::mgvt: verdicts = mgvt(m); break;
    case HermiteGaussCriterion::renyi_weak_union: verdicts = renyi_weak(m, alpha); break;
    case HermiteGaussCriterion::renyi_weak_alpha_on_plus:
      for (WitnessVerdict& v : renyi_weak(m, alpha)) {
        const bool on_plus = (v.pairing == Pairing::plus_minus && v.assignment == Assignment::alpha_on_r) ||
                             (v.pairing == Pairing::minus_plus && v.assignment == Assignment::alpha_on_s);
        if (on_plus) verdicts.push_back(std::move(v));
      }
      break;
    default: break;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const WitnessVerdict& v : verdicts) best = std::min(best, v.margin);
  return best;
}

BoundaryResult find_hermite_gauss_boundary(HermiteGaussCriterion criterion, EntropyOrder alpha, double lo, double hi,
                                           const GridSettings& grid, double width) {
  return find_boundary([&](double ratio) { return hermite_gauss_margin(criterion, alpha, ratio, grid); }, lo, hi,
                       width);
}

}  // namespace cvw

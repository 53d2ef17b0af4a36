#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvw/evaluate.hpp"
#include "cvw/states.hpp"

namespace cvw {

enum class CellFlag { undetected, detected, forbidden, failed };

struct CellEntry {
  double margin = 0.0;
  CellFlag flag = CellFlag::undetected;
  std::string message;

  bool detected() const { return flag == CellFlag::detected; }
};

/// Detection map over a 2D parameter grid. Cells are stored row-major with
/// axis1 as the slow index; each cell has one entry per column.
struct RegionMap {
  std::string axis1;
  std::string axis2;
  std::vector<double> values1;
  std::vector<double> values2;
  std::vector<std::string> columns;
  std::vector<std::vector<CellEntry>> cells;
  /// Settings worth keeping next to the data (grid size, tolerance, ...).
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t index(std::size_t i, std::size_t j) const { return i * values2.size() + j; }
  const CellEntry& at(std::size_t i, std::size_t j, std::size_t column) const { return cells[index(i, j)][column]; }
  std::optional<std::size_t> column(const std::string& name) const;

  /// One row per cell: axis values, then margin and flag per column. Flags are
  /// 0/1, FPR for forbidden cells and ERR for failures (margin "nan").
  std::string to_csv() const;
  std::string to_json() const;
  /// Throws std::invalid_argument when the shape or axis ordering is broken.
  void validate() const;
};

/// n equally spaced values from lo to hi inclusive (n = 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, std::size_t n);
/// lo, lo + step, ... up to hi (inclusive within step/1000), rounded to 12 digits.
std::vector<double> arange(double lo, double hi, double step);

struct ScanSettings {
  GridSettings grid{1024, 0.0};
  double tolerance = kDefaultTolerance;
};

/// Per (α, ratio) cell: numeric weak Rényi (union over pairings and
/// assignments), the closed-form thresholds, and the Simon test.
/// Columns: renyi-weak, threshold, simon.
RegionMap scan_hermite_gauss(const std::vector<double>& alpha_grid, const std::vector<double>& ratio_grid,
                             const ScanSettings& settings = {});

/// Strong Rényi detection surface for each N at θ = 0, one map per N.
/// Exponent cells outside the allowed region are marked forbidden.
std::vector<RegionMap> scan_noon(const std::vector<int>& n_list, const std::vector<double>& alpha1_grid,
                                 const std::vector<double>& alpha2_grid, const ScanSettings& settings = {});

/// Weak Shannon and weak Rényi (each α in the list) per (ν, p) cell, ν real.
/// Columns: shannon-weak, renyi-weak@<α>..., detecting-alpha (margin holds the
/// smallest detecting α, nan when none).
RegionMap scan_cat(const std::vector<double>& nu_grid, const std::vector<double>& p_grid,
                   const std::vector<double>& alpha_list, const ScanSettings& settings = {});

// ------------------------------------------------------------- boundaries

struct BoundaryResult {
  bool found = false;
  double location = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int evaluations = 0;
  std::string message;
};

/// Bisection on the sign of margin(x) until the bracket is narrower than
/// `width`. Returns found = false when the margin has the same sign at both ends.
BoundaryResult find_boundary(const std::function<double(double)>& margin, double lo, double hi,
                             double width = 1e-4);

enum class HermiteGaussCriterion {
  /// Weak Rényi with α on the non-Gaussian "+" marginal: (R+,S-) with α on R
  /// and (R-,S+) with α on S. This is the combination the closed form describes.
  renyi_weak_alpha_on_plus,
  /// Weak Rényi, all four pairings and assignments.
  renyi_weak_union,
  shannon_weak,
  mgvt,
  simon_ppt,
};

/// Smallest margin of the selected criterion for the Hermite-Gauss state with
/// σ-/σ+ = ratio and σ+σ- = 1.
double hermite_gauss_margin(HermiteGaussCriterion criterion, EntropyOrder alpha, double ratio,
                            const GridSettings& grid = {1024, 0.0});

BoundaryResult find_hermite_gauss_boundary(HermiteGaussCriterion criterion, EntropyOrder alpha, double lo, double hi,
                                           const GridSettings& grid = {1024, 0.0}, double width = 1e-4);

}  // namespace cvw

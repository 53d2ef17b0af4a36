#include "cvw/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cvw/evaluate.hpp"
#include "cvw/report.hpp"
#include "cvw/samples.hpp"
#include "cvw/scans.hpp"

namespace cvw {

namespace {

namespace fs = std::filesystem;

std::string output_path(const RunConfig& c, const std::string& suffix) {
  return (fs::path(c.output_dir) / (c.resolved_name() + suffix)).string();
}

void write_text(const std::string& path, const std::string& text, CommandOutput& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
  result.files.push_back(path);
}

void write_config(const RunConfig& c, CommandOutput& result) { write_text(output_path(c, ".config.ini"), c.to_ini(), result); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

KeyValues state_context(const RunConfig& c, const PreparedState& s) {
  KeyValues kv{{"state", s.descriptor().label()},
               {"grid_points", std::to_string(s.grid().n_points)},
               {"grid_spacing", fmt(s.grid().spacing)},
               {"grid_min", fmt(s.grid().min)},
               {"tolerance", fmt(c.evaluation.tolerance)},
               {"theta1", fmt(c.evaluation.angles.theta1)},
               {"theta2", fmt(c.evaluation.angles.theta2)}};
  for (std::size_t k = 0; k < s.diagnostics().warnings.size(); ++k)
    kv.emplace_back("warning_" + std::to_string(k), s.diagnostics().warnings[k]);
  return kv;
}

void print_region_summary(const RegionMap& map, std::ostream& out) {
  for (std::size_t c = 0; c < map.columns.size(); ++c) {
    std::size_t detected = 0, forbidden = 0, failed = 0;
    for (const auto& cell : map.cells) {
      switch (cell[c].flag) {
        case CellFlag::detected: ++detected; break;
        case CellFlag::forbidden: ++forbidden; break;
        case CellFlag::failed: ++failed; break;
        default: break;
      }
    }
    out << "  " << map.columns[c] << ": " << detected << "/" << map.cells.size() << " cells detected";
    if (forbidden) out << ", " << forbidden << " forbidden";
    if (failed) out << ", " << failed << " failed";
    out << "\n";
  }
}

}  // namespace

CommandOutput cmd_eval(const RunConfig& config, std::ostream& out) {
  CommandOutput result;
  PreparedState state(config.state, config.grid);
  const auto verdicts = evaluate_all(state, config.evaluation);
  write_text(output_path(config, ".json"), verdicts_to_json(verdicts, state_context(config, state)), result);
  write_config(config, result);
  out << state.descriptor().label() << " on " << state.grid().n_points << " points\n";
  for (const auto& w : state.diagnostics().warnings) out << "warning: " << w << "\n";
  for (const auto& line : criterion_summary(verdicts)) out << line << "\n";
  return result;
}

CommandOutput cmd_scan(const RunConfig& config, std::ostream& out) {
  CommandOutput result;
  const ScanSettings settings{config.grid, config.evaluation.tolerance};
  std::vector<std::pair<std::string, RegionMap>> maps;
  switch (config.scan_kind) {
    case ScanKind::hermite_gauss:
      maps.emplace_back("", scan_hermite_gauss(config.scan_alphas, config.ratios, settings));
      break;
    case ScanKind::cat:
      maps.emplace_back("", scan_cat(config.nu_grid, config.p_grid, config.scan_alphas, settings));
      break;
    case ScanKind::noon: {
      auto per_n = scan_noon(config.noon_n, config.alpha1_grid, config.alpha2_grid, settings);
      for (std::size_t k = 0; k < per_n.size(); ++k)
        maps.emplace_back("-N" + std::to_string(config.noon_n[k]), std::move(per_n[k]));
      break;
    }
  }
  for (auto& [suffix, map] : maps) {
    write_text(output_path(config, suffix + ".csv"), map.to_csv(), result);
    write_text(output_path(config, suffix + ".json"), map.to_json(), result);
    out << scan_kind_name(config.scan_kind) << suffix << " (" << map.values1.size() << " x " << map.values2.size()
        << " cells)\n";
    print_region_summary(map, out);
  }
  write_config(config, result);
  return result;
}

CommandOutput cmd_ingest(const RunConfig& config, std::ostream& out) {
  CommandOutput result;
  const SampleTable r = read_sample_table(config.r_samples);
  const SampleTable s = read_sample_table(config.s_samples);
  const IngestedDistributions d =
      ingest_samples(r, s, config.delta, config.big_delta, config.evaluation.bin_offset, config.min_samples);
  const auto verdicts = evaluate_ingested(d, config.evaluation.discrete_alphas, config.evaluation.tolerance);
  KeyValues context{{"r_samples", config.r_samples},
                    {"s_samples", config.s_samples},
                    {"r_count", std::to_string(d.r_count)},
                    {"s_count", std::to_string(d.s_count)},
                    {"delta", fmt(config.delta)},
                    {"Delta", fmt(config.big_delta)}};
  write_text(output_path(config, ".json"), verdicts_to_json(verdicts, context), result);
  write_config(config, result);
  out << "ingested " << d.r_count << " r rows and " << d.s_count << " s rows\n";
  for (const auto& w : d.warnings) out << "warning: " << w << "\n";
  for (const auto& line : criterion_summary(verdicts)) out << line << "\n";
  return result;
}

CommandOutput cmd_sample(const RunConfig& config, std::ostream& out) {
  CommandOutput result;
  PreparedState state(config.state, config.grid);
  const JointDensity2D jr = state.joint(config.evaluation.angles);
  const JointDensity2D js = state.joint(config.evaluation.angles.conjugate());
  const SampleTable r = sample_joint(jr, config.sample_count, config.seed);
  const SampleTable s = sample_joint(js, config.sample_count, config.seed + 1);
  for (auto [table, suffix] : {std::pair{&r, "-r.csv"}, std::pair{&s, "-s.csv"}}) {
    const std::string path = output_path(config, suffix);
    write_sample_table(*table, path);
    result.files.push_back(path);
  }
  write_config(config, result);
  out << "sampled " << config.sample_count << " rows per quadrature pair from " << state.descriptor().label()
      << "\n";
  return result;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
#ifdef _OPENMP
    if (config.workers > 0) omp_set_num_threads(config.workers);
#endif
    fs::create_directories(config.output_dir);
    CommandOutput result;
    switch (config.command) {
      case Command::eval: result = cmd_eval(config, out); break;
      case Command::scan: result = cmd_scan(config, out); break;
      case Command::ingest: result = cmd_ingest(config, out); break;
      case Command::sample: result = cmd_sample(config, out); break;
    }
    for (const auto& f : result.files) out << "wrote " << f << "\n";
    return kExitOk;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace cvw

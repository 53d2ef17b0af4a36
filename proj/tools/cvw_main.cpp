// Command-line front end: eval, scan, ingest, sample, run.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvw/commands.hpp"
#include "cvw/evaluate.hpp"
#include "cvw/run_config.hpp"
#include "cvw/scans.hpp"

namespace {

using cvw::ConfigError;
using cvw::RunConfig;

/// Options are parsed into side storage and applied on top of the defaults or
/// the --config file, in registration order, only when given on the line.
class Overrides {
 public:
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, const std::string& help,
                   std::function<void(RunConfig&, const T&)> apply) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    entries_.push_back({opt, [value, apply](RunConfig& c) { apply(c, *value); }});
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, const std::string& help,
                    std::function<void(RunConfig&)> apply) {
    CLI::Option* opt = app->add_flag(name, help);
    entries_.push_back({opt, std::move(apply)});
    return opt;
  }

  void apply(RunConfig& c) const {
    for (const auto& e : entries_)
      if (e.option->count() > 0) e.apply(c);
  }

 private:
  struct Entry {
    CLI::Option* option;
    std::function<void(RunConfig&)> apply;
  };
  std::vector<Entry> entries_;
};

template <class Params>
Params& params_of(RunConfig& c, const char* flag) {
  auto* p = std::get_if<Params>(&c.state.params);
  if (p == nullptr)
    throw ConfigError(std::string("option ") + flag + " does not apply to state '" + c.state.family() + "'");
  return *p;
}

void add_state_options(CLI::App* app, Overrides& o) {
  o.add<std::string>(app, "--state", "State family: vacuum, squeezed, thermal, tmsv, hermite-gauss, noon, cat",
                     [](RunConfig& c, const std::string& f) { c.state = cvw::default_state(f); });
  o.add<double>(app, "--sigma-plus", "Hermite-Gauss width sigma+",
                [](RunConfig& c, const double& v) { params_of<cvw::HermiteGaussParams>(c, "--sigma-plus").sigma_plus = v; });
  o.add<double>(app, "--sigma-minus", "Hermite-Gauss width sigma-", [](RunConfig& c, const double& v) {
    params_of<cvw::HermiteGaussParams>(c, "--sigma-minus").sigma_minus = v;
  });
  o.add<double>(app, "--ratio", "Hermite-Gauss sigma-/sigma+ with sigma+ sigma- = 1", [](RunConfig& c, const double& v) {
    params_of<cvw::HermiteGaussParams>(c, "--ratio") = cvw::HermiteGaussParams::from_ratio(v);
  });
  o.add<int>(app, "--max-photons", "Largest allowed NOON photon number", [](RunConfig& c, const int& v) {
    params_of<cvw::NoonParams>(c, "--max-photons").max_photons = v;
  });
  o.add<double>(app, "--nu", "Cat amplitude (real part)", [](RunConfig& c, const double& v) {
    auto& p = params_of<cvw::CatParams>(c, "--nu");
    p.nu = cvw::cplx(v, p.nu.imag());
  });
  o.add<double>(app, "--nu-imag", "Cat amplitude (imaginary part)", [](RunConfig& c, const double& v) {
    auto& p = params_of<cvw::CatParams>(c, "--nu-imag");
    p.nu = cvw::cplx(p.nu.real(), v);
  });
  o.add<double>(app, "--p", "Cat dephasing in [0, 1]",
                [](RunConfig& c, const double& v) { params_of<cvw::CatParams>(c, "--p").p = v; });
  o.add<double>(app, "--r1", "Squeezing of mode 1",
                [](RunConfig& c, const double& v) { params_of<cvw::SqueezedProductParams>(c, "--r1").r1 = v; });
  o.add<double>(app, "--r2", "Squeezing of mode 2",
                [](RunConfig& c, const double& v) { params_of<cvw::SqueezedProductParams>(c, "--r2").r2 = v; });
  o.add<double>(app, "--r", "Two-mode squeezing",
                [](RunConfig& c, const double& v) { params_of<cvw::TwoModeSqueezedParams>(c, "--r").r = v; });
  o.add<double>(app, "--n1", "Thermal occupation of mode 1",
                [](RunConfig& c, const double& v) { params_of<cvw::ThermalParams>(c, "--n1").n1 = v; });
  o.add<double>(app, "--n2", "Thermal occupation of mode 2",
                [](RunConfig& c, const double& v) { params_of<cvw::ThermalParams>(c, "--n2").n2 = v; });
}

void add_common_options(CLI::App* app, Overrides& o) {
  o.add<std::size_t>(app, "--points", "Grid points per axis (power of two)",
                     [](RunConfig& c, const std::size_t& v) { c.grid.points = v; });
  o.add<double>(app, "--half-width", "Grid half-width (0 picks one from the state)",
                [](RunConfig& c, const double& v) { c.grid.half_width = v; });
  o.add<double>(app, "--theta1", "Rotation angle of mode 1",
                [](RunConfig& c, const double& v) { c.evaluation.angles.theta1 = v; });
  o.add<double>(app, "--theta2", "Rotation angle of mode 2",
                [](RunConfig& c, const double& v) { c.evaluation.angles.theta2 = v; });
  o.add<double>(app, "--tolerance", "Detection tolerance on the margin",
                [](RunConfig& c, const double& v) { c.evaluation.tolerance = v; });
  o.add<std::string>(app, "--output-dir", "Directory for result files (overrides CVW_OUTPUT_DIR)",
                     [](RunConfig& c, const std::string& v) { c.output_dir = v; });
  o.add<std::string>(app, "--output-name", "Base name of result files",
                     [](RunConfig& c, const std::string& v) { c.output_name = v; });
  o.add<int>(app, "--workers", "Worker threads (0 = all)", [](RunConfig& c, const int& v) { c.workers = v; });
  o.add<std::uint64_t>(app, "--seed", "Seed for synthetic sampling",
                       [](RunConfig& c, const std::uint64_t& v) { c.seed = v; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic entanglement criteria for two-mode continuous-variable states"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  Overrides o;

  auto* eval = app.add_subcommand("eval", "Evaluate criteria on one state");
  auto* scan = app.add_subcommand("scan", "Parameter scan: hermite-gauss, noon or cat");
  auto* ingest = app.add_subcommand("ingest", "Discrete criteria from sampled quadrature files");
  auto* sample = app.add_subcommand("sample", "Write synthetic quadrature samples of a state");
  auto* run = app.add_subcommand("run", "Repeat a run from an emitted config file");

  for (auto* sub : {eval, scan, ingest, sample, run}) sub->add_option("--config", config_path, "Config file");
  run->get_option("--config")->required();
  for (auto* sub : {eval, scan, ingest, sample}) add_common_options(sub, o);
  for (auto* sub : {eval, sample}) add_state_options(sub, o);
  add_common_options(run, o);

  // eval
  o.add<int>(eval, "--n", "NOON photon number", [](RunConfig& c, const int& v) {
    auto& p = params_of<cvw::NoonParams>(c, "--n");
    p.n_photons = v;
    if (v > p.max_photons) p.max_photons = v;
  });
  o.add<std::vector<std::string>>(eval, "--criterion", "Criterion to run (repeatable)",
                                  [](RunConfig& c, const std::vector<std::string>& names) {
                                    c.evaluation.criteria.clear();
                                    for (const auto& n : names) {
                                      auto id = cvw::parse_criterion(n);
                                      if (!id) throw ConfigError("unknown criterion '" + n + "'");
                                      c.evaluation.criteria.push_back(*id);
                                    }
                                  });
  o.flag(eval, "--all-criteria", "Run every criterion",
         [](RunConfig& c) { c.evaluation.criteria = cvw::all_criteria(); });
  o.add<std::vector<double>>(eval, "--alpha", "Order for renyi-weak (repeatable)",
                             [](RunConfig& c, const std::vector<double>& v) { c.evaluation.alphas = v; });
  auto a1 = std::make_shared<double>(2.0);
  auto a2 = std::make_shared<double>(2.0);
  auto* a1_opt = eval->add_option("--alpha1", *a1, "renyi-strong order of mode 1");
  auto* a2_opt = eval->add_option("--alpha2", *a2, "renyi-strong order of mode 2");
  o.add<std::vector<double>>(eval, "--discrete-alpha", "Order for renyi-discrete and tsallis (repeatable)",
                             [](RunConfig& c, const std::vector<double>& v) { c.evaluation.discrete_alphas = v; });
  o.add<std::vector<double>>(eval, "--delta", "Position-side bin width (repeatable)",
                             [](RunConfig& c, const std::vector<double>& v) { c.evaluation.deltas = v; });
  o.add<std::vector<double>>(eval, "--Delta", "Momentum-side bin width (repeatable)",
                             [](RunConfig& c, const std::vector<double>& v) { c.evaluation.big_deltas = v; });
  o.add<double>(eval, "--bin-offset", "Left edge of bin 0",
                [](RunConfig& c, const double& v) { c.evaluation.bin_offset = v; });

  // scan
  std::string scan_kind;
  scan->add_option("kind", scan_kind, "hermite-gauss, noon or cat")->required();
  double alpha_min = 0.501, alpha_max = 4.0, ratio_min = 0.4, ratio_max = 2.5, nu_min = 0.0, nu_max = 3.0;
  std::size_t alpha_steps = 30, ratio_steps = 43, nu_steps = 50, p_steps = 50;
  double a1_min = 1.05, a1_max = 4.0, a2_min = 1.05, a2_max = 4.0, a_step = 0.05;
  std::vector<double> scan_alpha_list;
  std::string n_list;
  auto* o_alpha_min = scan->add_option("--alpha-min", alpha_min, "Smallest alpha (hermite-gauss)");
  auto* o_alpha_max = scan->add_option("--alpha-max", alpha_max, "Largest alpha (hermite-gauss)");
  auto* o_alpha_steps = scan->add_option("--alpha-steps", alpha_steps, "Number of alpha values (hermite-gauss)");
  auto* o_alpha_list = scan->add_option("--alpha", scan_alpha_list, "Explicit alpha values (repeatable)");
  auto* o_ratio_min = scan->add_option("--ratio-min", ratio_min, "Smallest sigma-/sigma+");
  auto* o_ratio_max = scan->add_option("--ratio-max", ratio_max, "Largest sigma-/sigma+");
  auto* o_ratio_steps = scan->add_option("--ratio-steps", ratio_steps, "Number of ratio values");
  auto* o_nu_min = scan->add_option("--nu-min", nu_min, "Cat amplitude range start (exclusive)");
  auto* o_nu_max = scan->add_option("--nu-max", nu_max, "Largest cat amplitude");
  auto* o_nu_steps = scan->add_option("--nu-steps", nu_steps, "Number of cat amplitudes");
  auto* o_p_steps = scan->add_option("--p-steps", p_steps, "Number of dephasing values on [0, 1]");
  auto* o_n = scan->add_option("--n", n_list, "NOON photon numbers, e.g. 1..6");
  auto* o_a1_min = scan->add_option("--alpha1-min", a1_min, "noon: alpha1 start");
  auto* o_a1_max = scan->add_option("--alpha1-max", a1_max, "noon: alpha1 end");
  auto* o_a2_min = scan->add_option("--alpha2-min", a2_min, "noon: alpha2 start");
  auto* o_a2_max = scan->add_option("--alpha2-max", a2_max, "noon: alpha2 end");
  auto* o_a_step = scan->add_option("--alpha-step", a_step, "noon: exponent grid step");

  // ingest
  o.add<std::string>(ingest, "--r-samples", "Position-type samples (header q1,q2)",
                     [](RunConfig& c, const std::string& v) { c.r_samples = v; });
  o.add<std::string>(ingest, "--s-samples", "Momentum-type samples (header q1,q2)",
                     [](RunConfig& c, const std::string& v) { c.s_samples = v; });
  o.add<double>(ingest, "--delta", "Bin width for r", [](RunConfig& c, const double& v) { c.delta = v; });
  o.add<double>(ingest, "--Delta", "Bin width for s", [](RunConfig& c, const double& v) { c.big_delta = v; });
  o.add<double>(ingest, "--bin-offset", "Left edge of bin 0",
                [](RunConfig& c, const double& v) { c.evaluation.bin_offset = v; });
  o.add<std::vector<double>>(ingest, "--alpha", "Order (repeatable)",
                             [](RunConfig& c, const std::vector<double>& v) { c.evaluation.discrete_alphas = v; });
  o.add<std::size_t>(ingest, "--min-samples", "Warn below this many rows",
                     [](RunConfig& c, const std::size_t& v) { c.min_samples = v; });

  // sample
  o.add<int>(sample, "--n", "NOON photon number", [](RunConfig& c, const int& v) {
    auto& p = params_of<cvw::NoonParams>(c, "--n");
    p.n_photons = v;
    if (v > p.max_photons) p.max_photons = v;
  });
  o.add<std::size_t>(sample, "--count", "Rows per file", [](RunConfig& c, const std::size_t& v) { c.sample_count = v; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cvw::kExitConfig;
  }

  try {
    const bool from_file = !config_path.empty();
    RunConfig c = from_file ? RunConfig::load(config_path) : RunConfig{};
    if (*eval) c.command = cvw::Command::eval;
    if (*scan) c.command = cvw::Command::scan;
    if (*ingest) c.command = cvw::Command::ingest;
    if (*sample) c.command = cvw::Command::sample;

    if (const char* env = std::getenv("CVW_OUTPUT_DIR"); env != nullptr && *env != '\0') c.output_dir = env;

    if (*scan) {
      c.scan_kind = cvw::parse_scan_kind(scan_kind);
      if (!from_file) c.grid.points = 1024;
      const bool have_alpha_range = o_alpha_min->count() || o_alpha_max->count() || o_alpha_steps->count();
      if (o_alpha_list->count()) {
        c.scan_alphas = scan_alpha_list;
      } else if (have_alpha_range) {
        c.scan_alphas = cvw::linspace(alpha_min, alpha_max, alpha_steps);
      } else if (c.scan_alphas.empty()) {
        c.scan_alphas = cvw::default_alpha_list();
      }
      if (o_ratio_min->count() || o_ratio_max->count() || o_ratio_steps->count() || c.ratios.empty())
        c.ratios = cvw::linspace(ratio_min, ratio_max, ratio_steps);
      if (o_nu_min->count() || o_nu_max->count() || o_nu_steps->count() || c.nu_grid.empty()) {
        c.nu_grid.clear();
        for (std::size_t k = 1; k <= nu_steps; ++k)
          c.nu_grid.push_back(nu_min + (nu_max - nu_min) * static_cast<double>(k) / static_cast<double>(nu_steps));
      }
      if (o_p_steps->count() || c.p_grid.empty()) c.p_grid = cvw::linspace(0.0, 1.0, p_steps);
      if (o_n->count()) {
        c.noon_n = cvw::parse_int_list(n_list);
      } else if (c.noon_n.empty()) {
        c.noon_n = {1, 2, 3, 4, 5, 6};
      }
      if (o_a1_min->count() || o_a1_max->count() || o_a_step->count() || c.alpha1_grid.empty())
        c.alpha1_grid = cvw::arange(a1_min, a1_max, a_step);
      if (o_a2_min->count() || o_a2_max->count() || o_a_step->count() || c.alpha2_grid.empty())
        c.alpha2_grid = cvw::arange(a2_min, a2_max, a_step);
    }

    o.apply(c);
    if (a1_opt->count() || a2_opt->count()) c.evaluation.strong_exponents = {{*a1, *a2}};
    return cvw::run_command(c, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cvw::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cvw::kExitFailure;
  }
}

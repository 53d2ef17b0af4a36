#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvw/evaluate.hpp"
#include "cvw/states.hpp"

namespace cvw {

/// Bad configuration: unknown key, unparsable value, inconsistent settings.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { eval, scan, ingest, sample };
enum class ScanKind { hermite_gauss, noon, cat };

std::string command_name(Command c);
Command parse_command(const std::string& s);
std::string scan_kind_name(ScanKind k);
ScanKind parse_scan_kind(const std::string& s);

/// State family from its command-line name with default parameters.
StateDescriptor default_state(const std::string& family);

/// Everything a run needs. Serializes to a sectioned key = value file that
/// parses back to an identical object.
struct RunConfig {
  Command command = Command::eval;
  StateDescriptor state{VacuumParams{}};
  GridSettings grid{};
  EvaluationConfig evaluation{};

  ScanKind scan_kind = ScanKind::hermite_gauss;
  /// Hermite-Gauss: the α axis. Cat: the α list.
  std::vector<double> scan_alphas;
  std::vector<double> ratios;
  std::vector<int> noon_n;
  std::vector<double> alpha1_grid;
  std::vector<double> alpha2_grid;
  std::vector<double> nu_grid;
  std::vector<double> p_grid;

  std::string r_samples;
  std::string s_samples;
  double delta = 0.1;
  double big_delta = 0.1;
  std::size_t min_samples = 1000;

  std::size_t sample_count = 100000;

  std::string output_dir = ".";
  /// Base name of output files; empty picks one from the command.
  std::string output_name;
  int workers = 0;
  std::uint64_t seed = 1;

  std::string to_ini() const;
  static RunConfig from_ini(const std::string& text);
  static RunConfig load(const std::string& path);

  /// Throws ConfigError for settings no command could run with.
  void validate() const;
  /// Output base name after defaults.
  std::string resolved_name() const;
};

/// Comma-separated list parsing shared with the command line.
std::vector<double> parse_double_list(const std::string& s);
/// Integers and inclusive ranges: "1..6", "1,3,5", "2..4,8".
std::vector<int> parse_int_list(const std::string& s);

}  // namespace cvw

#include <doctest.h>

#include <cmath>

#include "cvw/run_config.hpp"

using namespace cvw;

namespace {

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("config round trip for every state family and command") {
  std::vector<StateDescriptor> states{
      StateDescriptor{VacuumParams{}},
      StateDescriptor{SqueezedProductParams{0.4, -0.7}},
      StateDescriptor{ThermalParams{0.5, 1.5}},
      StateDescriptor{HermiteGaussParams::from_ratio(1.0 / 3.0)},
      StateDescriptor{NoonParams{4, 12}},
      StateDescriptor{CatParams{{1.5, -0.25}, 0.3}},
      StateDescriptor{TwoModeSqueezedParams{0.8}},
  };
  for (const auto& s : states) {
    CAPTURE(s.label());
    RunConfig c;
    c.state = s;
    c.grid = {2048, 11.5};
    c.evaluation.alphas = {0.501, 1.0 / 3.0 + 0.5, 4.0};
    c.evaluation.strong_exponents = {{2.0, 2.0}, {0.75, 0.8}};
    c.evaluation.criteria = {CriterionId::renyi_weak, CriterionId::simon_ppt};
    c.evaluation.angles = {0.1, kPi / 7};
    c.evaluation.tolerance = 1e-5;
    c.seed = 123456789012345ULL;
    c.workers = 3;
    c.output_dir = "some dir/out";
    c.output_name = "name";
    const std::string text = c.to_ini();
    const RunConfig back = RunConfig::from_ini(text);
    CHECK(back.to_ini() == text);
    CHECK(back.state.label() == s.label());
    CHECK(back.evaluation.alphas == c.evaluation.alphas);
    CHECK(back.evaluation.angles.theta2 == c.evaluation.angles.theta2);
    CHECK(back.seed == c.seed);
  }

  RunConfig scan;
  scan.command = Command::scan;
  scan.scan_kind = ScanKind::noon;
  scan.noon_n = {1, 2, 6};
  scan.alpha1_grid = {1.05, 1.1};
  scan.alpha2_grid = {2.0};
  scan.nu_grid = {0.06, 3.0};
  scan.p_grid = {0.0, 1.0};
  const auto back = RunConfig::from_ini(scan.to_ini());
  CHECK(back.command == Command::scan);
  CHECK(back.scan_kind == ScanKind::noon);
  CHECK(back.noon_n == scan.noon_n);
  CHECK(back.alpha1_grid == scan.alpha1_grid);
  CHECK(back.to_ini() == scan.to_ini());
}

TEST_CASE("config parsing rejects unknown keys, sections and bad values") {
  const std::string base = RunConfig{}.to_ini();
  CHECK_NOTHROW(RunConfig::from_ini(base));
  CHECK_THROWS_AS(RunConfig::from_ini(base + "\n[extra]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_ini(replace(base, "points = ", "pionts = ")), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_ini(replace(base, "command = eval", "command = fly")), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_ini(replace(base, "family = vacuum", "family = unicorn")), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_ini(replace(base, "tolerance = 0.0001", "tolerance = small")), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_ini("points = 3\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_ini("[grid\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_ini(replace(base, "strong_exponents = 2:2", "strong_exponents = 2")), ConfigError);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("list parsing") {
  CHECK(parse_int_list("1..6") == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(parse_int_list("1,3,5") == std::vector<int>{1, 3, 5});
  CHECK(parse_int_list("2..4,8") == std::vector<int>{2, 3, 4, 8});
  CHECK_THROWS_AS(parse_int_list("4..2"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("x"), ConfigError);
  CHECK(parse_double_list("0.5,1,2e0") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(parse_double_list("").empty());
  CHECK_THROWS_AS(parse_double_list("1,,2"), ConfigError);
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.grid.points = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.workers = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.command = Command::ingest;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.r_samples = "r.csv";
  c.s_samples = "s.csv";
  CHECK_NOTHROW(c.validate());
  c.delta = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.command = Command::scan;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.scan_alphas = {1.0};
  c.ratios = {0.5};
  CHECK_NOTHROW(c.validate());
  c = RunConfig{};
  c.state = StateDescriptor{NoonParams{0, 10}};
  CHECK_THROWS(c.validate());
  CHECK(RunConfig{}.resolved_name().size() > 0);
}

TEST_CASE("command and scan kind names round trip") {
  for (Command c : {Command::eval, Command::scan, Command::ingest, Command::sample})
    CHECK(parse_command(command_name(c)) == c);
  for (ScanKind k : {ScanKind::hermite_gauss, ScanKind::noon, ScanKind::cat}) CHECK(parse_scan_kind(scan_kind_name(k)) == k);
  CHECK_THROWS_AS(parse_scan_kind("gauss"), ConfigError);
  for (const char* f : {"vacuum", "hermite-gauss", "noon", "cat", "thermal"}) CHECK_NOTHROW(default_state(f));
}

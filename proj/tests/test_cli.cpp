#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cvw_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Result run(const std::string& args, const fs::path& dir, const std::string& env = "") {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = "cd '" + dir.string() + "' && env -u CVW_OUTPUT_DIR " + env + " '" + CVW_CLI_PATH + "' " +
                          args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

json verdicts(const fs::path& file) { return json::parse(slurp(file))["verdicts"]; }

int detections(const json& v, const std::string& criterion = "") {
  int n = 0;
  for (const auto& w : v)
    if ((criterion.empty() || w["criterion"] == criterion) && w["detected"].get<bool>()) ++n;
  return n;
}

}  // namespace

TEST_CASE("cli: eval examples") {
  const auto dir = scratch("eval");
  auto r = run("eval --state noon --n 3 --criterion renyi-strong --alpha1 2 --alpha2 2 --output-dir o", dir);
  REQUIRE(r.code == 0);
  CHECK(detections(verdicts(dir / "o/eval-noon.json"), "renyi-strong") > 0);
  CHECK(r.out.find("renyi-strong") != std::string::npos);

  r = run("eval --state vacuum --all-criteria --output-dir o", dir);
  REQUIRE(r.code == 0);
  const auto vac = verdicts(dir / "o/eval-vacuum.json");
  CHECK(vac.size() > 20);
  CHECK(detections(vac) == 0);

  r = run("eval --state hermite-gauss --sigma-plus 1 --sigma-minus 0.5 --criterion shannon-weak --output-dir o", dir);
  REQUIRE(r.code == 0);
  CHECK(detections(verdicts(dir / "o/eval-hermite-gauss.json"), "shannon-weak") > 0);
}

TEST_CASE("cli: exit codes") {
  const auto dir = scratch("codes");
  CHECK(run("--help", dir).code == 0);
  CHECK(run("eval --no-such-flag", dir).code == 2);
  CHECK(run("eval --state unicorn", dir).code == 2);
  CHECK(run("eval --state vacuum --ratio 0.5", dir).code == 2);
  CHECK(run("eval --state noon --n 0", dir).code == 2);
  CHECK(run("run", dir).code == 2);
  CHECK(run("run --config missing.ini", dir).code == 2);
  const auto numeric = run("eval --state noon --n 6 --points 16 --output-dir o", dir);
  CHECK(numeric.code == 3);
  CHECK(!numeric.err.empty());
}

TEST_CASE("cli: output directory precedence and bit-exact reruns") {
  const auto dir = scratch("outdir");
  REQUIRE(run("eval --state hermite-gauss --ratio 0.5 --points 512 --criterion renyi-weak", dir, "CVW_OUTPUT_DIR=env").code == 0);
  CHECK(fs::exists(dir / "env/eval-hermite-gauss.json"));
  REQUIRE(run("eval --state hermite-gauss --ratio 0.5 --points 512 --criterion renyi-weak --output-dir flag", dir,
              "CVW_OUTPUT_DIR=env")
              .code == 0);
  CHECK(fs::exists(dir / "flag/eval-hermite-gauss.json"));

  const std::string first = slurp(dir / "flag/eval-hermite-gauss.json");
  fs::rename(dir / "flag/eval-hermite-gauss.json", dir / "first.json");
  REQUIRE(run("run --config flag/eval-hermite-gauss.config.ini", dir).code == 0);
  CHECK(slurp(dir / "flag/eval-hermite-gauss.json") == first);

  // A config file with a flag on top: the flag wins.
  REQUIRE(run("eval --config flag/eval-hermite-gauss.config.ini --output-dir again", dir).code == 0);
  CHECK(slurp(dir / "again/eval-hermite-gauss.json") == first);
}

TEST_CASE("cli: scans write one CSV per map and rerun identically") {
  const auto dir = scratch("scan");
  REQUIRE(run("scan hermite-gauss --alpha-min 0.501 --alpha-max 4 --alpha-steps 3 --ratio-min 0.4 --ratio-max 2.5 "
              "--ratio-steps 4 --points 512 --output-dir o",
              dir)
              .code == 0);
  const std::string csv = slurp(dir / "o/scan-hermite-gauss.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 4);
  REQUIRE(run("run --config o/scan-hermite-gauss.config.ini --output-dir p", dir).code == 0);
  CHECK(slurp(dir / "p/scan-hermite-gauss.csv") == csv);

  REQUIRE(run("scan noon --n 1..2 --alpha-step 1 --output-dir o", dir).code == 0);
  CHECK(fs::exists(dir / "o/scan-noon-N1.csv"));
  CHECK(fs::exists(dir / "o/scan-noon-N2.csv"));

  REQUIRE(run("scan cat --nu-max 3 --nu-steps 2 --p-steps 2 --alpha 0.501 --alpha 1 --points 256 --output-dir o", dir)
              .code == 0);
  const std::string cat = slurp(dir / "o/scan-cat.csv");
  CHECK(cat.rfind("nu,p,shannon-weak_margin", 0) == 0);
  CHECK(cat.find("renyi-weak@0.501_flag") != std::string::npos);
}

TEST_CASE("cli: sample then ingest") {
  const auto dir = scratch("ingest");
  REQUIRE(run("sample --state vacuum --count 200000 --seed 3 --output-dir d", dir).code == 0);
  // At this sample size plug-in entropies scatter by ~2e-3, so the bins are
  // chosen coarse enough that the vacuum's discretization slack dominates.
  REQUIRE(run("ingest --r-samples d/samples-vacuum-r.csv --s-samples d/samples-vacuum-s.csv --delta 0.5 --Delta 0.5 "
              "--output-name vac --output-dir d",
              dir)
              .code == 0);
  CHECK(detections(verdicts(dir / "d/vac.json")) == 0);

  REQUIRE(run("sample --state hermite-gauss --ratio 0.5 --count 200000 --seed 4 --output-dir d", dir).code == 0);
  REQUIRE(run("ingest --r-samples d/samples-hermite-gauss-r.csv --s-samples d/samples-hermite-gauss-s.csv --delta 0.1 "
              "--Delta 0.1 --alpha 1 --output-name hg --output-dir d",
              dir)
              .code == 0);
  CHECK(detections(verdicts(dir / "d/hg.json"), "renyi-discrete") > 0);

  std::ofstream(dir / "bad.csv") << "q1,q2\n0.1,0.2\nzero,0.3\n";
  const auto bad = run("ingest --r-samples bad.csv --s-samples bad.csv --output-dir d", dir);
  CHECK(bad.code == 2);
  CHECK(bad.err.find("bad.csv:3:") != std::string::npos);
  CHECK(run("ingest --r-samples nope.csv --s-samples nope.csv --output-dir d", dir).code == 2);
}

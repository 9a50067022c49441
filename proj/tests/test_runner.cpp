#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spanroute/runner.hpp"
#include "test_helpers.hpp"

using namespace spanroute;
using testutil::thrown_code;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("spanroute_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

Scenario small_scenario(const std::string& output_prefix) {
  const std::string text = R"(vertices: s a b r
edges:
  - id: 0 tail: s head: a dist: bernoulli 0.4 1
  - id: 1 tail: a head: r dist: bernoulli 0.4 1
  - id: 2 tail: s head: b dist: bernoulli 0.55 1
  - id: 3 tail: b head: r dist: bernoulli 0.55 1
source: s
destination: r
horizon: 500
seeds: base 3 count 5
output: )" + output_prefix +
                           R"(
policy: dsee-star
policy_params: w 2
policy: oracle
)";
  std::istringstream in(text);
  return parse_scenario(in);
}

}  // namespace

TEST_CASE("run_command writes one CSV per policy plus a summary") {
  TempDir dir;
  const std::string prefix = (dir.path / "exp").string();
  Scenario sc = small_scenario(prefix);
  CHECK(run_command(sc) == 0);

  const std::string csv = slurp(prefix + "_dsee-star.csv");
  REQUIRE(csv.rfind("t,mean_cum_regret,std_cum_regret,replications,policy\n", 0) == 0);
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  std::int64_t prev_t = 0;
  int count = 0;
  while (std::getline(rows, line)) {
    const auto comma = line.find(',');
    const std::int64_t t = std::stoll(line.substr(0, comma));
    CHECK(t > prev_t);
    prev_t = t;
    CHECK(line.substr(line.rfind(',') + 1) == "dsee-star");
    ++count;
  }
  CHECK(count == static_cast<int>(default_checkpoints(500).size()));

  const std::string oracle_csv = slurp(prefix + "_oracle.csv");
  CHECK(oracle_csv.find(",oracle") != std::string::npos);

  const std::string summary = slurp(prefix + "_summary.txt");
  CHECK(summary.find("best path: id=0") != std::string::npos);
  CHECK(summary.find("spanner basis ids:") != std::string::npos);
  CHECK(summary.find("policy dsee-star") != std::string::npos);
  CHECK(summary.find("dimension d=2") != std::string::npos);
}

TEST_CASE("run_command output is byte-identical across runs and job counts") {
  TempDir dir;
  Scenario a = small_scenario((dir.path / "a").string());
  Scenario b = small_scenario((dir.path / "b").string());
  Scenario c = small_scenario((dir.path / "c").string());
  run_command(a);
  run_command(b);
  RunOptions opts;
  opts.jobs = 3;
  run_command(c, opts);
  CHECK(slurp((dir.path / "a_dsee-star.csv")) == slurp((dir.path / "b_dsee-star.csv")));
  CHECK(slurp((dir.path / "a_dsee-star.csv")) == slurp((dir.path / "c_dsee-star.csv")));
  CHECK(slurp((dir.path / "a_summary.txt")) == slurp((dir.path / "b_summary.txt")));
}

TEST_CASE("an unwritable output prefix fails without leaving partial files") {
  TempDir dir;
  const fs::path blocker = dir.path / "blocker";
  std::ofstream(blocker) << "file";
  Scenario sc = small_scenario((blocker / "exp").string());  // parent is a regular file
  CHECK_THROWS(run_command(sc));
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    (void)entry;
    ++files;
  }
  CHECK(files == 1);  // only the blocker file
}

TEST_CASE("checkpoint overrides control the CSV rows") {
  TempDir dir;
  const std::string prefix = (dir.path / "cp").string();
  Scenario sc = small_scenario(prefix);
  RunOptions opts;
  opts.checkpoints = {10, 100, 500};
  run_command(sc, opts);
  const std::string csv = slurp(prefix + "_oracle.csv");
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  std::vector<std::int64_t> ts;
  while (std::getline(rows, line)) ts.push_back(std::stoll(line.substr(0, line.find(','))));
  CHECK(ts == std::vector<std::int64_t>{10, 100, 500});
}

TEST_CASE("csv numbers render with at least 10 significant digits") {
  CHECK(detail::csv_number(1.0 / 3.0) == "0.333333333333");
  CHECK(detail::csv_number(0.0) == "0");
  CHECK(detail::csv_number(12345.678901234) == "12345.6789012");
}

TEST_CASE("duplicate policy names get distinct output labels") {
  TempDir dir;
  const std::string prefix = (dir.path / "dup").string();
  Scenario sc = small_scenario(prefix);
  sc.policies.push_back(sc.policies[0]);  // second dsee-star
  run_command(sc);
  CHECK(fs::exists(prefix + "_dsee-star.csv"));
  CHECK(fs::exists(prefix + "_dsee-star-2.csv"));
}

TEST_CASE("policy factories validate against the cost model") {
  TempDir dir;
  Scenario sc = small_scenario((dir.path / "x").string());

  // (b, c) derivation requires a light-tailed model.
  Scenario heavy = sc;
  heavy.dists[0] = ParetoDist{2.5, 1.0};
  heavy.policies[0].params = {{"b", "9"}, {"c", "0.3"}};
  CHECK(thrown_code([&] { prepare_scenario(heavy); }) == Errc::heavy_tailed);

  // dsee-heavy q must undercut the smallest pareto alpha.
  Scenario heavy_q = sc;
  heavy_q.dists[0] = ParetoDist{2.0, 1.0};
  heavy_q.policies[0] = PolicySpec{"dsee-heavy", {{"v", "2"}, {"q", "2.5"}}};
  CHECK(thrown_code([&] { prepare_scenario(heavy_q); }) == Errc::invalid_param);

  // b below 2m/a is rejected by the theorem constant.
  Scenario small_b = sc;
  small_b.policies[0].params = {{"b", "1"}, {"c", "0.3"}};
  CHECK(thrown_code([&] { prepare_scenario(small_b); }) == Errc::invalid_b);

  // A valid (b, c) pair resolves to a runnable factory.
  Scenario derived = sc;
  derived.policies[0].params = {{"b", "33"}, {"c", "0.3"}};
  const PreparedScenario prep = prepare_scenario(derived);
  CHECK(prep.factories.size() == 2);
  auto policy = prep.factories[0](1);
  CHECK(policy->select(1) >= 0);

  // solo-epoch resolves with defaults on a light-tailed model.
  Scenario solo = sc;
  solo.policies[0] = PolicySpec{"solo-epoch", {{"t0", "50"}}};
  const PreparedScenario sp = prepare_scenario(solo);
  auto epoch_policy = sp.factories[0](1);
  CHECK(epoch_policy->select(1) >= 0);
}

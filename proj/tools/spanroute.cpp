// Command-line front end: run a scenario file and write per-policy regret
// CSVs plus a summary, or validate and echo the resolved configuration.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spanroute/spanroute.hpp"

namespace {

std::vector<std::int64_t> parse_checkpoint_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spanroute: adaptive shortest-path routing simulator"};
  std::string scenario_path;
  bool validate_only = false;
  int jobs = 1;
  std::string checkpoints_csv;
  app.add_option("--scenario", scenario_path, "Scenario file to run")->required();
  app.add_flag("--validate-only", validate_only,
               "Parse and validate, print the resolved configuration, run nothing");
  app.add_option("--jobs", jobs, "Replication parallelism")->check(CLI::PositiveNumber);
  app.add_option("--checkpoints", checkpoints_csv,
                 "Comma-separated checkpoint times overriding the log-spaced defaults");
  CLI11_PARSE(app, argc, argv);

  try {
    spanroute::Scenario scenario = spanroute::parse_scenario_file(scenario_path);
    if (const char* env = std::getenv("SPANROUTE_SEED")) {
      spanroute::apply_seed_override(scenario, env);
    }
    spanroute::RunOptions opts;
    opts.jobs = jobs;
    if (!checkpoints_csv.empty()) opts.checkpoints = parse_checkpoint_list(checkpoints_csv);

    if (validate_only) {
      spanroute::prepare_scenario(scenario);  // full validation, no simulation
      std::cout << spanroute::print_scenario(scenario);
      return 0;
    }
    return spanroute::run_command(scenario, opts);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}

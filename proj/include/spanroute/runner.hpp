#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spanroute/scenario.hpp"
#include "spanroute/sim.hpp"
#include "spanroute/solo.hpp"

namespace spanroute {

struct RunOptions {
  int jobs = 1;
  std::vector<std::int64_t> checkpoints;  // empty -> log-spaced defaults
};

namespace detail {

inline double param_number(const PolicySpec& spec, const char* key, double fallback) {
  const auto raw = spec.raw(key);
  return raw ? std::strtod(raw->c_str(), nullptr) : fallback;
}

inline std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace detail

inline PolicyFactory make_policy_factory(const PolicySpec& spec, const LinearProblem& problem) {
  const std::shared_ptr<const ActionSet> actions = problem.actions;
  const int d = actions->dimension();
  const int m = static_cast<int>(actions->ambient());

  if (spec.name == "dsee-star") {
    double w = 0.0;
    if (spec.has("w")) {
      w = detail::param_number(spec, "w", 0.0);
    } else {
      const ConcentrationParams conc = default_concentration(problem.model);
      w = theorem1_w(conc, m, d, detail::param_number(spec, "b", 0.0),
                     detail::param_number(spec, "c", 0.0));
    }
    const ExplorationSchedule sched{StarSchedule{w, d}};
    return [actions, sched](std::uint64_t) { return std::make_unique<DseePolicy>(actions, sched); };
  }
  if (spec.name == "dsee-prime") {
    const ExplorationSchedule sched{PrimeSchedule{d}};
    return [actions, sched](std::uint64_t) { return std::make_unique<DseePolicy>(actions, sched); };
  }
  if (spec.name == "dsee-heavy") {
    const double v = detail::param_number(spec, "v", 0.0);
    const double q = detail::param_number(spec, "q", 0.0);
    CostModel with_q = problem.model;
    with_q.declared_q = q;
    validate_model(with_q);
    const ExplorationSchedule sched{HeavySchedule{v, q}};
    return [actions, sched](std::uint64_t) { return std::make_unique<DseePolicy>(actions, sched); };
  }
  if (spec.name == "solo-epoch") {
    EpochDseeConfig cfg;
    cfg.t0 = static_cast<std::int64_t>(detail::param_number(spec, "t0", 100.0));
    cfg.cost_conc = path_concentration(default_concentration(problem.model), m);
    cfg.b = detail::param_number(spec, "b", 1.01 * 2.0 / cfg.cost_conc.a);
    return [actions, cfg](std::uint64_t) { return std::make_unique<EpochDseePolicy>(actions, cfg); };
  }
  if (spec.name == "naive-dsee") {
    const double w = detail::param_number(spec, "w", 0.0);
    return [actions, w](std::uint64_t) { return std::make_unique<NaiveDseePolicy>(actions, w); };
  }
  if (spec.name == "naive-ucb") {
    return [actions](std::uint64_t) { return std::make_unique<UcbPolicy>(actions); };
  }
  if (spec.name == "oracle") {
    const int best = problem.optimal;
    return [best](std::uint64_t) { return std::make_unique<OraclePolicy>(best); };
  }
  fail(Errc::unknown_policy, "unknown policy '" + spec.name + "'");
}

struct PreparedScenario {
  NetworkInstance net;
  PathSet paths;
  LinearProblem problem;
  std::vector<std::string> labels;  // unique per policy run; used in filenames and CSV
  std::vector<PolicyFactory> factories;
};

inline PreparedScenario prepare_scenario(const Scenario& sc) {
  PreparedScenario prep;
  prep.net = load_network(sc.network);
  prep.paths = enumerate_paths(prep.net);

  std::vector<EdgeDistribution> by_id(sc.dists.size(), EdgeDistribution{BernoulliDist{}});
  for (std::size_t i = 0; i < sc.network.edges.size(); ++i)
    by_id[static_cast<std::size_t>(sc.network.edges[i].id)] = sc.dists[i];
  CostModel model{std::move(by_id), std::nullopt};
  validate_model(model);

  auto actions = std::make_shared<const ActionSet>(action_set_from_paths(prep.paths));
  prep.problem = make_problem(std::move(actions), std::move(model));

  for (const auto& p : sc.policies) {
    std::string label = p.name;
    int suffix = 1;
    while (std::find(prep.labels.begin(), prep.labels.end(), label) != prep.labels.end())
      label = p.name + "-" + std::to_string(++suffix);
    prep.labels.push_back(label);
    prep.factories.push_back(make_policy_factory(p, prep.problem));
  }
  return prep;
}

namespace detail {

inline void write_csv(std::ostream& out, const AggregateResult& agg, const std::string& label) {
  out << "t,mean_cum_regret,std_cum_regret,replications,policy\n";
  for (std::size_t c = 0; c < agg.checkpoints.size(); ++c) {
    out << agg.checkpoints[c] << ',' << csv_number(agg.mean_cum_regret[c]) << ','
        << csv_number(agg.std_cum_regret[c]) << ',' << agg.replications << ',' << label << '\n';
  }
}

class TempFiles {
 public:
  std::ofstream open(const std::filesystem::path& final_path) {
    const std::filesystem::path tmp = final_path.string() + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::invalid_param, "cannot write output file '" + tmp.string() + "'");
    pending_.emplace_back(tmp, final_path);
    return out;
  }

  void commit() {
    for (const auto& [tmp, final_path] : pending_)
      std::filesystem::rename(tmp, final_path);
    pending_.clear();
  }

  ~TempFiles() {
    std::error_code ec;
    for (const auto& [tmp, final_path] : pending_) std::filesystem::remove(tmp, ec);
  }

 private:
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> pending_;
};

}  // namespace detail

/// Runs every policy in the scenario on common random numbers, then writes
/// one CSV per policy plus a summary, atomically (temp files renamed only
/// after everything succeeded). Returns 0 on success; failures throw.
inline int run_command(const Scenario& sc, const RunOptions& opts = {}) {
  PreparedScenario prep = prepare_scenario(sc);

  std::vector<AggregateResult> results;
  results.reserve(prep.factories.size());
  for (const auto& factory : prep.factories)
    results.push_back(
        replicate(prep.problem, factory, sc.horizon, sc.seeds, opts.checkpoints, opts.jobs));

  const std::filesystem::path prefix(sc.output_prefix);
  if (prefix.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(prefix.parent_path(), ec);
    if (ec)
      fail(Errc::invalid_param,
           "cannot create output directory '" + prefix.parent_path().string() + "'");
  }

  detail::TempFiles files;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto out = files.open(sc.output_prefix + "_" + prep.labels[i] + ".csv");
    detail::write_csv(out, results[i], prep.labels[i]);
    if (!out) fail(Errc::invalid_param, "write failure on CSV output");
  }

  {
    auto out = files.open(sc.output_prefix + "_summary.txt");
    const auto [best, gap] = brute_force_best_path(prep.paths, prep.problem.model);
    out << "network: n=" << prep.net.vertex_count() << " vertices, m=" << prep.net.edge_count()
        << " edges, |P|=" << prep.paths.paths.size() << " paths, dimension d=" << prep.paths.dimension
        << "\n";
    out << "best path: id=" << best->id << " edges=[";
    for (std::size_t j = 0; j < best->edges.size(); ++j)
      out << (j ? " " : "") << best->edges[j];
    out << "] mean=" << detail::csv_number(prep.problem.action_means[best->id])
        << " gap=" << detail::csv_number(gap) << "\n";
    out << "spanner basis ids:";
    for (const int id : prep.problem.actions->spanner.basis_ids()) out << ' ' << id;
    out << "\n";
    out << "horizon: " << sc.horizon << ", replications: " << sc.seeds.size() << "\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& agg = results[i];
      out << "policy " << prep.labels[i] << ": final mean cumulative regret "
          << detail::csv_number(agg.mean_cum_regret.back()) << " (std "
          << detail::csv_number(agg.std_cum_regret.back()) << ", T=" << agg.checkpoints.back()
          << ")\n";
    }
    if (!out) fail(Errc::invalid_param, "write failure on summary output");
  }
  files.commit();
  return 0;
}

}  // namespace spanroute

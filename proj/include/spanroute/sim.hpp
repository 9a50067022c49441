#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "spanroute/action_set.hpp"
#include "spanroute/cost_model.hpp"
#include "spanroute/policy.hpp"

namespace spanroute {

struct StepRecord {
  std::int64_t t = 0;
  int action = 0;
  Phase phase = Phase::explore;
  double inst_regret = 0.0;
  double cum_regret = 0.0;
};

struct RegretTrace {
  std::vector<StepRecord> steps;
  int optimal_action = -1;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  double final_pseudo_regret = 0.0;
  double final_realized_regret = 0.0;  // observed cost difference vs the best action
                                       // on the same cost stream
};

/// Lowest-index argmin of the means, plus the gap to the second-smallest
/// distinct mean (0 when the minimum is tied).
inline std::pair<int, double> best_action(const std::vector<double>& means) {
  int best = 0;
  for (std::size_t i = 1; i < means.size(); ++i)
    if (means[i] < means[best]) best = static_cast<int>(i);
  int min_count = 0;
  double second = std::numeric_limits<double>::infinity();
  for (const double v : means) {
    if (v == means[best])
      ++min_count;
    else
      second = std::min(second, v);
  }
  const double gap =
      (min_count > 1 || !std::isfinite(second)) ? 0.0 : second - means[best];
  return {best, gap};
}

/// A linear bandit instance: finite action set, a cost model over the
/// coordinates, and the exact action means derived from it.
struct LinearProblem {
  std::shared_ptr<const ActionSet> actions;
  CostModel model;
  std::vector<double> coord_means;
  std::vector<double> action_means;
  int optimal = 0;
  double gap = 0.0;
};

inline LinearProblem make_problem(std::shared_ptr<const ActionSet> actions, CostModel model) {
  validate_model(model);
  LinearProblem p;
  p.actions = std::move(actions);
  p.model = std::move(model);
  if (p.actions->ambient() != p.model.edges.size())
    fail(Errc::dimension_mismatch, "cost model length " + std::to_string(p.model.edges.size()) +
                                       " does not match action length " +
                                       std::to_string(p.actions->ambient()));
  p.coord_means = mean_costs(p.model);
  p.action_means.reserve(p.actions->size());
  for (const auto& x : p.actions->actions) p.action_means.push_back(dot(x, p.coord_means));
  std::tie(p.optimal, p.gap) = best_action(p.action_means);
  return p;
}

/// Exact best path under the model means, with the gap to the second-smallest
/// distinct path mean (0 on a tie).
inline std::pair<const PathVector*, double> brute_force_best_path(const PathSet& paths,
                                                                  const CostModel& model) {
  if (paths.paths.empty()) fail(Errc::invalid_param, "empty path set");
  const std::vector<double> means = mean_costs(model);
  std::vector<double> path_means;
  path_means.reserve(paths.paths.size());
  for (const auto& p : paths.paths) {
    if (p.bits.size() != means.size())
      fail(Errc::dimension_mismatch, "model length does not match path length");
    double s = 0.0;
    for (std::size_t e = 0; e < means.size(); ++e)
      if (p.bits[e]) s += means[e];
    path_means.push_back(s);
  }
  const auto [best, gap] = best_action(path_means);
  return {&paths.paths[best], gap};
}

using PolicyFactory = std::function<std::unique_ptr<Policy>(std::uint64_t seed)>;

/// Runs one episode: the policy sees only its chosen action's total cost,
/// never the per-edge draws. Pseudo-regret uses the exact means.
inline RegretTrace run_episode(const LinearProblem& problem, const PolicyFactory& make_policy,
                               std::int64_t horizon, std::uint64_t seed) {
  if (horizon < 1) fail(Errc::invalid_param, "horizon must be >= 1");
  RegretTrace trace;
  trace.optimal_action = problem.optimal;
  trace.horizon = horizon;
  trace.seed = seed;
  trace.steps.reserve(static_cast<std::size_t>(horizon));

  std::unique_ptr<Policy> policy = make_policy(seed);
  CostRng rng(seed);
  std::vector<double> costs(problem.model.edges.size());
  const std::vector<double>& best_vec = problem.actions->actions[problem.optimal];
  const double best_mean = problem.action_means[problem.optimal];
  double cum = 0.0;
  double realized = 0.0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const int a = policy->select(t);
    sample_costs_into(problem.model, rng, costs);
    const double total = dot(problem.actions->actions[a], costs);
    policy->update(a, total);
    const double inst = problem.action_means[a] - best_mean;
    cum += inst;
    realized += total - dot(best_vec, costs);
    trace.steps.push_back(StepRecord{t, a, policy->phase(), inst, cum});
  }
  trace.final_pseudo_regret = cum;
  trace.final_realized_regret = realized;
  return trace;
}

struct AggregateResult {
  std::vector<std::int64_t> checkpoints;
  std::vector<double> mean_cum_regret;
  std::vector<double> std_cum_regret;
  int replications = 0;
};

/// Log-spaced checkpoints floor(10^(k/4)) up to T, with T always included.
inline std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> cps;
  for (int k = 0;; ++k) {
    const auto v = static_cast<std::int64_t>(
        std::floor(std::pow(10.0, static_cast<double>(k) / 4.0) + 1e-9));
    if (v > horizon) break;
    if (cps.empty() || cps.back() != v) cps.push_back(v);
  }
  if (cps.empty() || cps.back() != horizon) cps.push_back(horizon);
  return cps;
}

/// Runs one episode per seed (optionally across threads) and aggregates the
/// cumulative regret at the checkpoints. Results are independent of thread
/// scheduling: episodes are keyed by seed index.
inline AggregateResult replicate(const LinearProblem& problem, const PolicyFactory& make_policy,
                                 std::int64_t horizon, std::span<const std::uint64_t> seeds,
                                 std::vector<std::int64_t> checkpoints = {}, int jobs = 1) {
  if (seeds.empty()) fail(Errc::invalid_param, "replicate requires at least one seed");
  if (checkpoints.empty()) checkpoints = default_checkpoints(horizon);
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() < 1 || checkpoints.back() > horizon)
    fail(Errc::invalid_param, "checkpoints must lie in [1, horizon]");

  const std::size_t n = seeds.size();
  std::vector<std::vector<double>> cums(n);
  auto run_one = [&](std::size_t i) {
    const RegretTrace trace = run_episode(problem, make_policy, horizon, seeds[i]);
    std::vector<double> at(checkpoints.size());
    for (std::size_t c = 0; c < checkpoints.size(); ++c)
      at[c] = trace.steps[static_cast<std::size_t>(checkpoints[c]) - 1].cum_regret;
    cums[i] = std::move(at);
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < n;
             i += static_cast<std::size_t>(workers))
          run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  AggregateResult agg;
  agg.checkpoints = std::move(checkpoints);
  agg.replications = static_cast<int>(n);
  agg.mean_cum_regret.resize(agg.checkpoints.size());
  agg.std_cum_regret.resize(agg.checkpoints.size());
  for (std::size_t c = 0; c < agg.checkpoints.size(); ++c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += cums[i][c];
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dlt = cums[i][c] - mean;
      ss += dlt * dlt;
    }
    agg.mean_cum_regret[c] = mean;
    agg.std_cum_regret[c] = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  }
  return agg;
}

}  // namespace spanroute

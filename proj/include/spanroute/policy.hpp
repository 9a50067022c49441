#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "spanroute/action_set.hpp"
#include "spanroute/cost_model.hpp"
#include "spanroute/error.hpp"
#include "spanroute/rng.hpp"

namespace spanroute {

enum class Phase { explore, exploit };

/// 1-based cyclic index: ((k-1) mod l) + 1, values in 1..l.
inline std::int64_t oslash(std::int64_t k, std::int64_t l) { return (k - 1) % l + 1; }

struct StarSchedule {
  double w = 1.0;
  int d = 1;
};

/// f(t) = max(1, ln ln t).
struct PrimeSchedule {
  int d = 1;
};

struct HeavySchedule {
  double v = 1.0;
  double q = 2.0;
};

using ExplorationSchedule = std::variant<StarSchedule, PrimeSchedule, HeavySchedule>;

inline double loglog_clipped(std::int64_t t) {
  return std::max(1.0, std::log(std::log(static_cast<double>(t))));
}

/// Forced cardinality of the exploration sequence at time t.
inline double exploration_quota(const ExplorationSchedule& schedule, std::int64_t t) {
  if (const auto* s = std::get_if<StarSchedule>(&schedule)) {
    const double d = s->d;
    return d * std::ceil(d * d * s->w * std::log(static_cast<double>(t)));
  }
  if (const auto* s = std::get_if<PrimeSchedule>(&schedule)) {
    const double d = s->d;
    return d * std::ceil(loglog_clipped(t) * std::log(static_cast<double>(t)));
  }
  const auto& s = std::get<HeavySchedule>(schedule);
  const double td = static_cast<double>(t);
  return s.v * (s.q == 2.0 ? std::sqrt(td) : std::pow(td, 1.0 / s.q));
}

/// Slot t (t >= 2) joins the exploration sequence iff the count so far is
/// below the schedule quota. Time 1 is always exploration.
inline bool in_exploration(const ExplorationSchedule& schedule, std::int64_t t,
                           std::int64_t count_so_far) {
  return static_cast<double>(count_so_far) < exploration_quota(schedule, t);
}

/// Minimum exploration constant w for the star schedule given valid
/// concentration constants, b > 2m/a and a gap lower bound c.
inline double theorem1_w(const ConcentrationParams& params, int m, int d, double b, double c) {
  if (!(b > 2.0 * m / params.a))
    fail(Errc::invalid_b, "b must exceed 2m/a = " + std::to_string(2.0 * m / params.a));
  if (!(c > 0.0)) fail(Errc::invalid_c, "c must be positive");
  const double denom = m * d * params.zeta * params.u0;
  return std::max(b / (denom * denom), 4.0 * b / (c * c));
}

class Policy {
 public:
  virtual ~Policy() = default;

  /// Chooses an action index for slot t; t starts at 1 and increases by 1.
  virtual int select(std::int64_t t) = 0;

  /// Feeds back the observed total cost of the chosen action.
  virtual void update(int action, double cost) = 0;

  /// Phase of the most recent select.
  virtual Phase phase() const = 0;
};

/// DSEE over a barycentric spanner: deterministic exploration slots
/// round-robin the basis; exploitation plays the action whose interpolated
/// cost estimate is smallest. Exploitation observations do not feed the
/// estimates; the schedule alone controls sample counts.
class DseePolicy : public Policy {
 public:
  DseePolicy(std::shared_ptr<const ActionSet> actions, ExplorationSchedule schedule)
      : actions_(std::move(actions)),
        schedule_(std::move(schedule)),
        mean_(actions_->dimension(), 0.0),
        pulls_(actions_->dimension(), 0) {
    if (const auto* s = std::get_if<StarSchedule>(&schedule_)) {
      if (s->d != actions_->dimension())
        fail(Errc::invalid_param, "schedule dimension disagrees with the action set");
    } else if (const auto* s = std::get_if<PrimeSchedule>(&schedule_)) {
      if (s->d != actions_->dimension())
        fail(Errc::invalid_param, "schedule dimension disagrees with the action set");
    }
  }

  int select(std::int64_t t) override {
    const int d = actions_->dimension();
    if (t <= 1 || in_exploration(schedule_, t, explore_count_)) {
      ++explore_count_;
      phase_ = Phase::explore;
      const int slot = static_cast<int>(oslash(explore_count_, d)) - 1;
      return actions_->spanner.basis_ids()[slot];
    }
    phase_ = Phase::exploit;
    for (int i = 0; i < d; ++i)
      if (pulls_[i] == 0)
        fail(Errc::cold_start, "basis element " + std::to_string(i) + " has no samples");
    if (dirty_) {
      best_action_ = argmin_estimate();
      dirty_ = false;
    }
    return best_action_;
  }

  void update(int action, double cost) override {
    if (phase_ != Phase::explore) return;  // exploitation observations are discarded
    const int slot = basis_slot(action);
    ++pulls_[slot];
    mean_[slot] += (cost - mean_[slot]) / static_cast<double>(pulls_[slot]);
    dirty_ = true;
  }

  Phase phase() const override { return phase_; }

  std::int64_t exploration_count() const { return explore_count_; }
  const std::vector<double>& basis_means() const { return mean_; }
  const std::vector<std::int64_t>& basis_pulls() const { return pulls_; }

  /// Interpolated cost estimate per action: coefficients dotted with the
  /// basis sample means.
  std::vector<double> exploit_estimates() const {
    std::vector<double> est(actions_->size());
    for (std::size_t i = 0; i < est.size(); ++i) est[i] = dot(actions_->coeffs[i], mean_);
    return est;
  }

 private:
  int basis_slot(int action) const {
    const auto& ids = actions_->spanner.basis_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == action) return static_cast<int>(i);
    fail(Errc::invalid_param,
         "exploration update for non-basis action " + std::to_string(action));
  }

  int argmin_estimate() const {
    int best = 0;
    double best_val = dot(actions_->coeffs[0], mean_);
    for (std::size_t i = 1; i < actions_->size(); ++i) {
      const double v = dot(actions_->coeffs[i], mean_);
      if (v < best_val) {
        best_val = v;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  std::shared_ptr<const ActionSet> actions_;
  ExplorationSchedule schedule_;
  std::int64_t explore_count_ = 0;
  std::vector<double> mean_;
  std::vector<std::int64_t> pulls_;
  Phase phase_ = Phase::explore;
  bool dirty_ = true;
  int best_action_ = 0;
};

/// Per-path DSEE that ignores arm dependencies: every action is its own arm,
/// the star schedule runs with d replaced by the arm count, and estimates are
/// plain per-arm sample means.
class NaiveDseePolicy : public Policy {
 public:
  NaiveDseePolicy(std::shared_ptr<const ActionSet> actions, double w)
      : actions_(std::move(actions)),
        schedule_(StarSchedule{w, static_cast<int>(actions_->size())}),
        mean_(actions_->size(), 0.0),
        pulls_(actions_->size(), 0) {
    if (actions_->size() < 2) fail(Errc::invalid_param, "baseline needs at least 2 actions");
  }

  int select(std::int64_t t) override {
    const auto k = static_cast<std::int64_t>(actions_->size());
    if (t <= 1 || in_exploration(schedule_, t, explore_count_)) {
      ++explore_count_;
      phase_ = Phase::explore;
      return static_cast<int>(oslash(explore_count_, k)) - 1;
    }
    phase_ = Phase::exploit;
    for (std::size_t i = 0; i < actions_->size(); ++i)
      if (pulls_[i] == 0)
        fail(Errc::cold_start, "arm " + std::to_string(i) + " has no samples");
    int best = 0;
    for (std::size_t i = 1; i < actions_->size(); ++i)
      if (mean_[i] < mean_[best]) best = static_cast<int>(i);
    return best;
  }

  void update(int action, double cost) override {
    if (phase_ != Phase::explore) return;
    ++pulls_[action];
    mean_[action] += (cost - mean_[action]) / static_cast<double>(pulls_[action]);
  }

  Phase phase() const override { return phase_; }
  std::int64_t exploration_count() const { return explore_count_; }
  const std::vector<std::int64_t>& arm_pulls() const { return pulls_; }

 private:
  std::shared_ptr<const ActionSet> actions_;
  ExplorationSchedule schedule_;
  std::int64_t explore_count_ = 0;
  std::vector<double> mean_;
  std::vector<std::int64_t> pulls_;
  Phase phase_ = Phase::explore;
};

/// UCB1 adapted to cost minimization: play each arm once, then minimize
/// mean - sqrt(2 ln t / pulls). Every observation updates its arm.
class UcbPolicy : public Policy {
 public:
  explicit UcbPolicy(std::shared_ptr<const ActionSet> actions)
      : actions_(std::move(actions)), mean_(actions_->size(), 0.0), pulls_(actions_->size(), 0) {
    if (actions_->size() < 2) fail(Errc::invalid_param, "baseline needs at least 2 actions");
  }

  int select(std::int64_t t) override {
    for (std::size_t i = 0; i < actions_->size(); ++i) {
      if (pulls_[i] == 0) {
        phase_ = Phase::explore;
        return static_cast<int>(i);
      }
    }
    phase_ = Phase::exploit;
    int best = 0;
    double best_val = index(0, t);
    for (std::size_t i = 1; i < actions_->size(); ++i) {
      const double v = index(i, t);
      if (v < best_val) {
        best_val = v;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  void update(int action, double cost) override {
    ++pulls_[action];
    mean_[action] += (cost - mean_[action]) / static_cast<double>(pulls_[action]);
  }

  Phase phase() const override { return phase_; }

 private:
  double index(std::size_t i, std::int64_t t) const {
    return mean_[i] - std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                                static_cast<double>(pulls_[i]));
  }

  std::shared_ptr<const ActionSet> actions_;
  std::vector<double> mean_;
  std::vector<std::int64_t> pulls_;
  Phase phase_ = Phase::explore;
};

/// Always plays a fixed action (the known best, for regret baselines).
class OraclePolicy : public Policy {
 public:
  explicit OraclePolicy(int best_action) : best_(best_action) {}
  int select(std::int64_t) override { return best_; }
  void update(int, double) override {}
  Phase phase() const override { return Phase::exploit; }

 private:
  int best_;
};

/// Plays a uniformly random action each slot.
class RandomPolicy : public Policy {
 public:
  RandomPolicy(std::size_t num_actions, std::uint64_t seed)
      : k_(num_actions), rng_(seed, kPolicyDomain) {}

  int select(std::int64_t) override {
    const auto idx = static_cast<std::size_t>(rng_.next_u01() * static_cast<double>(k_));
    return static_cast<int>(std::min(idx, k_ - 1));
  }
  void update(int, double) override {}
  Phase phase() const override { return Phase::exploit; }

 private:
  std::size_t k_;
  CounterRng rng_;
};

}  // namespace spanroute

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>

#include "spanroute/policy.hpp"

namespace spanroute {

/// Configuration for the epoch policy on a general finite action set. The
/// concentration constants apply to each observed action cost.
struct EpochDseeConfig {
  std::int64_t t0 = 100;  // first epoch length; epoch k has length t0 * 2^k
  double b = 0.0;         // must exceed 2/a
  ConcentrationParams cost_conc;
  // Gap parameter per epoch: (ln T_k)^(1/3) / T_k^(1/3) by default; the
  // alternative reading ln(T_k^(1/3)) / T_k^(1/3) is selectable here.
  bool log_of_root = false;
};

inline double epoch_gap_parameter(std::int64_t epoch_len, bool log_of_root) {
  const double tk = static_cast<double>(epoch_len);
  const double num = log_of_root ? std::log(tk) / 3.0 : std::cbrt(std::log(tk));
  return num / std::cbrt(tk);
}

/// Epoch policy for stochastic online linear optimization: geometric epochs,
/// each running a fresh DSEE-spanner instance whose star schedule uses the
/// epoch-length-dependent gap parameter. Estimates reset at epoch boundaries.
class EpochDseePolicy : public Policy {
 public:
  EpochDseePolicy(std::shared_ptr<const ActionSet> actions, EpochDseeConfig config)
      : actions_(std::move(actions)), config_(config) {
    validate_concentration(config_.cost_conc);
    if (config_.t0 < 1) fail(Errc::invalid_param, "t0 must be >= 1");
    if (!(config_.b > 2.0 / config_.cost_conc.a))
      fail(Errc::invalid_b,
           "b must exceed 2/a = " + std::to_string(2.0 / config_.cost_conc.a));
    epoch_len_ = config_.t0;
    rebuild_inner();
  }

  int select(std::int64_t t) override {
    while (t - epoch_start_ + 1 > epoch_len_) {
      epoch_start_ += epoch_len_;
      epoch_len_ *= 2;
      ++epoch_index_;
      rebuild_inner();
    }
    return inner_->select(t - epoch_start_ + 1);
  }

  void update(int action, double cost) override { inner_->update(action, cost); }
  Phase phase() const override { return inner_->phase(); }

  std::int64_t epoch_index() const { return epoch_index_; }
  std::int64_t epoch_length() const { return epoch_len_; }
  double epoch_w() const { return epoch_w_; }
  const DseePolicy& inner() const { return *inner_; }

 private:
  void rebuild_inner() {
    const int d = actions_->dimension();
    const double c = epoch_gap_parameter(epoch_len_, config_.log_of_root);
    const auto& p = config_.cost_conc;
    const double denom = d * p.zeta * p.u0;
    epoch_w_ = std::max(config_.b / (denom * denom), 4.0 * config_.b / (c * c));
    inner_.emplace(actions_, ExplorationSchedule{StarSchedule{epoch_w_, d}});
  }

  std::shared_ptr<const ActionSet> actions_;
  EpochDseeConfig config_;
  std::int64_t epoch_index_ = 0;
  std::int64_t epoch_start_ = 1;
  std::int64_t epoch_len_ = 1;
  double epoch_w_ = 0.0;
  std::optional<DseePolicy> inner_;
};

}  // namespace spanroute

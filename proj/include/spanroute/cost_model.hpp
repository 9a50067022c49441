#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spanroute/error.hpp"
#include "spanroute/rng.hpp"

namespace spanroute {

struct BernoulliDist {
  double p = 0.5;
  double scale = 1.0;
};

struct UniformDist {
  double lo = 0.0;
  double hi = 1.0;
};

struct ExponentialDist {
  double rate = 1.0;
};

struct ParetoDist {
  double alpha = 2.0;  // tail index; finite mean requires alpha > 1
  double scale = 1.0;  // minimum value
};

using EdgeDistribution = std::variant<BernoulliDist, UniformDist, ExponentialDist, ParetoDist>;

inline void validate_distribution(const EdgeDistribution& dist, const std::string& field) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BernoulliDist>) {
          if (!(d.p >= 0.0 && d.p <= 1.0) || !(d.scale > 0.0) || !std::isfinite(d.scale))
            fail(Errc::invalid_param, field + ": bernoulli requires 0 <= p <= 1 and scale > 0");
        } else if constexpr (std::is_same_v<T, UniformDist>) {
          if (!(d.lo < d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi))
            fail(Errc::invalid_param, field + ": uniform requires lo < hi");
        } else if constexpr (std::is_same_v<T, ExponentialDist>) {
          if (!(d.rate > 0.0) || !std::isfinite(d.rate))
            fail(Errc::invalid_param, field + ": exponential requires rate > 0");
        } else {
          if (!(d.alpha > 1.0) || !(d.scale > 0.0) || !std::isfinite(d.alpha) ||
              !std::isfinite(d.scale))
            fail(Errc::invalid_param, field + ": pareto requires alpha > 1 and scale > 0");
        }
      },
      dist);
}

inline bool is_heavy_tailed(const EdgeDistribution& dist) {
  return std::holds_alternative<ParetoDist>(dist);
}

inline double distribution_mean(const EdgeDistribution& dist) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BernoulliDist>) return d.p * d.scale;
        if constexpr (std::is_same_v<T, UniformDist>) return 0.5 * (d.lo + d.hi);
        if constexpr (std::is_same_v<T, ExponentialDist>) return 1.0 / d.rate;
        if constexpr (std::is_same_v<T, ParetoDist>) return d.alpha * d.scale / (d.alpha - 1.0);
      },
      dist);
}

/// Inverse-CDF draw from one uniform in [0, 1); exactly one uniform per draw.
inline double sample_distribution(const EdgeDistribution& dist, double u) {
  return std::visit(
      [u](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BernoulliDist>) return u < d.p ? d.scale : 0.0;
        if constexpr (std::is_same_v<T, UniformDist>) return d.lo + u * (d.hi - d.lo);
        if constexpr (std::is_same_v<T, ExponentialDist>) return -std::log1p(-u) / d.rate;
        if constexpr (std::is_same_v<T, ParetoDist>)
          return d.scale * std::pow(1.0 - u, -1.0 / d.alpha);
      },
      dist);
}

struct CostModel {
  std::vector<EdgeDistribution> edges;
  std::optional<double> declared_q;  // moment order claimed for heavy-tailed runs
};

inline bool is_heavy_tailed(const CostModel& model) {
  for (const auto& d : model.edges)
    if (is_heavy_tailed(d)) return true;
  return false;
}

inline double min_heavy_alpha(const CostModel& model) {
  double a = std::numeric_limits<double>::infinity();
  for (const auto& d : model.edges)
    if (const auto* p = std::get_if<ParetoDist>(&d)) a = std::min(a, p->alpha);
  return a;
}

inline void validate_model(const CostModel& model) {
  for (std::size_t e = 0; e < model.edges.size(); ++e)
    validate_distribution(model.edges[e], "edges[" + std::to_string(e) + "].dist");
  if (model.declared_q) {
    if (!(*model.declared_q > 1.0))
      fail(Errc::invalid_param, "declared_q must exceed 1");
    if (is_heavy_tailed(model) && !(*model.declared_q < min_heavy_alpha(model)))
      fail(Errc::invalid_param, "declared_q must be below the smallest pareto alpha");
  }
}

inline std::vector<double> mean_costs(const CostModel& model) {
  std::vector<double> means;
  means.reserve(model.edges.size());
  for (const auto& d : model.edges) means.push_back(distribution_mean(d));
  return means;
}

inline constexpr std::uint64_t kCostDomain = 0x636f7374ULL;  // cost streams
inline constexpr std::uint64_t kPolicyDomain = 0x706f6cULL;  // policy-internal randomness

/// Seeded generator for i.i.d. cost vectors. Edge e at time t draws from the
/// substream keyed by (seed, e), so adding an edge never perturbs the draws
/// of existing edges.
class CostRng {
 public:
  explicit CostRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws_consumed() const { return t_; }

  double draw(std::uint64_t edge, std::uint64_t t) const {
    return u01(mix(mix(seed_ ^ kCostDomain, edge), t));
  }

  friend void sample_costs_into(const CostModel& model, CostRng& rng, std::span<double> out);

 private:
  std::uint64_t seed_;
  std::uint64_t t_ = 0;
};

inline void sample_costs_into(const CostModel& model, CostRng& rng, std::span<double> out) {
  const std::uint64_t t = ++rng.t_;
  for (std::size_t e = 0; e < model.edges.size(); ++e)
    out[e] = sample_distribution(model.edges[e], rng.draw(e, t));
}

/// One independent draw per edge, in edge-id order.
inline std::vector<double> sample_costs(const CostModel& model, CostRng& rng) {
  std::vector<double> out(model.edges.size());
  sample_costs_into(model, rng, out);
  return out;
}

/// Constants (a, zeta, u0) for the sample-mean deviation bound
/// Pr(|mean - theta| >= delta) <= 2 exp(-a delta^2 s), delta in [0, zeta*u0].
struct ConcentrationParams {
  double a = 0.0;
  double zeta = 0.0;
  double u0 = 0.0;
};

inline void validate_concentration(const ConcentrationParams& p) {
  if (!(p.zeta > 0.0) || !(p.u0 > 0.0) || !(p.a > 0.0) || p.a > 1.0 / (2.0 * p.zeta) * (1 + 1e-12))
    fail(Errc::invalid_param, "concentration requires zeta > 0, u0 > 0, 0 < a <= 1/(2 zeta)");
}

/// Conservative per-family constants. Bounded families use the sub-Gaussian
/// bound zeta = (range/2)^2 with u0 = 1; the exponential uses the closed-form
/// maximum of the centered MGF's second derivative over [-u0, u0], attained
/// at u0 = rate/2.
inline ConcentrationParams default_concentration(const CostModel& model) {
  ConcentrationParams out{0.0, 0.0, std::numeric_limits<double>::infinity()};
  if (model.edges.empty()) fail(Errc::invalid_param, "cost model has no edges");
  for (const auto& dist : model.edges) {
    double zeta = 0.0;
    double u0 = 1.0;
    if (const auto* b = std::get_if<BernoulliDist>(&dist)) {
      zeta = (b->scale / 2.0) * (b->scale / 2.0);
    } else if (const auto* u = std::get_if<UniformDist>(&dist)) {
      const double half_range = (u->hi - u->lo) / 2.0;
      zeta = half_range * half_range;
    } else if (const auto* e = std::get_if<ExponentialDist>(&dist)) {
      u0 = e->rate / 2.0;
      zeta = 10.0 * std::exp(-0.5) / (e->rate * e->rate);
    } else {
      fail(Errc::heavy_tailed, "pareto edges admit no moment-generating function");
    }
    out.zeta = std::max(out.zeta, zeta);
    out.u0 = std::min(out.u0, u0);
  }
  out.a = 1.0 / (2.0 * out.zeta);
  return out;
}

/// Lifts edge-level constants to sums of at most m edge costs.
inline ConcentrationParams path_concentration(const ConcentrationParams& params, int m) {
  if (m < 1) fail(Errc::invalid_param, "path_concentration requires m >= 1");
  return ConcentrationParams{params.a / m, m * params.zeta, params.u0};
}

}  // namespace spanroute

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spanroute/cost_model.hpp"
#include "test_helpers.hpp"

using namespace spanroute;
using testutil::thrown_code;

namespace {

// Deviation frequency of the sample mean of s draws, one Monte Carlo run per
// delta shared across the same draws.
std::vector<double> deviation_freq(const EdgeDistribution& dist, int s, int reps,
                                   const std::vector<double>& deltas, std::uint64_t seed) {
  CounterRng rng(seed, 0xC4E);
  const double theta = distribution_mean(dist);
  std::vector<long long> hits(deltas.size(), 0);
  for (int r = 0; r < reps; ++r) {
    double sum = 0.0;
    for (int i = 0; i < s; ++i) sum += sample_distribution(dist, rng.next_u01());
    const double dev = std::abs(sum / s - theta);
    for (std::size_t k = 0; k < deltas.size(); ++k)
      if (dev >= deltas[k]) ++hits[k];
  }
  std::vector<double> out(deltas.size());
  for (std::size_t k = 0; k < deltas.size(); ++k)
    out[k] = static_cast<double>(hits[k]) / static_cast<double>(reps);
  return out;
}

}  // namespace

TEST_CASE("degenerate bernoulli always pays scale") {
  const EdgeDistribution d{BernoulliDist{1.0, 2.0}};
  CounterRng rng(1, 2);
  for (int i = 0; i < 100; ++i) CHECK(sample_distribution(d, rng.next_u01()) == 2.0);
}

TEST_CASE("uniform draws stay in the support") {
  const EdgeDistribution d{UniformDist{3.0, 3.0 + 1e-6}};
  CounterRng rng(1, 3);
  for (int i = 0; i < 100; ++i) {
    const double x = sample_distribution(d, rng.next_u01());
    CHECK(x >= 3.0);
    CHECK(x <= 3.0 + 1e-6);
  }
}

TEST_CASE("pareto empirical mean matches the analytic mean") {
  const EdgeDistribution d{ParetoDist{2.0, 1.0}};
  CHECK(distribution_mean(d) == 2.0);
  CounterRng rng(7, 0x111);
  double sum = 0.0;
  for (int i = 0; i < 1'000'000; ++i) sum += sample_distribution(d, rng.next_u01());
  CHECK_THAT(sum / 1e6, Catch::Matchers::WithinAbs(2.0, 0.05));
}

TEST_CASE("mean_costs is analytic per family") {
  CostModel model;
  model.edges = {BernoulliDist{0.5, 1.0}, ExponentialDist{4.0}, ParetoDist{3.0, 2.0},
                 UniformDist{1.0, 2.0}};
  const auto means = mean_costs(model);
  CHECK(means[0] == 0.5);
  CHECK(means[1] == 0.25);
  CHECK(means[2] == 3.0);
  CHECK(means[3] == 1.5);
}

TEST_CASE("distribution invariants are enforced") {
  CHECK(thrown_code([] {
          validate_distribution(EdgeDistribution{ParetoDist{0.9, 1.0}}, "dist");
        }) == Errc::invalid_param);
  CHECK(thrown_code([] {
          validate_distribution(EdgeDistribution{UniformDist{2.0, 1.0}}, "dist");
        }) == Errc::invalid_param);
  CHECK(thrown_code([] {
          validate_distribution(EdgeDistribution{BernoulliDist{1.5, 1.0}}, "dist");
        }) == Errc::invalid_param);
  CHECK(thrown_code([] {
          validate_distribution(EdgeDistribution{ExponentialDist{0.0}}, "dist");
        }) == Errc::invalid_param);
}

TEST_CASE("declared q must sit below every pareto alpha") {
  CostModel model;
  model.edges = {ParetoDist{2.5, 1.0}, BernoulliDist{0.5, 1.0}};
  model.declared_q = 2.0;
  validate_model(model);
  model.declared_q = 2.5;
  CHECK(thrown_code([&] { validate_model(model); }) == Errc::invalid_param);
  model.declared_q = 0.5;
  CHECK(thrown_code([&] { validate_model(model); }) == Errc::invalid_param);
}

TEST_CASE("default concentration constants per family") {
  CostModel bern{{BernoulliDist{0.5, 1.0}}, std::nullopt};
  auto p = default_concentration(bern);
  CHECK(p.zeta == 0.25);
  CHECK(p.a == 2.0);
  CHECK(p.u0 == 1.0);

  CostModel unif{{UniformDist{0.0, 2.0}}, std::nullopt};
  p = default_concentration(unif);
  CHECK(p.zeta == 1.0);
  CHECK(p.a == 0.5);
  CHECK(p.u0 == 1.0);

  CostModel heavy{{ParetoDist{2.0, 1.0}}, std::nullopt};
  CHECK(thrown_code([&] { default_concentration(heavy); }) == Errc::heavy_tailed);
}

TEST_CASE("exponential zeta equals the numeric MGF curvature maximum") {
  const double rate = 1.7;
  CostModel model{{ExponentialDist{rate}}, std::nullopt};
  const auto p = default_concentration(model);
  CHECK(p.u0 == rate / 2.0);

  // Centered MGF M(u) = rate * exp(-u/rate) / (rate - u); maximize the
  // numeric second derivative over [-u0, u0].
  const auto mgf = [rate](double u) { return rate * std::exp(-u / rate) / (rate - u); };
  double best = 0.0;
  const double h = 1e-5;
  for (int i = 0; i <= 2000; ++i) {
    const double u = -p.u0 + (2.0 * p.u0) * i / 2000.0;
    const double second = (mgf(u + h) - 2.0 * mgf(u) + mgf(u - h)) / (h * h);
    best = std::max(best, second);
  }
  CHECK_THAT(p.zeta, Catch::Matchers::WithinRel(best, 1e-4));
  CHECK(p.a == 1.0 / (2.0 * p.zeta));
}

TEST_CASE("model-level constants take the elementwise worst case") {
  CostModel model{{BernoulliDist{0.5, 1.0}, UniformDist{0.0, 2.0}, ExponentialDist{4.0}},
                  std::nullopt};
  const auto p = default_concentration(model);
  CHECK(p.zeta == 1.0);  // uniform dominates: exp(4) has zeta = 10 e^-0.5 / 16
  CHECK(p.u0 == 1.0);
  CHECK(p.a == 0.5);
}

TEST_CASE("path_concentration rescales by the edge count") {
  const ConcentrationParams p{2.0, 0.25, 1.0};
  const auto scaled = path_concentration(p, 4);
  CHECK(scaled.a == 0.5);
  CHECK(scaled.zeta == 1.0);
  CHECK(scaled.u0 == 1.0);

  const auto same = path_concentration(p, 1);
  CHECK(same.a == 2.0);
  CHECK(same.zeta == 0.25);

  const auto five = path_concentration(ConcentrationParams{0.5, 1.0, 1.0}, 5);
  CHECK(five.a == 0.1);
  CHECK(five.zeta == 5.0);
  CHECK(five.u0 == 1.0);
}

TEST_CASE("empirical Chernoff bound holds for every light family") {
  struct Case {
    EdgeDistribution dist;
    int s;
    std::vector<double> deltas;
  };
  const std::vector<Case> grid{
      {BernoulliDist{0.5, 1.0}, 100, {0.05, 0.1}},
      {UniformDist{0.0, 2.0}, 100, {0.1, 0.3}},
      {ExponentialDist{1.0}, 100, {0.3, 0.5}},
  };
  const int reps = 100'000;
  for (const auto& c : grid) {
    const CostModel model{{c.dist}, std::nullopt};
    const auto p = default_concentration(model);
    for (const double delta : c.deltas) CHECK(delta <= p.zeta * p.u0);
    const auto freq = deviation_freq(c.dist, c.s, reps, c.deltas, 0xC0FFEE);
    for (std::size_t k = 0; k < c.deltas.size(); ++k) {
      const double bound = 2.0 * std::exp(-p.a * c.deltas[k] * c.deltas[k] * c.s) * 1.1;
      CHECK(freq[k] <= bound);
    }
  }
}

TEST_CASE("heavy-tailed deviation decay stays bounded after t^(q-1) scaling") {
  const EdgeDistribution d{ParetoDist{2.0, 1.0}};
  const double q = 1.5;
  const long long ts[] = {100, 1000, 10000};
  const int reps[] = {20000, 10000, 4000};
  std::vector<double> normalized;
  for (int k = 0; k < 3; ++k) {
    const auto freq = deviation_freq(d, static_cast<int>(ts[k]), reps[k], {0.5},
                                     99 + static_cast<std::uint64_t>(k));
    normalized.push_back(freq[0] * std::pow(static_cast<double>(ts[k]), q - 1.0));
  }
  CHECK(normalized[0] <= 1.0);
  CHECK(normalized[1] <= 1.2 * normalized[0]);
  CHECK(normalized[2] <= 1.2 * normalized[0]);
}

TEST_CASE("identical seeds give bit-identical cost streams") {
  CostModel model{{BernoulliDist{0.3, 1.0}, ExponentialDist{2.0}, ParetoDist{2.5, 1.0}},
                  std::nullopt};
  CostRng a(42), b(42), c(43);
  bool any_diff = false;
  for (int t = 0; t < 50; ++t) {
    const auto va = sample_costs(model, a);
    const auto vb = sample_costs(model, b);
    const auto vc = sample_costs(model, c);
    CHECK(va == vb);
    if (va != vc) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("adding an edge never perturbs existing edge streams") {
  CostModel small{{BernoulliDist{0.3, 1.0}, ExponentialDist{2.0}}, std::nullopt};
  CostModel big = small;
  big.edges.push_back(UniformDist{0.0, 1.0});
  CostRng ra(7), rb(7);
  for (int t = 0; t < 50; ++t) {
    const auto va = sample_costs(small, ra);
    const auto vb = sample_costs(big, rb);
    CHECK(va[0] == vb[0]);
    CHECK(va[1] == vb[1]);
  }
}

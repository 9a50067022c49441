#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "spanroute/graph.hpp"
#include "spanroute/spanner.hpp"

namespace spanroute {

/// A finite action set with its barycentric spanner and every action's
/// coefficients over the spanner basis, precomputed once. Immutable and
/// shareable across concurrent replications.
struct ActionSet {
  std::vector<std::vector<double>> actions;
  BarycentricSpanner spanner;
  std::vector<std::vector<double>> coeffs;  // per action, length d

  int dimension() const { return spanner.dimension(); }
  std::size_t size() const { return actions.size(); }
  std::size_t ambient() const { return spanner.ambient(); }
};

inline ActionSet make_action_set(std::vector<std::vector<double>> actions, int d,
                                 double approx_c = 1.0) {
  ActionSet set;
  set.actions = std::move(actions);
  set.spanner = build_spanner(set.actions, d, approx_c);
  set.coeffs.reserve(set.actions.size());
  for (const auto& x : set.actions) set.coeffs.push_back(set.spanner.coefficients(x));
  return set;
}

inline ActionSet action_set_from_paths(const PathSet& paths, double approx_c = 1.0) {
  std::vector<std::vector<double>> vecs;
  vecs.reserve(paths.paths.size());
  for (const auto& p : paths.paths) vecs.emplace_back(p.bits.begin(), p.bits.end());
  return make_action_set(std::move(vecs), paths.dimension, approx_c);
}

}  // namespace spanroute

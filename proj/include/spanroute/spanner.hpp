#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spanroute/error.hpp"
#include "spanroute/linalg.hpp"

namespace spanroute {

struct SpannerBuildStats {
  int swaps = 0;
  int passes = 0;
  std::vector<double> abs_det_history;  // after init, then after each accepted swap
};

/// A barycentric spanner: d linearly independent members of the input set
/// such that every set member is a linear combination of them with
/// coefficients in [-C, C]. Immutable once built.
class BarycentricSpanner {
 public:
  int dimension() const { return static_cast<int>(basis_.size()); }
  std::size_t ambient() const { return basis_.empty() ? 0 : basis_[0].size(); }
  const std::vector<std::vector<double>>& basis() const { return basis_; }
  const std::vector<int>& basis_ids() const { return basis_ids_; }
  const std::vector<int>& coordinates() const { return coords_; }
  double approx_c() const { return approx_c_; }
  const SpannerBuildStats& build_stats() const { return stats_; }

  /// Coefficients a with x = sum a_i basis_i, componentwise residual < tol.
  std::vector<double> coefficients(std::span<const double> x, double tol = 1e-9) const {
    if (x.size() != ambient())
      fail(Errc::dimension_mismatch, "vector has length " + std::to_string(x.size()) +
                                         ", expected " + std::to_string(ambient()));
    const int d = dimension();
    std::vector<double> proj(d);
    for (int r = 0; r < d; ++r) proj[r] = x[coords_[r]];
    std::vector<double> a = lu_.solve(proj);
    for (std::size_t j = 0; j < x.size(); ++j) {
      double rebuilt = 0.0;
      for (int i = 0; i < d; ++i) rebuilt += a[i] * basis_[i][j];
      if (std::abs(rebuilt - x[j]) >= tol)
        fail(Errc::out_of_span,
             "residual " + std::to_string(std::abs(rebuilt - x[j])) + " at coordinate " +
                 std::to_string(j));
    }
    return a;
  }

  friend BarycentricSpanner build_spanner(const std::vector<std::vector<double>>& set, int d,
                                          double approx_c);

 private:
  // Projected basis matrix B: row r = coordinate coords_[r], column i = basis i.
  std::vector<double> projected_matrix() const {
    const int d = dimension();
    std::vector<double> b(static_cast<std::size_t>(d) * d);
    for (int r = 0; r < d; ++r)
      for (int i = 0; i < d; ++i) b[static_cast<std::size_t>(r) * d + i] = basis_[i][coords_[r]];
    return b;
  }

  std::vector<std::vector<double>> basis_;
  std::vector<int> basis_ids_;
  std::vector<int> coords_;
  Lu lu_;
  double approx_c_ = 1.0;
  SpannerBuildStats stats_;
};

/// Awerbuch-Kleinberg construction: seed with any d independent set members,
/// then repeatedly replace a basis element when some set member enlarges the
/// projected |det| by more than the approximation factor. The linear
/// optimization oracle is a brute-force scan over the finite set.
inline BarycentricSpanner build_spanner(const std::vector<std::vector<double>>& set, int d,
                                        double approx_c = 1.0) {
  if (d < 1) fail(Errc::invalid_param, "spanner dimension must be >= 1");
  if (approx_c < 1.0) fail(Errc::invalid_param, "approx_c must be >= 1");
  if (set.empty()) fail(Errc::rank_deficient, "empty input set cannot span dimension " +
                                                  std::to_string(d));
  const std::size_t ambient = set[0].size();
  for (const auto& x : set)
    if (x.size() != ambient) fail(Errc::dimension_mismatch, "input vectors differ in length");
  if (static_cast<std::size_t>(d) > ambient)
    fail(Errc::rank_deficient, "cannot span dimension " + std::to_string(d) + " in R^" +
                                   std::to_string(ambient));

  BarycentricSpanner sp;
  sp.approx_c_ = approx_c;

  // Greedy scan for d independent members; any further independent member
  // means the set rank exceeds d.
  constexpr double kRelTol = 1e-9;
  std::vector<std::vector<double>> ortho;
  auto residual_norm = [&](const std::vector<double>& x, std::vector<double>& r) {
    r = x;
    for (const auto& q : ortho) {
      const double proj = dot(r, q);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= proj * q[j];
    }
    return std::sqrt(dot(r, r));
  };
  std::vector<double> resid;
  for (std::size_t idx = 0; idx < set.size(); ++idx) {
    const auto& x = set[idx];
    const double norm = std::sqrt(dot(x, x));
    if (norm == 0.0) continue;
    const double rn = residual_norm(x, resid);
    if (rn <= kRelTol * norm) continue;
    if (sp.dimension() == d)
      fail(Errc::rank_deficient, "set spans more than " + std::to_string(d) + " dimensions");
    for (auto& v : resid) v /= rn;
    ortho.push_back(resid);
    sp.basis_.push_back(x);
    sp.basis_ids_.push_back(static_cast<int>(idx));
  }
  if (sp.dimension() < d)
    fail(Errc::rank_deficient, "set spans only " + std::to_string(sp.dimension()) +
                                   " dimensions, expected " + std::to_string(d));

  // Rank-revealing coordinate projection: full-pivot elimination on the
  // initial basis rows picks d coordinates with a nonsingular d x d minor.
  {
    std::vector<std::vector<double>> work = sp.basis_;
    std::vector<char> used(ambient, 0);
    std::vector<int> row_order(d);
    for (int i = 0; i < d; ++i) row_order[i] = i;
    for (int k = 0; k < d; ++k) {
      int best_row = -1;
      std::size_t best_col = 0;
      double best = 0.0;
      for (int i = k; i < d; ++i) {
        for (std::size_t j = 0; j < ambient; ++j) {
          if (used[j]) continue;
          const double v = std::abs(work[row_order[i]][j]);
          if (v > best) {
            best = v;
            best_row = i;
            best_col = j;
          }
        }
      }
      if (best_row < 0) fail(Errc::rank_deficient, "initial basis numerically rank deficient");
      std::swap(row_order[k], row_order[best_row]);
      used[best_col] = 1;
      sp.coords_.push_back(static_cast<int>(best_col));
      const auto& pivot_row = work[row_order[k]];
      const double pv = pivot_row[best_col];
      for (int i = k + 1; i < d; ++i) {
        auto& row = work[row_order[i]];
        const double f = row[best_col] / pv;
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < ambient; ++j) row[j] -= f * pivot_row[j];
      }
    }
  }

  // Determinant-swap iterations. For slot i the functional y with B^T y = e_i
  // satisfies det(B[i -> x]) = det(B) * (y . proj(x)), so the oracle just
  // maximizes |y . proj(x)| and a swap is an improvement iff that exceeds
  // approx_c (current basis scores exactly 1).
  const long long swap_cap = static_cast<long long>(d) * static_cast<long long>(set.size()) * 64;
  constexpr double kSwapMargin = 1.0 + 1e-10;
  std::vector<double> proj(d), unit(d);
  long long swaps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    ++sp.stats_.passes;
    if (sp.stats_.passes > swap_cap)
      fail(Errc::non_convergence, "spanner swap iteration exceeded cap");
    for (int i = 0; i < d; ++i) {
      Lu lu = Lu::factor(sp.projected_matrix(), d);
      if (lu.singular()) fail(Errc::non_convergence, "projected basis became singular");
      if (sp.stats_.abs_det_history.empty())
        sp.stats_.abs_det_history.push_back(std::abs(lu.det()));
      std::fill(unit.begin(), unit.end(), 0.0);
      unit[i] = 1.0;
      const std::vector<double> y = lu.solve_transpose(unit);
      double best = 0.0;
      int best_idx = -1;
      for (std::size_t idx = 0; idx < set.size(); ++idx) {
        for (int r = 0; r < d; ++r) proj[r] = set[idx][sp.coords_[r]];
        const double score = std::abs(dot(y, proj));
        if (score > best) {
          best = score;
          best_idx = static_cast<int>(idx);
        }
      }
      if (best_idx >= 0 && best > approx_c * kSwapMargin) {
        sp.basis_[i] = set[best_idx];
        sp.basis_ids_[i] = best_idx;
        ++sp.stats_.swaps;
        sp.stats_.abs_det_history.push_back(std::abs(Lu::factor(sp.projected_matrix(), d).det()));
        changed = true;
        if (++swaps > swap_cap) fail(Errc::non_convergence, "spanner swap count exceeded cap");
      }
    }
  }

  sp.lu_ = Lu::factor(sp.projected_matrix(), d);
  if (sp.lu_.singular()) fail(Errc::non_convergence, "final projected basis singular");
  return sp;
}

inline std::vector<double> coefficients(const BarycentricSpanner& spanner,
                                        std::span<const double> x, double tol = 1e-9) {
  return spanner.coefficients(x, tol);
}

}  // namespace spanroute

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <vector>

#include "spanroute/error.hpp"

namespace spanroute {

/// Incremental exact rank of a matrix with 0/1 entries, computed over the
/// rationals by fraction-free row elimination with gcd reduction.
class ExactRank {
 public:
  explicit ExactRank(std::size_t cols) : cols_(cols) {}

  /// Adds one row; returns true if it enlarged the row space.
  bool add_row(std::span<const std::uint8_t> bits) {
    std::vector<long long> v(bits.begin(), bits.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      if (v[p] == 0) continue;
      eliminate(v, rows_[i], p);
    }
    std::size_t pivot = cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j] != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot == cols_) return false;
    if (v[pivot] < 0) {
      for (auto& x : v) x = -x;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  static void eliminate(std::vector<long long>& v, const std::vector<long long>& r,
                        std::size_t p) {
    const __int128 a = r[p];
    const __int128 b = v[p];
    long long g = 0;
    constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
    for (std::size_t j = 0; j < v.size(); ++j) {
      __int128 x = a * v[j] - b * r[j];
      if (x >= kLimit || x <= -kLimit)
        fail(Errc::non_convergence, "integer overflow in exact rank elimination");
      v[j] = static_cast<long long>(x);
      g = std::gcd(g, std::llabs(v[j]));
    }
    if (g > 1) {
      for (auto& x : v) x /= g;
    }
  }

  std::size_t cols_;
  std::vector<std::vector<long long>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Dense LU factorization with partial pivoting for small square systems.
/// Stores PA = LU with an explicit row permutation.
class Lu {
 public:
  /// `m` is row-major n x n. A pivot below `tol` marks the matrix singular.
  static Lu factor(std::vector<double> m, int n, double tol = 1e-12) {
    Lu lu;
    lu.n_ = n;
    lu.a_ = std::move(m);
    lu.perm_.resize(n);
    for (int i = 0; i < n; ++i) lu.perm_[i] = i;
    lu.sign_ = 1;
    for (int k = 0; k < n; ++k) {
      int piv = k;
      double best = std::abs(lu.at(k, k));
      for (int i = k + 1; i < n; ++i) {
        const double cand = std::abs(lu.at(i, k));
        if (cand > best) {
          best = cand;
          piv = i;
        }
      }
      if (best <= tol) {
        lu.singular_ = true;
        return lu;
      }
      if (piv != k) {
        for (int j = 0; j < n; ++j) std::swap(lu.at(piv, j), lu.at(k, j));
        std::swap(lu.perm_[piv], lu.perm_[k]);
        lu.sign_ = -lu.sign_;
      }
      const double d = lu.at(k, k);
      for (int i = k + 1; i < n; ++i) {
        const double f = lu.at(i, k) / d;
        lu.at(i, k) = f;
        for (int j = k + 1; j < n; ++j) lu.at(i, j) -= f * lu.at(k, j);
      }
    }
    return lu;
  }

  bool singular() const { return singular_; }

  double det() const {
    if (singular_) return 0.0;
    double d = sign_;
    for (int i = 0; i < n_; ++i) d *= at(i, i);
    return d;
  }

  /// Solves A x = b.
  std::vector<double> solve(std::span<const double> b) const {
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (int i = 1; i < n_; ++i) {
      double s = x[i];
      for (int j = 0; j < i; ++j) s -= at(i, j) * x[j];
      x[i] = s;
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double s = x[i];
      for (int j = i + 1; j < n_; ++j) s -= at(i, j) * x[j];
      x[i] = s / at(i, i);
    }
    return x;
  }

  /// Solves A^T x = b.
  std::vector<double> solve_transpose(std::span<const double> b) const {
    std::vector<double> z(b.begin(), b.end());
    for (int i = 0; i < n_; ++i) {
      double s = z[i];
      for (int j = 0; j < i; ++j) s -= at(j, i) * z[j];
      z[i] = s / at(i, i);
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double s = z[i];
      for (int j = i + 1; j < n_; ++j) s -= at(j, i) * z[j];
      z[i] = s;
    }
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[perm_[i]] = z[i];
    return x;
  }

 private:
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  int n_ = 0;
  std::vector<double> a_;
  std::vector<int> perm_;
  int sign_ = 1;
  bool singular_ = false;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace spanroute

// Copyright 2026 The lpinfeas Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sparse matrix storage and the handful of vector kernels PDHG needs. The
// solver only ever touches A through products with A and A^T, so the matrix
// keeps both a row-compressed copy of A and a row-compressed copy of A^T.
// Entry order inside each row is fixed at construction (ascending column), so
// every product sums in the same order on every run.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lpinfeas/error.hpp"

namespace lpinfeas {

using Vector = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;

  // Duplicate (row, col) pairs are summed. Explicit zeros are dropped.
  SparseMatrix(std::size_t n_rows, std::size_t n_cols,
               std::vector<Triplet> entries)
      : n_rows_(n_rows), n_cols_(n_cols) {
    for (const Triplet& t : entries) {
      if (t.row >= n_rows || t.col >= n_cols) {
        throw DimensionError("matrix entry (" + std::to_string(t.row) + ", " +
                             std::to_string(t.col) + ") out of range for " +
                             std::to_string(n_rows) + "x" +
                             std::to_string(n_cols));
      }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Triplet& a, const Triplet& b) {
                       return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                     });
    std::vector<Triplet> merged;
    merged.reserve(entries.size());
    for (const Triplet& t : entries) {
      if (!merged.empty() && merged.back().row == t.row &&
          merged.back().col == t.col) {
        merged.back().value += t.value;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });
    BuildRowCompressed(merged);
  }

  static SparseMatrix FromDense(const std::vector<Vector>& rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].size() != n) throw DimensionError("ragged dense matrix");
      for (std::size_t j = 0; j < n; ++j) {
        if (rows[i][j] != 0.0) entries.push_back({i, j, rows[i][j]});
      }
    }
    return SparseMatrix(m, n, std::move(entries));
  }

  static SparseMatrix Identity(std::size_t n) {
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
    return SparseMatrix(n, n, std::move(entries));
  }

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }

  // Row-major triplets in storage order.
  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (std::size_t i = 0; i < n_rows_; ++i) {
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) {
        out.push_back({i, col_index_[p], values_[p]});
      }
    }
    return out;
  }

  double at(std::size_t i, std::size_t j) const {
    const auto first = col_index_.begin() + row_start_[i];
    const auto last = col_index_.begin() + row_start_[i + 1];
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_index_.begin())];
  }

  SparseMatrix transpose() const {
    std::vector<Triplet> entries;
    entries.reserve(nnz());
    for (const Triplet& t : triplets()) entries.push_back({t.col, t.row, t.value});
    return SparseMatrix(n_cols_, n_rows_, std::move(entries));
  }

  // Columns listed in `keep`, in that order.
  SparseMatrix select_columns(std::span<const std::size_t> keep) const {
    std::vector<std::size_t> new_index(n_cols_, n_cols_);
    for (std::size_t k = 0; k < keep.size(); ++k) new_index[keep[k]] = k;
    std::vector<Triplet> entries;
    for (const Triplet& t : triplets()) {
      if (new_index[t.col] != n_cols_) entries.push_back({t.row, new_index[t.col], t.value});
    }
    return SparseMatrix(n_rows_, keep.size(), std::move(entries));
  }

  std::vector<Vector> to_dense() const {
    std::vector<Vector> dense(n_rows_, Vector(n_cols_, 0.0));
    for (const Triplet& t : triplets()) dense[t.row][t.col] = t.value;
    return dense;
  }

  bool operator==(const SparseMatrix& other) const {
    return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_ &&
           row_start_ == other.row_start_ && col_index_ == other.col_index_ &&
           values_ == other.values_;
  }

  // y = A x, summing each row in stored order.
  void multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_cols_ || y.size() != n_rows_) {
      throw DimensionError("spmv: dimension mismatch");
    }
    for (std::size_t i = 0; i < n_rows_; ++i) {
      double acc = 0.0;
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) {
        acc += values_[p] * x[col_index_[p]];
      }
      y[i] = acc;
    }
  }

  // x = A^T y, summing over the transposed copy in stored order.
  void multiply_transpose(std::span<const double> y, std::span<double> x) const {
    if (y.size() != n_rows_ || x.size() != n_cols_) {
      throw DimensionError("spmv_t: dimension mismatch");
    }
    for (std::size_t j = 0; j < n_cols_; ++j) {
      double acc = 0.0;
      for (std::size_t p = t_col_start_[j]; p < t_col_start_[j + 1]; ++p) {
        acc += t_values_[p] * y[t_row_index_[p]];
      }
      x[j] = acc;
    }
  }

  // Entries of column j as (row, value) pairs.
  std::vector<std::pair<std::size_t, double>> column(std::size_t j) const {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t p = t_col_start_[j]; p < t_col_start_[j + 1]; ++p) {
      out.emplace_back(t_row_index_[p], t_values_[p]);
    }
    return out;
  }

 private:
  void BuildRowCompressed(const std::vector<Triplet>& sorted) {
    row_start_.assign(n_rows_ + 1, 0);
    col_index_.clear();
    values_.clear();
    for (const Triplet& t : sorted) {
      ++row_start_[t.row + 1];
      col_index_.push_back(t.col);
      values_.push_back(t.value);
    }
    for (std::size_t i = 0; i < n_rows_; ++i) row_start_[i + 1] += row_start_[i];

    // Counting sort by column keeps rows ascending inside each column.
    t_col_start_.assign(n_cols_ + 1, 0);
    for (const Triplet& t : sorted) ++t_col_start_[t.col + 1];
    for (std::size_t j = 0; j < n_cols_; ++j) t_col_start_[j + 1] += t_col_start_[j];
    t_row_index_.assign(sorted.size(), 0);
    t_values_.assign(sorted.size(), 0.0);
    std::vector<std::size_t> next(t_col_start_.begin(), t_col_start_.end() - 1);
    for (const Triplet& t : sorted) {
      const std::size_t p = next[t.col]++;
      t_row_index_[p] = t.row;
      t_values_[p] = t.value;
    }
  }

  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<std::size_t> col_index_;
  Vector values_;
  std::vector<std::size_t> t_col_start_{0};
  std::vector<std::size_t> t_row_index_;
  Vector t_values_;
};

inline Vector spmv(const SparseMatrix& a, std::span<const double> x) {
  Vector y(a.rows());
  a.multiply(x, y);
  return y;
}

inline Vector spmv_t(const SparseMatrix& a, std::span<const double> y) {
  Vector x(a.cols());
  a.multiply_transpose(y, x);
  return x;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Largest |a_i| over finite entries; infinities are bounds, not data.
inline double norm_inf_finite(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) {
    if (std::isfinite(v)) m = std::max(m, std::abs(v));
  }
  return m;
}

inline Vector axpby(double alpha, std::span<const double> x, double beta,
                    std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("axpby: dimension mismatch");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + beta * y[i];
  return out;
}

inline Vector subtract(std::span<const double> x, std::span<const double> y) {
  return axpby(1.0, x, -1.0, y);
}

inline Vector scaled(double alpha, std::span<const double> x) {
  Vector out(x.begin(), x.end());
  for (double& v : out) v *= alpha;
  return out;
}

inline Vector concat(std::span<const double> x, std::span<const double> y) {
  Vector z(x.begin(), x.end());
  z.insert(z.end(), y.begin(), y.end());
  return z;
}

struct OpNormEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool zero_matrix = false;
};

namespace detail {

inline OpNormEstimate power_iteration(const SparseMatrix& a, Vector x, double tol,
                                      std::size_t max_iters) {
  OpNormEstimate est;
  Vector ax(a.rows());
  Vector atax(a.cols());
  double previous = 0.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    a.multiply(x, ax);
    a.multiply_transpose(ax, atax);
    const double lambda = dot(x, atax);  // ||A x||^2 with ||x|| = 1
    const double norm = norm2(atax);
    est.iterations = it;
    est.value = std::sqrt(std::max(lambda, 0.0));
    if (norm == 0.0) {
      // Start vector in the null space; restart from a deterministic
      // alternating-sign vector.
      for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = ((j % 2 == 0) ? 1.0 : -1.0) / std::sqrt(static_cast<double>(x.size()));
      }
      continue;
    }
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = atax[j] / norm;
    if (std::abs(est.value - previous) <= tol * est.value) {
      est.converged = true;
      break;
    }
    previous = est.value;
  }
  return est;
}

}  // namespace detail

// Power iteration on A^T A, returning a Rayleigh-quotient estimate of
// sigma_max(A) that approaches it from below. The normalized all-ones start
// can be orthogonal to the top singular vector (A^T A = [[9,-6],[-6,9]] is
// one example), so a second run from a fixed-seed random start is made and
// the larger estimate kept.
inline OpNormEstimate opnorm_estimate(const SparseMatrix& a, double tol = 1e-6,
                                      std::size_t max_iters = 500) {
  if (a.nnz() == 0 || a.cols() == 0) {
    OpNormEstimate est;
    est.zero_matrix = true;
    est.converged = true;
    return est;
  }
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(a.cols()));
  OpNormEstimate est = detail::power_iteration(a, Vector(a.cols(), inv_sqrt_n), tol, max_iters);
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  Vector r(a.cols());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = ((j % 2 == 0) ? 1.0 : -1.0) * u(rng);
  const double rn = norm2(r);
  for (double& v : r) v /= rn;
  const OpNormEstimate second = detail::power_iteration(a, std::move(r), tol, max_iters);
  const std::size_t total = est.iterations + second.iterations;
  if (second.value > est.value) est = second;
  est.iterations = total;
  if (est.value == 0.0) est.zero_matrix = true;
  return est;
}

struct StepSizes {
  double eta = 0.0;  // primal
  double tau = 0.0;  // dual
};

// eta = tau = factor / sigma_hat, so eta * tau * sigma_hat^2 = factor^2.
inline StepSizes default_step_sizes(const SparseMatrix& a, double factor = 0.9) {
  if (!(factor > 0.0 && factor < 1.0)) {
    throw ConfigError("step factor must lie in (0, 1)");
  }
  const OpNormEstimate est = opnorm_estimate(a);
  if (est.zero_matrix) {
    // Any steps satisfy eta * tau * ||A||^2 < 1 when A = 0.
    return {factor, factor};
  }
  return {factor / est.value, factor / est.value};
}

inline bool steps_admissible(const StepSizes& s, double sigma_hat) {
  return s.eta > 0.0 && s.tau > 0.0 && s.eta * s.tau * sigma_hat * sigma_hat < 1.0;
}

// Sign of the off-diagonal coupling in M. The standard form iteration pairs
// with M = [I/eta, -A^T; -A, I/tau]; the inequality form (whose saddle
// function carries -y^T A x) pairs with M = [I/eta, A^T; A, I/tau].
enum class Coupling { kStandard, kInequality };

// ||z||_M for z = (x, y) with x of length A.cols() and y of length A.rows().
inline double m_norm(std::span<const double> z, const SparseMatrix& a,
                     const StepSizes& s, Coupling coupling = Coupling::kStandard) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  if (z.size() != n + m) throw DimensionError("m_norm: dimension mismatch");
  if (!(s.eta > 0.0 && s.tau > 0.0)) throw ConfigError("m_norm: steps must be positive");
  const std::span<const double> x = z.subspan(0, n);
  const std::span<const double> y = z.subspan(n, m);
  const double sign = coupling == Coupling::kStandard ? -2.0 : 2.0;
  const Vector ax = spmv(a, x);
  const double q = dot(x, x) / s.eta + sign * dot(y, ax) + dot(y, y) / s.tau;
  // M is positive definite when eta * tau * ||A||^2 < 1, and then
  // q >= (1 - sqrt(eta tau) ||A||) (||x||^2/eta + ||y||^2/tau).
  const double floor_q = dot(x, x) / s.eta + dot(y, y) / s.tau;
  if (q < -1e-12 * floor_q) {
    throw ConfigError("m_norm: M is not positive definite for these step sizes");
  }
  return std::sqrt(std::max(q, 0.0));
}

// Checks eta * tau * sigma_hat^2 < 1 before handing out an M-norm.
inline void require_positive_definite_m(const SparseMatrix& a, const StepSizes& s) {
  const OpNormEstimate est = opnorm_estimate(a);
  // The Rayleigh estimate approaches from below; allow for the tolerance.
  const double sigma_upper = est.value * (1.0 + 1e-6);
  if (!steps_admissible(s, sigma_upper)) {
    throw ConfigError("step sizes violate eta * tau * ||A||^2 < 1");
  }
}

}  // namespace lpinfeas

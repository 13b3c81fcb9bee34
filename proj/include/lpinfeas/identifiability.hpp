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

// Ray analysis of PDHG on standard-form LPs: the displacement v and a point
// z* with T^k(z*) = z* + k v, the index partition induced by v, the
// auxiliary LP whose operator is T shifted by v, active-set freezing, and
// the affine map that PDHG becomes once the active set is fixed.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/operator_lab.hpp"
#include "lpinfeas/pdhg.hpp"

namespace lpinfeas {

// --- partition and auxiliary problem -----------------------------------------

struct IndexPartition {
  std::vector<std::size_t> B;
  std::vector<std::size_t> N1;
  std::vector<std::size_t> N2;
};

inline double default_tol_v(std::span<const double> v) { return 1e-7 * (1.0 + norm_inf(v)); }

// B = {(v_x)_i > tol}, N2 = {(v_x)_i <= tol, (A^T v_y)_i > tol}, N1 the rest.
// Free variables always sit in B and fixed ones in N2, so the auxiliary
// problem keeps their cones.
inline IndexPartition partition_indices(std::span<const double> v, const StandardFormLp& p,
                                        double tol_v) {
  const std::size_t n = p.num_vars();
  if (v.size() != n + p.num_rows()) throw DimensionError("partition_indices: bad v");
  const Vector atvy = spmv_t(p.a, v.subspan(n));
  IndexPartition part;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.cone_of(i) == VarCone::kFree || v[i] > tol_v) {
      part.B.push_back(i);
    } else if (p.cone_of(i) == VarCone::kZero || atvy[i] > tol_v) {
      part.N2.push_back(i);
    } else {
      part.N1.push_back(i);
    }
  }
  return part;
}

inline IndexPartition partition_indices(std::span<const double> v, const StandardFormLp& p) {
  return partition_indices(v, p, default_tol_v(v));
}

// min (c + v_x/eta)^T x  s.t.  A x = b + v_y/tau,  x_B free, x_N1 >= 0, x_N2 = 0.
// Only the B entries of v_x enter the cost.
inline StandardFormLp build_auxiliary(const StandardFormLp& p, std::span<const double> v,
                                      const StepSizes& steps, const IndexPartition& part) {
  const std::size_t n = p.num_vars();
  StandardFormLp aux;
  aux.a = p.a;
  aux.c = p.c;
  aux.b = p.b;
  aux.objective_offset = p.objective_offset;
  aux.cone.assign(n, VarCone::kNonNegative);
  for (std::size_t i : part.B) {
    aux.c[i] += v[i] / steps.eta;
    aux.cone[i] = VarCone::kFree;
  }
  for (std::size_t i : part.N2) aux.cone[i] = VarCone::kZero;
  for (std::size_t r = 0; r < p.num_rows(); ++r) aux.b[r] += v[n + r] / steps.tau;
  return aux;
}

// --- ray refinement ----------------------------------------------------------

struct RaySolution {
  Vector z_star;
  Vector v;
  double residual = 0.0;      // ||T(z*) - z* - v||_M
  double ray_residual = 0.0;  // max over k < ray_steps of ||T^{k+1} z* - T^k z* - v||_M
  std::size_t rounds = 0;
  bool converged = false;
  std::string warning;
  IndexPartition partition;
};

struct RefineOptions {
  std::size_t max_rounds = 5;
  std::size_t max_inner_iters = 200000;
  double inner_tol = 1e-14;
  double target = 1e-10;  // relative to max(1, ||v||_M)
  std::size_t ray_steps = 20;
};

namespace detail {

inline double ray_residual(const StandardFormLp& p, const StepSizes& steps, Vector z,
                           std::span<const double> v, std::size_t count) {
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    Vector next = apply_operator(p, steps, z);
    Vector e = subtract(next, z);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= v[i];
    worst = std::max(worst, m_norm(e, p.a, steps));
    z = std::move(next);
  }
  return worst;
}

}  // namespace detail

// Each round: partition by the current v, build the auxiliary problem,
// iterate its operator until successive differences agree, then take
// v <- T(z) - z at the reached point (with v_x cleared outside B) and
// z* <- z. Stops once the ray residual meets the target.
inline RaySolution refine_ray(const StandardFormLp& p, const StepSizes& steps,
                              std::span<const double> z_warm, std::span<const double> v_init,
                              const RefineOptions& opt = {}) {
  const std::size_t n = p.num_vars();
  const std::size_t dim = n + p.num_rows();
  if (z_warm.size() != dim || v_init.size() != dim) throw DimensionError("refine_ray: bad input");
  RaySolution best;
  best.ray_residual = std::numeric_limits<double>::infinity();
  Vector v(v_init.begin(), v_init.end());
  Vector z(z_warm.begin(), z_warm.end());
  for (std::size_t round = 1; round <= opt.max_rounds; ++round) {
    const IndexPartition part = partition_indices(v, p);
    const StandardFormLp aux = build_auxiliary(p, v, steps, part);
    Vector d_prev;
    for (std::size_t it = 0; it < opt.max_inner_iters; ++it) {
      Vector next = apply_operator(aux, steps, z);
      Vector d = subtract(next, z);
      z = std::move(next);
      if (!d_prev.empty()) {
        const double change = m_norm(subtract(d, d_prev), p.a, steps);
        if (change <= opt.inner_tol * (1.0 + m_norm(z, p.a, steps))) break;
      }
      d_prev = std::move(d);
    }
    Vector v_new = subtract(apply_operator(p, steps, z), z);
    const double tol = default_tol_v(v_new);
    for (std::size_t i = 0; i < n; ++i) {
      if (p.cone_of(i) == VarCone::kNonNegative && v_new[i] <= tol) v_new[i] = 0.0;
    }
    RaySolution cur;
    cur.z_star = z;
    cur.v = v_new;
    cur.rounds = round;
    cur.partition = partition_indices(v_new, p);
    Vector e = subtract(apply_operator(p, steps, z), z);
    for (std::size_t i = 0; i < dim; ++i) e[i] -= v_new[i];
    cur.residual = m_norm(e, p.a, steps);
    cur.ray_residual = detail::ray_residual(p, steps, z, v_new, opt.ray_steps);
    const double target = opt.target * std::max(1.0, m_norm(v_new, p.a, steps));
    cur.converged = cur.ray_residual <= target;
    if (cur.ray_residual < best.ray_residual) best = cur;
    if (cur.converged) return cur;
    v = std::move(v_new);
  }
  best.warning = "refinement did not reach the residual target";
  return best;
}

inline RaySolution refine_ray(const StandardFormLp& p, const StepSizes& steps,
                              const Trajectory& warm, const RefineOptions& opt = {}) {
  if (warm.last() < 1000) throw ConfigError("refine_ray: warm trajectory needs >= 1000 iterations");
  const FixedPointOperator t = pdhg_operator(p, steps);
  const VEstimate est = estimate_v(warm, t);
  return refine_ray(p, steps, warm.z(warm.last()), est.averaged_difference, opt);
}

// max_{k <= count} ||T~^k(z) - (T^k(z) - k v)||_M, iterating T and T~ side by side.
inline double shift_identity_deviation(const StandardFormLp& p, const StandardFormLp& aux,
                                       const StepSizes& steps, std::span<const double> z,
                                       std::span<const double> v, std::size_t count) {
  Vector zt(z.begin(), z.end());
  Vector za(z.begin(), z.end());
  double worst = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    zt = apply_operator(p, steps, zt);
    za = apply_operator(aux, steps, za);
    Vector e(zt.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = za[i] - (zt[i] - static_cast<double>(k) * v[i]);
    }
    worst = std::max(worst, m_norm(e, p.a, steps));
  }
  return worst;
}

// c^T v_x + ||v_x||^2 / eta and b^T v_y + ||v_y||^2 / tau.
struct FarkasIdentity {
  double primal_gap = 0.0;
  double primal_scale = 0.0;  // ||v_x||^2
  double dual_gap = 0.0;
  double dual_scale = 0.0;    // ||v_y||^2
};

inline FarkasIdentity farkas_identity(const StandardFormLp& p, const StepSizes& steps,
                                      std::span<const double> v) {
  const std::size_t n = p.num_vars();
  const auto vx = v.subspan(0, n);
  const auto vy = v.subspan(n);
  FarkasIdentity f;
  f.primal_scale = dot(vx, vx);
  f.dual_scale = dot(vy, vy);
  f.primal_gap = dot(p.c, vx) + f.primal_scale / steps.eta;
  f.dual_gap = dot(p.b, vy) + f.dual_scale / steps.tau;
  return f;
}

// --- active sets ---------------------------------------------------------------

class ActiveSetTracker {
 public:
  explicit ActiveSetTracker(double tol_a = 1e-9) : tol_a_(tol_a) {}

  // Returns true when the set differs from the previous observation.
  bool observe(const StandardFormLp& p, std::size_t k, std::span<const double> x) {
    std::vector<std::size_t> now = active_set(p, x, tol_a_);
    bool changed = false;
    if (!initialized_) {
      initialized_ = true;
      first_ = k;
    } else if (now != current_) {
      changes_.push_back(k);
      changed = true;
    }
    current_ = std::move(now);
    last_ = k;
    return changed;
  }

  const std::vector<std::size_t>& changes() const { return changes_; }
  const std::vector<std::size_t>& current() const { return current_; }
  std::size_t last_observed() const { return last_; }
  std::size_t first_observed() const { return first_; }

 private:
  double tol_a_;
  bool initialized_ = false;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> changes_;
  std::size_t first_ = 0;
  std::size_t last_ = 0;
};

struct FreezeInfo {
  std::size_t K = 0;
  bool frozen = false;
  // Set when the last change falls in the second half of the budget: the
  // set may still be moving, and K is reported as the budget.
  bool not_observed = false;
};

// K is the last iteration at which the set changed (0 when it never did).
inline FreezeInfo freeze_detector(std::span<const std::size_t> changes, std::size_t budget) {
  FreezeInfo f;
  const std::size_t last = changes.empty() ? 0 : changes.back();
  if (2 * last <= budget) {
    f.K = last;
    f.frozen = true;
  } else {
    f.K = budget;
    f.not_observed = true;
  }
  return f;
}

inline FreezeInfo freeze_detector(const ActiveSetTracker& t) {
  return freeze_detector(t.changes(), t.last_observed());
}

inline ActiveSetTracker track_active_sets(const StandardFormLp& p, const Trajectory& traj,
                                          double tol_a = 1e-9) {
  ActiveSetTracker tracker(tol_a);
  const std::size_t n = p.num_vars();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Vector& z = traj.z(k);
    tracker.observe(p, k, std::span<const double>(z).subspan(0, n));
  }
  return tracker;
}

// Columns that are not at their bound (plus free columns).
inline std::vector<std::size_t> support_of(const StandardFormLp& p, std::span<const double> x,
                                           double tol_a = 1e-9) {
  const std::vector<std::size_t> active = active_set(p, x, tol_a);
  std::vector<std::size_t> s;
  std::size_t a = 0;
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    if (a < active.size() && active[a] == i) {
      ++a;
      continue;
    }
    if (p.cone_of(i) == VarCone::kZero) continue;
    s.push_back(i);
  }
  return s;
}

// --- affine phase --------------------------------------------------------------

inline constexpr std::size_t kDenseLimit = 2000;

struct AffinePhase {
  std::vector<std::size_t> support;
  Eigen::MatrixXd Q;
  Eigen::VectorXd p;
  Eigen::MatrixXd Q_inf;
  double mu = 0.0;          // largest block modulus sqrt(1 - eta tau sigma^2) over sigma > 0
  double lower_rate = 1.0;  // smallest block singular value over sigma > 0
  std::vector<double> sigma_list;
};

inline Eigen::Matrix2d block_matrix(double eta, double tau, double sigma) {
  Eigen::Matrix2d b;
  b << 1.0, -eta * sigma, tau * sigma, 1.0 - 2.0 * tau * eta * sigma * sigma;
  return b;
}

// (1 - eta tau s^2) +- i sqrt(eta tau s^2 (1 - eta tau s^2))
inline std::array<std::complex<double>, 2> block_eigenvalues(double eta, double tau, double sigma) {
  const double t = eta * tau * sigma * sigma;
  const double im = std::sqrt(std::max(t * (1.0 - t), 0.0));
  return {std::complex<double>(1.0 - t, im), std::complex<double>(1.0 - t, -im)};
}

inline Eigen::MatrixXd dense(const SparseMatrix& a) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.rows()),
                                              static_cast<Eigen::Index>(a.cols()));
  for (const Triplet& t : a.triplets()) {
    out(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
  }
  return out;
}

// z+ = Q z - p with D = diag(1_S):
//   Q = [I, -eta D A^T; tau A D, I - 2 tau eta A D A^T]
//   p = [eta D c; 2 tau eta A D c + tau b]
// valid on points whose x vanishes off S.
inline AffinePhase affine_phase(const StandardFormLp& lp, const StepSizes& steps,
                                std::vector<std::size_t> support) {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();
  if (n + m > kDenseLimit) {
    throw ConfigError("affine_phase: n + m exceeds the dense limit; use rate fits instead");
  }
  std::sort(support.begin(), support.end());
  const auto N = static_cast<Eigen::Index>(n);
  const auto M = static_cast<Eigen::Index>(m);
  const double eta = steps.eta;
  const double tau = steps.tau;
  const Eigen::MatrixXd A = dense(lp.a);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t i : support) D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  const Eigen::MatrixXd AD = A * D;
  Eigen::Map<const Eigen::VectorXd> c(lp.c.data(), N);
  Eigen::Map<const Eigen::VectorXd> b(lp.b.data(), M);

  AffinePhase ph;
  ph.support = support;
  ph.Q = Eigen::MatrixXd::Identity(N + M, N + M);
  ph.Q.block(0, N, N, M) = -eta * D * A.transpose();
  ph.Q.block(N, 0, M, N) = tau * AD;
  ph.Q.block(N, N, M, M) -= 2.0 * tau * eta * AD * AD.transpose();
  ph.p.resize(N + M);
  ph.p.head(N) = eta * D * c;
  ph.p.tail(M) = 2.0 * tau * eta * AD * c + tau * b;

  // SVD of A_S (columns in S only).
  const auto S = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd AS(M, S);
  for (Eigen::Index j = 0; j < S; ++j) AS.col(j) = A.col(static_cast<Eigen::Index>(support[j]));
  Eigen::MatrixXd Px = Eigen::MatrixXd::Identity(N, N);
  Eigen::MatrixXd Py = Eigen::MatrixXd::Identity(M, M);
  if (S > 0 && M > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(AS, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      ph.sigma_list.push_back(sv(i));
      if (sv(i) > 1e-12 * std::max(1.0, smax)) ++rank;
    }
    const Eigen::MatrixXd Vp = svd.matrixV().leftCols(rank);
    const Eigen::MatrixXd Up = svd.matrixU().leftCols(rank);
    // x-block: projector onto null(A_S) inside S, identity off S.
    Eigen::MatrixXd Ps = Eigen::MatrixXd::Identity(S, S) - Vp * Vp.transpose();
    for (Eigen::Index i = 0; i < S; ++i) {
      for (Eigen::Index j = 0; j < S; ++j) {
        Px(static_cast<Eigen::Index>(support[i]), static_cast<Eigen::Index>(support[j])) = Ps(i, j);
      }
    }
    Py -= Up * Up.transpose();
    ph.mu = 0.0;
    ph.lower_rate = 1.0;
    for (Eigen::Index i = 0; i < rank; ++i) {
      const double s = sv(i);
      ph.mu = std::max(ph.mu, std::sqrt(std::max(0.0, 1.0 - eta * tau * s * s)));
      Eigen::JacobiSVD<Eigen::Matrix2d> bs(block_matrix(eta, tau, s));
      ph.lower_rate = std::min(ph.lower_rate, bs.singularValues()(1));
    }
  }
  ph.Q_inf = Eigen::MatrixXd::Zero(N + M, N + M);
  ph.Q_inf.topLeftCorner(N, N) = Px;
  ph.Q_inf.bottomRightCorner(M, M) = Py;
  return ph;
}

inline double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  double r = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()(i)));
  return r;
}

// --- rate regimes after freezing -------------------------------------------------

struct Theorem5Options {
  double bracket_slack = 0.02;
  double slope_target = -1.0;
  double slope_slack = 0.15;
  // The difference error is fit until it falls below floor * (1 + ||z^k||_inf).
  double floor = 1e-11;
  double power_k_min = 100.0;
};

struct Theorem5Report {
  bool skipped = false;
  std::string notice;
  std::size_t K = 0;
  double mu = 0.0;
  double lower_rate = 0.0;
  RateFit difference_fit;
  RateFit iterate_fit;
  RateFit average_fit;
  bool rate_in_bracket = false;
  bool iterate_slope_ok = false;
  bool average_slope_ok = false;
  // Difference error at the end of the geometric window over the iterate
  // error at the same k.
  double difference_to_iterate_ratio = 0.0;
  bool differences_faster = false;

  bool passed() const {
    return !skipped && rate_in_bracket && iterate_slope_ok && average_slope_ok && differences_faster;
  }
};

namespace detail {

inline std::vector<std::size_t> log_spaced(std::size_t lo, std::size_t hi, std::size_t count) {
  std::vector<std::size_t> ks;
  if (hi <= lo) return ks;
  const double a = std::log(static_cast<double>(std::max<std::size_t>(lo, 1)));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(std::llround(std::exp(a + (b - a) * i / (count - 1))));
    if (ks.empty() || k > ks.back()) ks.push_back(std::min(k, hi));
  }
  return ks;
}

}  // namespace detail

// Reads the rates off a trajectory of T from z^0 that extends well past the
// freeze iteration K: ||z^{k+1} - z^k - v||_2 geometric from K until the
// rounding floor, and the normalized iterate and average errors in the
// M-norm as power laws over [max(K, power_k_min), end].
inline Theorem5Report verify_theorem5(const StandardFormLp& p, const StepSizes& steps,
                                      const RaySolution& ray, const AffinePhase& phase,
                                      const Trajectory& traj, const FreezeInfo& freeze,
                                      const Theorem5Options& opt = {}) {
  Theorem5Report rep;
  rep.mu = phase.mu;
  rep.lower_rate = phase.lower_rate;
  rep.K = freeze.K;
  if (!freeze.frozen) {
    rep.skipped = true;
    rep.notice = "active set freeze not observed within budget";
    return rep;
  }
  const std::size_t end = traj.last();
  std::vector<std::pair<double, double>> diff;
  for (std::size_t k = freeze.K + 1; k < end; ++k) {
    Vector e = traj.difference(k + 1);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= ray.v[i];
    const double err = norm2(e);
    if (err <= opt.floor * (1.0 + norm_inf(traj.z(k)))) break;
    diff.emplace_back(static_cast<double>(k), err);
  }
  std::vector<std::pair<double, double>> it;
  std::vector<std::pair<double, double>> av;
  const std::size_t k_lo = std::max<std::size_t>(freeze.K + 1, static_cast<std::size_t>(opt.power_k_min));
  for (std::size_t k : detail::log_spaced(k_lo, end, 200)) {
    it.emplace_back(static_cast<double>(k),
                    m_norm(subtract(ray.v, traj.normalized_iterate(k)), p.a, steps));
    av.emplace_back(static_cast<double>(k),
                    m_norm(subtract(ray.v, traj.normalized_average(k)), p.a, steps));
  }
  try {
    rep.difference_fit = fit_rate(diff, RateModel::kGeometric, static_cast<double>(freeze.K));
    rep.iterate_fit = fit_rate(it, RateModel::kPower, opt.power_k_min);
    rep.average_fit = fit_rate(av, RateModel::kPower, opt.power_k_min);
  } catch (const ConfigError& e) {
    rep.skipped = true;
    rep.notice = std::string("rate fit unavailable: ") + e.what();
    return rep;
  }
  const double rate = rep.difference_fit.rate;
  rep.rate_in_bracket =
      rate >= phase.lower_rate - opt.bracket_slack && rate <= phase.mu + opt.bracket_slack;
  rep.iterate_slope_ok = std::abs(rep.iterate_fit.slope - opt.slope_target) <= opt.slope_slack;
  rep.average_slope_ok = std::abs(rep.average_fit.slope - opt.slope_target) <= opt.slope_slack;
  const std::size_t k_end = static_cast<std::size_t>(diff.back().first);
  const double it_err = m_norm(subtract(ray.v, traj.normalized_iterate(k_end)), p.a, steps);
  rep.difference_to_iterate_ratio = it_err > 0.0 ? diff.back().second / it_err : 0.0;
  // Geometric decay beats the 1/k of the normalized iterate by orders of
  // magnitude once the window closes.
  rep.differences_faster = rep.difference_to_iterate_ratio < 1e-3;
  return rep;
}

}  // namespace lpinfeas

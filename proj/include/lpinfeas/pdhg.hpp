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

// PDHG iterations for both LP forms.
//
// Standard form (y has the sign of the iteration, i.e. minus the usual LP
// dual):
//   x+ = proj_K(x - eta A^T y - eta c)
//   y+ = y + tau A (2 x+ - x) - tau b
//
// Inequality form:
//   x+ = proj_[l,u](x - eta (c - A^T y))
//   y+ = proj_{>=0}(y + tau (b - A (2 x+ - x)))

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"

namespace lpinfeas {

inline constexpr double kDivergenceGuard = 1e50;

struct PdhgState {
  std::size_t k = 0;
  Vector x;
  Vector y;
  Vector x_prev;
  Vector y_prev;
  // Running sums of z^1..z^k.
  Vector sum_x;
  Vector sum_y;
  // Starting point, needed to center the normalized sequences.
  Vector x0;
  Vector y0;

  std::size_t n() const { return x.size(); }
  std::size_t m() const { return y.size(); }

  Vector z() const { return concat(x, y); }
};

inline PdhgState make_state(std::size_t n, std::size_t m) {
  PdhgState s;
  s.x.assign(n, 0.0);
  s.y.assign(m, 0.0);
  s.x_prev = s.x;
  s.y_prev = s.y;
  s.sum_x.assign(n, 0.0);
  s.sum_y.assign(m, 0.0);
  s.x0 = s.x;
  s.y0 = s.y;
  return s;
}

inline PdhgState make_state(Vector x0, Vector y0) {
  PdhgState s = make_state(x0.size(), y0.size());
  s.x = std::move(x0);
  s.y = std::move(y0);
  s.x_prev = s.x;
  s.y_prev = s.y;
  s.x0 = s.x;
  s.y0 = s.y;
  return s;
}

struct PdhgWorkspace {
  Vector aty;
  Vector xbar;
  Vector axbar;
};

namespace detail {

inline void finish_step(PdhgState& s, bool guard) {
  ++s.k;
  for (std::size_t i = 0; i < s.x.size(); ++i) s.sum_x[i] += s.x[i];
  for (std::size_t i = 0; i < s.y.size(); ++i) s.sum_y[i] += s.y[i];
  if (!guard) return;
  double big = 0.0;
  for (double v : s.x) big = std::max(big, std::abs(v));
  for (double v : s.y) big = std::max(big, std::abs(v));
  if (!(big <= kDivergenceGuard)) {
    throw NumericalError("iterate left the divergence guard at k = " + std::to_string(s.k));
  }
}

inline void check_state(const PdhgState& s, std::size_t n, std::size_t m) {
  if (s.x.size() != n || s.y.size() != m || s.sum_x.size() != n || s.sum_y.size() != m) {
    throw DimensionError("PDHG state does not match the problem dimensions");
  }
}

}  // namespace detail

inline void step_standard(PdhgState& s, const StandardFormLp& p, const StepSizes& steps,
                          PdhgWorkspace& w, bool guard = true) {
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  detail::check_state(s, n, m);
  w.aty.resize(n);
  w.xbar.resize(n);
  w.axbar.resize(m);
  p.a.multiply_transpose(s.y, w.aty);
  s.x_prev.swap(s.x);
  s.y_prev = s.y;
  s.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = s.x_prev[j] - steps.eta * (w.aty[j] + p.c[j]);
    switch (p.cone_of(j)) {
      case VarCone::kNonNegative:
        s.x[j] = std::max(t, 0.0);
        break;
      case VarCone::kFree:
        s.x[j] = t;
        break;
      case VarCone::kZero:
        s.x[j] = 0.0;
        break;
    }
    w.xbar[j] = 2.0 * s.x[j] - s.x_prev[j];
  }
  p.a.multiply(w.xbar, w.axbar);
  for (std::size_t i = 0; i < m; ++i) s.y[i] += steps.tau * (w.axbar[i] - p.b[i]);
  detail::finish_step(s, guard);
}

inline void step_general(PdhgState& s, const GeneralFormLp& p, const StepSizes& steps,
                         PdhgWorkspace& w, bool guard = true) {
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  detail::check_state(s, n, m);
  w.aty.resize(n);
  w.xbar.resize(n);
  w.axbar.resize(m);
  p.a.multiply_transpose(s.y, w.aty);
  s.x_prev.swap(s.x);
  s.y_prev = s.y;
  s.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = s.x_prev[j] - steps.eta * (p.c[j] - w.aty[j]);
    s.x[j] = std::clamp(t, p.l[j], p.u[j]);
    w.xbar[j] = 2.0 * s.x[j] - s.x_prev[j];
  }
  p.a.multiply(w.xbar, w.axbar);
  for (std::size_t i = 0; i < m; ++i) {
    s.y[i] = std::max(s.y[i] + steps.tau * (p.b[i] - w.axbar[i]), 0.0);
  }
  detail::finish_step(s, guard);
}

inline PdhgState step_standard(PdhgState s, const StandardFormLp& p, const StepSizes& steps) {
  PdhgWorkspace w;
  step_standard(s, p, steps, w);
  return s;
}

inline PdhgState step_general(PdhgState s, const GeneralFormLp& p, const StepSizes& steps) {
  PdhgWorkspace w;
  step_general(s, p, steps, w);
  return s;
}

inline void step(PdhgState& s, const StandardFormLp& p, const StepSizes& st, PdhgWorkspace& w,
                 bool guard = true) {
  step_standard(s, p, st, w, guard);
}

inline void step(PdhgState& s, const GeneralFormLp& p, const StepSizes& st, PdhgWorkspace& w,
                 bool guard = true) {
  step_general(s, p, st, w, guard);
}

// The operator T as a map on stacked z = (x, y), without bookkeeping.
template <class Lp>
Vector apply_operator(const Lp& p, const StepSizes& steps, std::span<const double> z) {
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  if (z.size() != n + m) throw DimensionError("apply_operator: dimension mismatch");
  PdhgState s = make_state(Vector(z.begin(), z.begin() + n), Vector(z.begin() + n, z.end()));
  PdhgWorkspace w;
  step(s, p, steps, w, /*guard=*/false);
  return s.z();
}

inline Coupling coupling_for(const StandardFormLp&) { return Coupling::kStandard; }
inline Coupling coupling_for(const GeneralFormLp&) { return Coupling::kInequality; }

// Sign-constrained projection of c - A^T y that makes the inequality-form
// dual objective finite: boxed free, lower-only >= 0, upper-only <= 0,
// free variables 0.
inline Vector project_reduced_cost(std::span<const double> g, const GeneralFormLp& p) {
  Vector r(g.begin(), g.end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    switch (variable_kind(p.l[i], p.u[i])) {
      case VariableKind::kBoxed:
        break;
      case VariableKind::kLowerOnly:
        r[i] = std::max(r[i], 0.0);
        break;
      case VariableKind::kUpperOnly:
        r[i] = std::min(r[i], 0.0);
        break;
      case VariableKind::kFree:
        r[i] = 0.0;
        break;
    }
  }
  return r;
}

inline Vector recover_r(std::span<const double> y, const GeneralFormLp& p) {
  const Vector aty = spmv_t(p.a, y);
  Vector g(p.c.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = p.c[i] - aty[i];
  return project_reduced_cost(g, p);
}

// l^T r+ - u^T r-, with r- the magnitude of the negative part and terms on
// infinite bounds taken as 0 (recover_r keeps those entries at 0).
inline double bound_term(std::span<const double> r, const GeneralFormLp& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] > 0.0 && std::isfinite(p.l[i])) acc += p.l[i] * r[i];
    if (r[i] < 0.0 && std::isfinite(p.u[i])) acc += p.u[i] * r[i];
  }
  return acc;
}

struct KktResidual {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;

  double max() const { return std::max({primal, dual, gap}); }
};

inline KktResidual kkt_residual(const GeneralFormLp& p, std::span<const double> x,
                                std::span<const double> y) {
  KktResidual r;
  const Vector ax = spmv(p.a, x);
  double pviol = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) pviol = std::max(pviol, p.b[i] - ax[i]);
  for (std::size_t i = 0; i < x.size(); ++i) {
    pviol = std::max({pviol, p.l[i] - x[i], x[i] - p.u[i]});
  }
  r.primal = pviol / (1.0 + norm_inf_finite(p.b));
  const Vector rr = recover_r(y, p);
  const Vector aty = spmv_t(p.a, y);
  double dviol = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dviol = std::max(dviol, std::abs(p.c[i] - aty[i] - rr[i]));
  }
  for (double v : y) dviol = std::max(dviol, -v);
  r.dual = dviol / (1.0 + norm_inf(p.c));
  r.primal_objective = dot(p.c, x);
  r.dual_objective = dot(p.b, y) + bound_term(rr, p);
  r.gap = std::abs(r.primal_objective - r.dual_objective) /
          (1.0 + std::abs(r.primal_objective) + std::abs(r.dual_objective));
  r.primal_objective += p.objective_offset;
  r.dual_objective += p.objective_offset;
  return r;
}

inline KktResidual kkt_residual(const StandardFormLp& p, std::span<const double> x,
                                std::span<const double> y) {
  KktResidual r;
  const Vector ax = spmv(p.a, x);
  double pviol = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) pviol = std::max(pviol, std::abs(ax[i] - p.b[i]));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (p.cone_of(j) == VarCone::kNonNegative) pviol = std::max(pviol, -x[j]);
    if (p.cone_of(j) == VarCone::kZero) pviol = std::max(pviol, std::abs(x[j]));
  }
  r.primal = pviol / (1.0 + norm_inf(p.b));
  // Reduced cost c - A^T lambda with lambda = -y.
  const Vector aty = spmv_t(p.a, y);
  double dviol = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double rc = p.c[j] + aty[j];
    if (p.cone_of(j) == VarCone::kNonNegative) dviol = std::max(dviol, -rc);
    if (p.cone_of(j) == VarCone::kFree) dviol = std::max(dviol, std::abs(rc));
  }
  r.dual = dviol / (1.0 + norm_inf(p.c));
  r.primal_objective = dot(p.c, x);
  r.dual_objective = -dot(p.b, y);
  r.gap = std::abs(r.primal_objective - r.dual_objective) /
          (1.0 + std::abs(r.primal_objective) + std::abs(r.dual_objective));
  r.primal_objective += p.objective_offset;
  r.dual_objective += p.objective_offset;
  return r;
}

// Indices of x at a bound: x_i <= tol (standard form, nonnegative entries
// only) or within tol of l_i or u_i (inequality form), with
// tol = tol_a * (1 + ||x||_inf). Entries are encoded as i for a lower bound
// and ~i for an upper bound so that switching sides counts as a change.
inline std::vector<std::size_t> active_set(std::span<const double> x, double tol_a = 1e-9) {
  const double tol = tol_a * (1.0 + norm_inf(x));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= tol) out.push_back(i);
  }
  return out;
}

inline std::vector<std::size_t> active_set(const StandardFormLp& p, std::span<const double> x,
                                           double tol_a = 1e-9) {
  const double tol = tol_a * (1.0 + norm_inf(x));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (p.cone_of(i) == VarCone::kNonNegative && x[i] <= tol) out.push_back(i);
  }
  return out;
}

inline std::vector<std::size_t> active_set(const GeneralFormLp& p, std::span<const double> x,
                                           double tol_a = 1e-9) {
  const double tol = tol_a * (1.0 + norm_inf(x));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] - p.l[i] <= tol) {
      out.push_back(i);
    } else if (p.u[i] - x[i] <= tol) {
      out.push_back(~i);
    }
  }
  return out;
}


// One step z -> z+ as a discrete inclusion: w = M (z - z+) - F(z+) must lie
// in the normal cone of the feasible box at z+, where
//   standard form:   F = (c + A^T y+, b - A x+),  box R^n_+ x R^m
//   inequality form: F = (c - A^T y+, A x+ - b), box [l, u] x R^m_+.
// Returns the largest distance of a component of w to its cone, relative to
// 1 + the largest magnitude among the terms that make up w.
namespace detail {

inline double cone_distance(double w, double z, double lo, double hi) {
  if (lo == hi) return 0.0;
  if (z <= lo) return std::max(w, 0.0);
  if (z >= hi) return std::max(-w, 0.0);
  return std::abs(w);
}

}  // namespace detail

inline double inclusion_residual(const StandardFormLp& p, const StepSizes& steps,
                                 std::span<const double> z, std::span<const double> z_next) {
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  if (z.size() != n + m || z_next.size() != n + m) {
    throw DimensionError("inclusion_residual: dimension mismatch");
  }
  const auto x = z.subspan(0, n);
  const auto y = z.subspan(n);
  const auto xn = z_next.subspan(0, n);
  const auto yn = z_next.subspan(n);
  const Vector dy = subtract(y, yn);
  const Vector at_dy = spmv_t(p.a, dy);
  const Vector at_yn = spmv_t(p.a, yn);
  const Vector dx = subtract(x, xn);
  const Vector a_dx = spmv(p.a, dx);
  const Vector a_xn = spmv(p.a, xn);
  double worst = 0.0;
  double scale = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = dx[j] / steps.eta - at_dy[j] - (p.c[j] + at_yn[j]);
    scale = std::max({scale, std::abs(dx[j] / steps.eta), std::abs(at_dy[j]), std::abs(at_yn[j]),
                      std::abs(p.c[j])});
    double lo = 0.0;
    double hi = kInf;
    if (p.cone_of(j) == VarCone::kFree) lo = -kInf;
    if (p.cone_of(j) == VarCone::kZero) hi = 0.0;
    worst = std::max(worst, detail::cone_distance(w, xn[j], lo, hi));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double w = -a_dx[i] + dy[i] / steps.tau - (p.b[i] - a_xn[i]);
    scale = std::max({scale, std::abs(a_dx[i]), std::abs(dy[i] / steps.tau), std::abs(p.b[i]),
                      std::abs(a_xn[i])});
    worst = std::max(worst, std::abs(w));
  }
  return worst / scale;
}

inline double inclusion_residual(const GeneralFormLp& p, const StepSizes& steps,
                                 std::span<const double> z, std::span<const double> z_next) {
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  if (z.size() != n + m || z_next.size() != n + m) {
    throw DimensionError("inclusion_residual: dimension mismatch");
  }
  const auto x = z.subspan(0, n);
  const auto y = z.subspan(n);
  const auto xn = z_next.subspan(0, n);
  const auto yn = z_next.subspan(n);
  const Vector dx = subtract(x, xn);
  const Vector dy = subtract(y, yn);
  const Vector at_dy = spmv_t(p.a, dy);
  const Vector at_yn = spmv_t(p.a, yn);
  const Vector a_dx = spmv(p.a, dx);
  const Vector a_xn = spmv(p.a, xn);
  double worst = 0.0;
  double scale = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = dx[j] / steps.eta + at_dy[j] - (p.c[j] - at_yn[j]);
    scale = std::max({scale, std::abs(dx[j] / steps.eta), std::abs(at_dy[j]), std::abs(at_yn[j]),
                      std::abs(p.c[j])});
    worst = std::max(worst, detail::cone_distance(w, xn[j], p.l[j], p.u[j]));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double w = a_dx[i] + dy[i] / steps.tau - (a_xn[i] - p.b[i]);
    scale = std::max({scale, std::abs(a_dx[i]), std::abs(dy[i] / steps.tau), std::abs(p.b[i]),
                      std::abs(a_xn[i])});
    worst = std::max(worst, detail::cone_distance(w, yn[i], 0.0, kInf));
  }
  return worst / scale;
}

}  // namespace lpinfeas

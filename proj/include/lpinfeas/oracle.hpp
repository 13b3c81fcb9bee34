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

// Exact feasibility decisions for tiny LPs by Fourier-Motzkin elimination
// over GMP rationals. Every derived row carries the nonnegative combination
// of original rows that produced it, so an infeasible system yields its
// Farkas multipliers directly and a feasible one yields a witness by
// back-substitution.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"

namespace lpinfeas {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// sum_j rows[i][j] x_j >= rhs[i], all x free.
struct ExactLp {
  std::size_t num_vars = 0;
  std::vector<RationalVector> rows;
  RationalVector rhs;

  void add_row(RationalVector coefs, Rational b) {
    if (coefs.size() != num_vars) throw DimensionError("ExactLp: row length mismatch");
    rows.push_back(std::move(coefs));
    rhs.push_back(std::move(b));
  }
};

struct OracleLimits {
  std::size_t max_vars = 12;
  std::size_t max_rows = 60;
  std::size_t max_intermediate_rows = 200000;
};

struct FeasibilityResult {
  bool feasible = false;
  RationalVector witness;      // when feasible
  RationalVector multipliers;  // when infeasible: lambda >= 0, lambda^T A = 0, lambda^T b > 0
};

namespace detail {

struct FmRow {
  RationalVector a;
  Rational b;
  RationalVector lambda;
};

inline bool all_zero(const RationalVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& v) { return sgn(v) == 0; });
}

// Scales so the first nonzero coefficient has magnitude 1.
inline void normalize(FmRow& r) {
  for (const Rational& v : r.a) {
    if (sgn(v) != 0) {
      const Rational s = abs(v);
      for (Rational& x : r.a) x /= s;
      r.b /= s;
      for (Rational& x : r.lambda) x /= s;
      return;
    }
  }
}

// Keeps the tightest row per coefficient vector.
inline std::vector<FmRow> dedupe(std::vector<FmRow> rows) {
  std::map<RationalVector, std::size_t> seen;
  std::vector<FmRow> out;
  for (FmRow& r : rows) {
    auto it = seen.find(r.a);
    if (it == seen.end()) {
      seen.emplace(r.a, out.size());
      out.push_back(std::move(r));
    } else if (r.b > out[it->second].b) {
      out[it->second] = std::move(r);
    }
  }
  return out;
}

struct FmRun {
  std::vector<std::size_t> order;
  std::vector<std::vector<FmRow>> stages;  // stages[t] is the system before eliminating order[t]
  std::vector<FmRow> final_rows;
  std::optional<FmRow> contradiction;
};

// Eliminates every variable not in `keep`, picking at each step the
// variable with the fewest positive-negative pairings.
inline FmRun eliminate(const ExactLp& sys, const std::vector<bool>& keep, const OracleLimits& lim) {
  const std::size_t n = sys.num_vars;
  const std::size_t m = sys.rows.size();
  FmRun run;
  std::vector<FmRow> rows;
  for (std::size_t i = 0; i < m; ++i) {
    FmRow r{sys.rows[i], sys.rhs[i], RationalVector(m, 0)};
    r.lambda[i] = 1;
    normalize(r);
    rows.push_back(std::move(r));
  }
  auto find_contradiction = [&](const std::vector<FmRow>& rs) -> bool {
    for (const FmRow& r : rs) {
      if (all_zero(r.a) && sgn(r.b) > 0) {
        run.contradiction = r;
        return true;
      }
    }
    return false;
  };
  rows = dedupe(std::move(rows));
  if (find_contradiction(rows)) return run;

  std::vector<bool> done(n, false);
  for (std::size_t j = 0; j < n; ++j) done[j] = keep[j];
  while (true) {
    std::size_t best = n;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      std::size_t pos = 0;
      std::size_t neg = 0;
      for (const FmRow& r : rows) {
        if (sgn(r.a[j]) > 0) ++pos;
        if (sgn(r.a[j]) < 0) ++neg;
      }
      const std::size_t cost = pos * neg;
      if (best == n || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best == n) break;
    const std::size_t j = best;
    done[j] = true;
    run.order.push_back(j);
    run.stages.push_back(rows);
    std::vector<FmRow> next;
    std::vector<const FmRow*> pos;
    std::vector<const FmRow*> neg;
    for (const FmRow& r : rows) {
      const int s = sgn(r.a[j]);
      if (s > 0) {
        pos.push_back(&r);
      } else if (s < 0) {
        neg.push_back(&r);
      } else {
        next.push_back(r);
      }
    }
    if (next.size() + pos.size() * neg.size() > lim.max_intermediate_rows) {
      throw ConfigError("Fourier-Motzkin: intermediate system too large");
    }
    for (const FmRow* p : pos) {
      for (const FmRow* q : neg) {
        const Rational wp = -q->a[j];
        const Rational wq = p->a[j];
        FmRow r{RationalVector(n), wp * p->b + wq * q->b, RationalVector(m)};
        for (std::size_t k = 0; k < n; ++k) r.a[k] = wp * p->a[k] + wq * q->a[k];
        r.a[j] = 0;
        for (std::size_t k = 0; k < m; ++k) r.lambda[k] = wp * p->lambda[k] + wq * q->lambda[k];
        normalize(r);
        // Rows 0 >= b with b <= 0 carry no information.
        if (all_zero(r.a) && sgn(r.b) <= 0) continue;
        next.push_back(std::move(r));
      }
    }
    rows = dedupe(std::move(next));
    if (find_contradiction(rows)) return run;
  }
  run.final_rows = std::move(rows);
  return run;
}

inline void check_limits(const ExactLp& sys, const OracleLimits& lim) {
  if (sys.num_vars > lim.max_vars || sys.rows.size() > lim.max_rows) {
    throw ConfigError("oracle size guard: at most " + std::to_string(lim.max_vars) +
                      " variables and " + std::to_string(lim.max_rows) + " constraints");
  }
}

// Chooses x_j from the rows of one stage once the later variables are set:
// the largest lower bound, else the smallest upper bound, else 0.
inline void back_substitute(const FmRun& run, RationalVector& x) {
  for (std::size_t t = run.order.size(); t-- > 0;) {
    const std::size_t j = run.order[t];
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    for (const FmRow& r : run.stages[t]) {
      const int s = sgn(r.a[j]);
      if (s == 0) continue;
      Rational rest = r.b;
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (k != j) rest -= r.a[k] * x[k];
      }
      const Rational bound = rest / r.a[j];
      if (s > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    x[j] = lo ? *lo : (hi ? *hi : Rational(0));
  }
}

}  // namespace detail

inline FeasibilityResult decide_feasibility(const ExactLp& sys, const OracleLimits& lim = {}) {
  detail::check_limits(sys, lim);
  const detail::FmRun run = detail::eliminate(sys, std::vector<bool>(sys.num_vars, false), lim);
  FeasibilityResult res;
  if (run.contradiction) {
    res.feasible = false;
    res.multipliers = run.contradiction->lambda;
    return res;
  }
  res.feasible = true;
  res.witness.assign(sys.num_vars, 0);
  detail::back_substitute(run, res.witness);
  return res;
}

inline bool satisfies(const ExactLp& sys, std::span<const Rational> x) {
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < sys.num_vars; ++j) lhs += sys.rows[i][j] * x[j];
    if (lhs < sys.rhs[i]) return false;
  }
  return true;
}

// lambda >= 0, lambda^T A = 0, lambda^T b > 0.
inline bool is_farkas_combination(const ExactLp& sys, std::span<const Rational> lambda) {
  if (lambda.size() != sys.rows.size()) return false;
  RationalVector combo(sys.num_vars, 0);
  Rational rhs = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (sgn(lambda[i]) < 0) return false;
    for (std::size_t j = 0; j < sys.num_vars; ++j) combo[j] += lambda[i] * sys.rows[i][j];
    rhs += lambda[i] * sys.rhs[i];
  }
  return detail::all_zero(combo) && sgn(rhs) > 0;
}

// --- LP systems -------------------------------------------------------------

enum class FeasibilityCell { kBothFeasible, kBothInfeasible, kPrimalInfDualFeas, kPrimalFeasDualInf };

inline std::string_view cell_name(FeasibilityCell c) {
  switch (c) {
    case FeasibilityCell::kBothFeasible:
      return "both_feasible";
    case FeasibilityCell::kBothInfeasible:
      return "both_infeasible";
    case FeasibilityCell::kPrimalInfDualFeas:
      return "primal_infeasible_dual_feasible";
    case FeasibilityCell::kPrimalFeasDualInf:
      return "primal_feasible_dual_infeasible";
  }
  return "?";
}

inline Rational to_rational(double v) {
  if (!std::isfinite(v)) throw ModelError("oracle: non-finite coefficient");
  return Rational(v);
}

inline RationalVector to_rational(std::span<const double> v) {
  RationalVector out;
  out.reserve(v.size());
  for (double x : v) out.push_back(to_rational(x));
  return out;
}

// Rows: A x >= b, then x_i >= l_i for finite l, then -x_i >= -u_i for finite u.
inline ExactLp primal_system(const GeneralFormLp& p) {
  const std::size_t n = p.num_vars();
  ExactLp sys;
  sys.num_vars = n;
  const auto dense = p.a.to_dense();
  for (std::size_t i = 0; i < p.num_rows(); ++i) sys.add_row(to_rational(dense[i]), to_rational(p.b[i]));
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(p.l[j])) {
      RationalVector e(n, 0);
      e[j] = 1;
      sys.add_row(std::move(e), to_rational(p.l[j]));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(p.u[j])) {
      RationalVector e(n, 0);
      e[j] = -1;
      sys.add_row(std::move(e), -to_rational(p.u[j]));
    }
  }
  return sys;
}

// Variables y (m). Rows: y >= 0; then per variable j, in index order,
// lower-only  c_j - a_j^T y >= 0, upper-only  a_j^T y - c_j >= 0, free both.
inline ExactLp dual_system(const GeneralFormLp& p) {
  const std::size_t m = p.num_rows();
  ExactLp sys;
  sys.num_vars = m;
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector e(m, 0);
    e[i] = 1;
    sys.add_row(std::move(e), 0);
  }
  const SparseMatrix at = p.a.transpose();
  const auto dense = at.to_dense();
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    const VariableKind kind = variable_kind(p.l[j], p.u[j]);
    const RationalVector col = to_rational(dense[j]);
    if (kind == VariableKind::kLowerOnly || kind == VariableKind::kFree) {
      RationalVector neg(m);
      for (std::size_t i = 0; i < m; ++i) neg[i] = -col[i];
      sys.add_row(std::move(neg), -to_rational(p.c[j]));
    }
    if (kind == VariableKind::kUpperOnly || kind == VariableKind::kFree) {
      sys.add_row(col, to_rational(p.c[j]));
    }
  }
  return sys;
}

// Variables x (n). Rows: a_i^T x >= b_i and -a_i^T x >= -b_i per row, then
// x_j >= 0 for nonnegative variables and the pair x_j >= 0, -x_j >= 0 for
// fixed ones.
inline ExactLp primal_system(const StandardFormLp& p) {
  const std::size_t n = p.num_vars();
  ExactLp sys;
  sys.num_vars = n;
  const auto dense = p.a.to_dense();
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    RationalVector row = to_rational(dense[i]);
    RationalVector neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -row[j];
    sys.add_row(std::move(row), to_rational(p.b[i]));
    sys.add_row(std::move(neg), -to_rational(p.b[i]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (p.cone_of(j) == VarCone::kFree) continue;
    RationalVector e(n, 0);
    e[j] = 1;
    sys.add_row(e, 0);
    if (p.cone_of(j) == VarCone::kZero) {
      e[j] = -1;
      sys.add_row(std::move(e), 0);
    }
  }
  return sys;
}

// Variables lambda (m), the usual LP dual sign. Rows per variable j:
// nonnegative  c_j - a_j^T lambda >= 0, free adds  a_j^T lambda - c_j >= 0.
inline ExactLp dual_system(const StandardFormLp& p) {
  const std::size_t m = p.num_rows();
  ExactLp sys;
  sys.num_vars = m;
  const auto dense = p.a.transpose().to_dense();
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    if (p.cone_of(j) == VarCone::kZero) continue;
    const RationalVector col = to_rational(dense[j]);
    RationalVector neg(m);
    for (std::size_t i = 0; i < m; ++i) neg[i] = -col[i];
    sys.add_row(std::move(neg), -to_rational(p.c[j]));
    if (p.cone_of(j) == VarCone::kFree) sys.add_row(col, to_rational(p.c[j]));
  }
  return sys;
}

struct ClassifyResult {
  FeasibilityCell cell = FeasibilityCell::kBothFeasible;
  std::optional<RationalVector> primal_point;        // feasible x
  std::optional<RationalVector> dual_point;          // feasible dual variables
  std::optional<RationalVector> primal_certificate;  // proves primal infeasibility
  std::optional<RationalVector> dual_certificate;    // proves dual infeasibility
};

namespace detail {

inline FeasibilityCell cell_of(bool primal_feasible, bool dual_feasible) {
  if (primal_feasible && dual_feasible) return FeasibilityCell::kBothFeasible;
  if (!primal_feasible && !dual_feasible) return FeasibilityCell::kBothInfeasible;
  return primal_feasible ? FeasibilityCell::kPrimalFeasDualInf : FeasibilityCell::kPrimalInfDualFeas;
}

}  // namespace detail

// Certificates are returned in the sign conventions of the form's own
// checks: inequality form y >= 0 with b^T y + bound term > 0; standard form
// y with b^T y < 0 and A^T y >= 0.
inline ClassifyResult classify_lp(const GeneralFormLp& p, const OracleLimits& lim = {}) {
  p.check_dimensions();
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  ClassifyResult out;
  const FeasibilityResult pr = decide_feasibility(primal_system(p), lim);
  const FeasibilityResult dr = decide_feasibility(dual_system(p), lim);
  if (pr.feasible) {
    out.primal_point = pr.witness;
  } else {
    out.primal_certificate = RationalVector(pr.multipliers.begin(), pr.multipliers.begin() + m);
  }
  if (dr.feasible) {
    out.dual_point = dr.witness;
  } else {
    RationalVector x(n, 0);
    std::size_t row = m;
    for (std::size_t j = 0; j < n; ++j) {
      const VariableKind kind = variable_kind(p.l[j], p.u[j]);
      if (kind == VariableKind::kLowerOnly || kind == VariableKind::kFree) x[j] += dr.multipliers[row++];
      if (kind == VariableKind::kUpperOnly || kind == VariableKind::kFree) x[j] -= dr.multipliers[row++];
    }
    out.dual_certificate = std::move(x);
  }
  out.cell = detail::cell_of(pr.feasible, dr.feasible);
  return out;
}

inline ClassifyResult classify_lp(const StandardFormLp& p, const OracleLimits& lim = {}) {
  p.check_dimensions();
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  ClassifyResult out;
  const FeasibilityResult pr = decide_feasibility(primal_system(p), lim);
  const FeasibilityResult dr = decide_feasibility(dual_system(p), lim);
  if (pr.feasible) {
    out.primal_point = pr.witness;
  } else {
    RationalVector y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = pr.multipliers[2 * i + 1] - pr.multipliers[2 * i];
    out.primal_certificate = std::move(y);
  }
  if (dr.feasible) {
    out.dual_point = dr.witness;
  } else {
    RationalVector x(n, 0);
    std::size_t row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (p.cone_of(j) == VarCone::kZero) continue;
      x[j] += dr.multipliers[row++];
      if (p.cone_of(j) == VarCone::kFree) x[j] -= dr.multipliers[row++];
    }
    out.dual_certificate = std::move(x);
  }
  out.cell = detail::cell_of(pr.feasible, dr.feasible);
  return out;
}

// Minimum of c^T x by eliminating x from {primal rows, t - c^T x >= 0};
// nullopt when infeasible or unbounded below.
template <class Lp>
std::optional<Rational> exact_optimal_value(const Lp& p, const OracleLimits& lim = {}) {
  ExactLp sys = primal_system(p);
  const std::size_t n = sys.num_vars;
  sys.num_vars = n + 1;
  for (RationalVector& r : sys.rows) r.push_back(0);
  RationalVector obj(n + 1);
  for (std::size_t j = 0; j < n; ++j) obj[j] = -to_rational(p.c[j]);
  obj[n] = 1;
  sys.add_row(std::move(obj), 0);
  OracleLimits relaxed = lim;
  relaxed.max_vars = lim.max_vars + 1;
  relaxed.max_rows = lim.max_rows + 1;
  detail::check_limits(sys, relaxed);
  std::vector<bool> keep(n + 1, false);
  keep[n] = true;
  const detail::FmRun run = detail::eliminate(sys, keep, relaxed);
  if (run.contradiction) return std::nullopt;
  std::optional<Rational> best;
  for (const detail::FmRow& r : run.final_rows) {
    if (sgn(r.a[n]) > 0) {
      const Rational bound = r.b / r.a[n];
      if (!best || bound > *best) best = bound;
    }
  }
  if (best) *best += to_rational(p.objective_offset);
  return best;
}

// --- exactification of floating-point certificates --------------------------

inline constexpr double kExactifyDust = 1e-12;

// Best rational approximation with denominator <= max_den by continued
// fractions, accepted once within rel_tol; otherwise the exact binary value.
inline Rational snap_rational(double v, long max_den = 1000000, double rel_tol = 1e-9) {
  const Rational exact(v);
  if (sgn(exact) == 0) return exact;
  Rational x = exact;
  // Convergents h/k of the continued fraction, seeded with 1/0 and 0/1.
  mpz_class h = 1, h_prev = 0, k = 0, k_prev = 1;
  Rational best = exact;
  for (int it = 0; it < 64; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    const mpz_class h_next = a * h + h_prev;
    const mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    const Rational approx(h, k);
    const Rational err = abs(approx - exact);
    if (err <= Rational(rel_tol) * abs(exact)) {
      best = approx;
      best.canonicalize();
      break;
    }
    const Rational frac = x - Rational(a);
    if (sgn(frac) == 0) break;
    x = 1 / frac;
  }
  return best;
}

// Normalizes by ||v||_inf, zeroes entries below kExactifyDust and snaps the
// rest to nearby small-denominator rationals.
inline RationalVector exactify(std::span<const double> v) {
  const double scale = norm_inf(v);
  RationalVector out(v.size(), 0);
  if (scale == 0.0 || !std::isfinite(scale)) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = v[i] / scale;
    if (std::abs(t) >= kExactifyDust) out[i] = snap_rational(t);
  }
  return out;
}

enum class CertificateKind { kPrimalInfeasibility, kDualInfeasibility };

namespace detail {

inline RationalVector exact_spmv(const SparseMatrix& a, std::span<const Rational> x) {
  RationalVector out(a.rows(), 0);
  for (const Triplet& t : a.triplets()) out[t.row] += to_rational(t.value) * x[t.col];
  return out;
}

inline RationalVector exact_spmv_t(const SparseMatrix& a, std::span<const Rational> y) {
  RationalVector out(a.cols(), 0);
  for (const Triplet& t : a.triplets()) out[t.col] += to_rational(t.value) * y[t.row];
  return out;
}

inline Rational exact_dot(std::span<const double> a, std::span<const Rational> b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += to_rational(a[i]) * b[i];
  return acc;
}

}  // namespace detail

// Exact Farkas sign checks, inequality form.
//   primal: y >= 0, r = -A^T y in the finite-dual-objective sign set,
//           b^T y + l^T r+ - u^T r- > 0
//   dual:   c^T x < 0, A x >= 0, x in C_v
inline bool verify_certificate_exact(std::span<const Rational> cert, const GeneralFormLp& p,
                                     CertificateKind kind) {
  if (kind == CertificateKind::kPrimalInfeasibility) {
    if (cert.size() != p.num_rows()) return false;
    for (const Rational& v : cert) {
      if (sgn(v) < 0) return false;
    }
    const RationalVector aty = detail::exact_spmv_t(p.a, cert);
    Rational obj = detail::exact_dot(p.b, cert);
    for (std::size_t j = 0; j < aty.size(); ++j) {
      const Rational r = -aty[j];
      const int s = sgn(r);
      if (s > 0) {
        if (!std::isfinite(p.l[j])) return false;
        obj += to_rational(p.l[j]) * r;
      } else if (s < 0) {
        if (!std::isfinite(p.u[j])) return false;
        obj += to_rational(p.u[j]) * r;
      }
    }
    return sgn(obj) > 0;
  }
  if (cert.size() != p.num_vars()) return false;
  if (sgn(detail::exact_dot(p.c, cert)) >= 0) return false;
  for (const Rational& v : detail::exact_spmv(p.a, cert)) {
    if (sgn(v) < 0) return false;
  }
  for (std::size_t j = 0; j < cert.size(); ++j) {
    const int s = sgn(cert[j]);
    switch (variable_kind(p.l[j], p.u[j])) {
      case VariableKind::kBoxed:
        if (s != 0) return false;
        break;
      case VariableKind::kLowerOnly:
        if (s < 0) return false;
        break;
      case VariableKind::kUpperOnly:
        if (s > 0) return false;
        break;
      case VariableKind::kFree:
        break;
    }
  }
  return true;
}

// Exact Farkas sign checks, standard form (y in the iteration's sign).
//   primal: b^T y < 0, A^T y in K*
//   dual:   c^T x < 0, A x = 0, x in K
inline bool verify_certificate_exact(std::span<const Rational> cert, const StandardFormLp& p,
                                     CertificateKind kind) {
  if (kind == CertificateKind::kPrimalInfeasibility) {
    if (cert.size() != p.num_rows()) return false;
    if (sgn(detail::exact_dot(p.b, cert)) >= 0) return false;
    const RationalVector aty = detail::exact_spmv_t(p.a, cert);
    for (std::size_t j = 0; j < aty.size(); ++j) {
      if (p.cone_of(j) == VarCone::kNonNegative && sgn(aty[j]) < 0) return false;
      if (p.cone_of(j) == VarCone::kFree && sgn(aty[j]) != 0) return false;
    }
    return true;
  }
  if (cert.size() != p.num_vars()) return false;
  if (sgn(detail::exact_dot(p.c, cert)) >= 0) return false;
  for (const Rational& v : detail::exact_spmv(p.a, cert)) {
    if (sgn(v) != 0) return false;
  }
  for (std::size_t j = 0; j < cert.size(); ++j) {
    if (p.cone_of(j) == VarCone::kNonNegative && sgn(cert[j]) < 0) return false;
    if (p.cone_of(j) == VarCone::kZero && sgn(cert[j]) != 0) return false;
  }
  return true;
}

template <class Lp>
bool verify_certificate_exact(std::span<const double> cert, const Lp& p, CertificateKind kind) {
  const RationalVector exact = exactify(cert);
  return verify_certificate_exact(std::span<const Rational>(exact), p, kind);
}

inline std::vector<double> to_double(std::span<const Rational> v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rational& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace lpinfeas

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

// Candidate infeasibility certificates built from PDHG iterates, and the
// approximate Farkas tests applied to them.
//
// Every report stores objective_term with the sign convention "positive
// means the strict inequality holds", so for dual certificates it is -c^T x.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/pdhg.hpp"

namespace lpinfeas {

enum class SequenceKind { kDifference, kNormalizedIterate, kNormalizedAverage };

inline constexpr std::array<SequenceKind, 3> kAllSequences = {
    SequenceKind::kDifference, SequenceKind::kNormalizedIterate,
    SequenceKind::kNormalizedAverage};

inline std::string_view sequence_name(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::kDifference:
      return "difference";
    case SequenceKind::kNormalizedIterate:
      return "iterate";
    case SequenceKind::kNormalizedAverage:
      return "average";
  }
  return "?";
}

struct CertificateCandidate {
  SequenceKind kind = SequenceKind::kDifference;
  Vector x_part;
  Vector y_part;
  Vector r_part;  // inequality form only
  std::size_t k = 0;

  Vector z() const { return concat(x_part, y_part); }
};

// Difference:          z^k - z^{k-1}
// Normalized iterate:  (z^k - z^0) / k
// Normalized average:  2 / (k (k+1)) * sum_{j=1..k} (z^j - z^0)
inline CertificateCandidate extract(const PdhgState& s, SequenceKind kind) {
  if (s.k == 0) throw ConfigError("extract: no iterations taken");
  CertificateCandidate c;
  c.kind = kind;
  c.k = s.k;
  const double k = static_cast<double>(s.k);
  auto build = [&](const Vector& cur, const Vector& prev, const Vector& sum, const Vector& start) {
    Vector out(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      switch (kind) {
        case SequenceKind::kDifference:
          out[i] = cur[i] - prev[i];
          break;
        case SequenceKind::kNormalizedIterate:
          out[i] = (cur[i] - start[i]) / k;
          break;
        case SequenceKind::kNormalizedAverage:
          out[i] = 2.0 * (sum[i] - k * start[i]) / (k * (k + 1.0));
          break;
      }
    }
    return out;
  };
  c.x_part = build(s.x, s.x_prev, s.sum_x, s.x0);
  c.y_part = build(s.y, s.y_prev, s.sum_y, s.y0);
  return c;
}

inline CertificateCandidate extract(const PdhgState& s, SequenceKind kind, const GeneralFormLp& p) {
  CertificateCandidate c = extract(s, kind);
  c.r_part = project_reduced_cost(scaled(-1.0, spmv_t(p.a, c.y_part)), p);
  return c;
}

struct CertCheckReport {
  bool is_primal_cert = false;
  bool is_dual_cert = false;
  double scaled_error = std::numeric_limits<double>::infinity();
  double objective_term = 0.0;
  double tolerance_used = 0.0;
};

// Entries below this fraction of ||y||_inf are treated as rounding dust.
inline constexpr double kClipRelative = 1e-12;

inline Vector clip_dust(std::span<const double> y) {
  const double tol = kClipRelative * norm_inf(y);
  Vector out(y.begin(), y.end());
  for (double& v : out) {
    if (v < 0.0 && -v <= tol) v = 0.0;
  }
  return out;
}

// Inequality form, primal side: y >= 0 with r = proj(-A^T y) onto the sign
// pattern that keeps the dual objective finite. Passes iff
// b^T y + l^T r+ - u^T r- > 0 and ||r + A^T y||_inf / that term <= eps.
inline CertCheckReport check_primal_infeasibility(std::span<const double> y_in,
                                                  const GeneralFormLp& p, double eps) {
  CertCheckReport rep;
  rep.tolerance_used = eps;
  const Vector y = clip_dust(y_in);
  const bool nonnegative = std::all_of(y.begin(), y.end(), [](double v) { return v >= 0.0; });
  const Vector aty = spmv_t(p.a, y);
  const Vector r = project_reduced_cost(scaled(-1.0, aty), p);
  rep.objective_term = dot(p.b, y) + bound_term(r, p);
  double residual = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) residual = std::max(residual, std::abs(r[i] + aty[i]));
  if (rep.objective_term > 0.0) rep.scaled_error = residual / rep.objective_term;
  rep.is_primal_cert = nonnegative && rep.objective_term > 0.0 && rep.scaled_error <= eps;
  return rep;
}

inline CertCheckReport check_primal_infeasibility(const CertificateCandidate& cand,
                                                  const GeneralFormLp& p, double eps) {
  return check_primal_infeasibility(cand.y_part, p, eps);
}

// Inequality form, dual side: c^T x < 0, x close to C_v (boxed 0,
// lower-only >= 0, upper-only <= 0, free unrestricted) and A x close to
// the nonnegative orthant, both relative to -c^T x.
inline CertCheckReport check_dual_infeasibility(std::span<const double> x, const GeneralFormLp& p,
                                                double eps) {
  CertCheckReport rep;
  rep.tolerance_used = eps;
  rep.objective_term = -dot(p.c, x);
  double cone_violation = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    switch (variable_kind(p.l[i], p.u[i])) {
      case VariableKind::kBoxed:
        cone_violation = std::max(cone_violation, std::abs(x[i]));
        break;
      case VariableKind::kLowerOnly:
        cone_violation = std::max(cone_violation, -x[i]);
        break;
      case VariableKind::kUpperOnly:
        cone_violation = std::max(cone_violation, x[i]);
        break;
      case VariableKind::kFree:
        break;
    }
  }
  const Vector ax = spmv(p.a, x);
  double row_violation = 0.0;
  for (double v : ax) row_violation = std::max(row_violation, -v);
  if (rep.objective_term > 0.0) {
    rep.scaled_error = std::max(cone_violation, row_violation) / rep.objective_term;
  }
  rep.is_dual_cert = rep.objective_term > 0.0 && rep.scaled_error <= eps;
  return rep;
}

inline CertCheckReport check_dual_infeasibility(const CertificateCandidate& cand,
                                                const GeneralFormLp& p, double eps) {
  return check_dual_infeasibility(cand.x_part, p, eps);
}

// Standard form, primal side: b^T y < 0 and A^T y in the dual cone up to
// eps * ||y||_inf (nonnegative variables need (A^T y)_j >= 0, free ones
// (A^T y)_j = 0, fixed ones nothing). scaled_error is the violation over
// -b^T y.
inline CertCheckReport check_standard_primal_farkas(std::span<const double> y,
                                                    const StandardFormLp& p, double eps) {
  CertCheckReport rep;
  rep.tolerance_used = eps;
  rep.objective_term = -dot(p.b, y);
  const Vector aty = spmv_t(p.a, y);
  double violation = 0.0;
  for (std::size_t j = 0; j < aty.size(); ++j) {
    if (p.cone_of(j) == VarCone::kNonNegative) violation = std::max(violation, -aty[j]);
    if (p.cone_of(j) == VarCone::kFree) violation = std::max(violation, std::abs(aty[j]));
  }
  if (rep.objective_term > 0.0) rep.scaled_error = violation / rep.objective_term;
  rep.is_primal_cert = rep.objective_term > 0.0 && violation <= eps * norm_inf(y);
  return rep;
}

// Standard form, dual side: c^T x < 0, ||A x||_inf <= eps ||x||_inf and x in
// the cone up to eps ||x||_inf.
inline CertCheckReport check_standard_dual_farkas(std::span<const double> x,
                                                  const StandardFormLp& p, double eps) {
  CertCheckReport rep;
  rep.tolerance_used = eps;
  rep.objective_term = -dot(p.c, x);
  double violation = norm_inf(spmv(p.a, x));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (p.cone_of(j) == VarCone::kNonNegative) violation = std::max(violation, -x[j]);
    if (p.cone_of(j) == VarCone::kZero) violation = std::max(violation, std::abs(x[j]));
  }
  if (rep.objective_term > 0.0) rep.scaled_error = violation / rep.objective_term;
  rep.is_dual_cert = rep.objective_term > 0.0 && violation <= eps * norm_inf(x);
  return rep;
}

// Both sides at once; the numeric fields describe the primal side.
inline CertCheckReport check_standard_farkas(const CertificateCandidate& cand,
                                             const StandardFormLp& p, double eps) {
  CertCheckReport rep = check_standard_primal_farkas(cand.y_part, p, eps);
  rep.is_dual_cert = check_standard_dual_farkas(cand.x_part, p, eps).is_dual_cert;
  return rep;
}

}  // namespace lpinfeas

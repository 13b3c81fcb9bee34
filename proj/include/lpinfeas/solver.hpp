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

#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpinfeas/certificates.hpp"
#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/pdhg.hpp"

namespace lpinfeas {

enum class SolveStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kBothInfeasible,
  kIterationLimit,
};

inline std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kPrimalInfeasible:
      return "primal_infeasible";
    case SolveStatus::kDualInfeasible:
      return "dual_infeasible";
    case SolveStatus::kBothInfeasible:
      return "both_infeasible";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "?";
}

// One row of the trace. seq is "<sequence>_<side>", e.g. "difference_primal".
struct TraceRecord {
  std::size_t k = 0;
  std::string seq;
  double scaled_err = 0.0;
  double obj_term = 0.0;
  double kkt = 0.0;
  bool active_changed = false;
  double ms = 0.0;

  bool operator==(const TraceRecord&) const = default;
};

struct PdhgConfig {
  // Overrides step_factor / sigma_hat when set.
  std::optional<StepSizes> steps;
  double step_factor = 0.9;
  std::size_t max_iters = 1'000'000;
  std::size_t check_interval = 40;
  double eps_pinf = 1e-8;
  double eps_dinf = 1e-8;
  double kkt_tol = 1e-8;
  double active_tol = 1e-9;
  std::function<void(const TraceRecord&)> trace_sink;
  bool record_trace = false;
  Vector x0;  // empty means zero
  Vector y0;
};

struct FoundCertificate {
  CertificateCandidate candidate;
  CertCheckReport report;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kIterationLimit;
  StepSizes steps;
  std::size_t iterations = 0;
  std::optional<FoundCertificate> primal;  // proves primal infeasibility
  std::optional<FoundCertificate> dual;    // proves dual infeasibility
  PdhgState state;
  KktResidual kkt;
  std::vector<TraceRecord> trace;
  std::size_t last_active_change = 0;
  double elapsed_ms = 0.0;
};

template <class Lp>
StepSizes resolve_steps(const Lp& p, const PdhgConfig& cfg) {
  if (!cfg.steps) return default_step_sizes(p.a, cfg.step_factor);
  const OpNormEstimate est = opnorm_estimate(p.a);
  if (!steps_admissible(*cfg.steps, est.value)) {
    throw ConfigError("step sizes violate eta * tau * ||A||^2 < 1");
  }
  return *cfg.steps;
}

namespace detail {

inline void validate_config(const PdhgConfig& cfg) {
  if (cfg.check_interval < 1) throw ConfigError("check_interval must be at least 1");
  if (!(cfg.eps_pinf > 0.0 && cfg.eps_dinf > 0.0 && cfg.kkt_tol > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }
}

inline CertificateCandidate candidate(const PdhgState& s, SequenceKind kind, const GeneralFormLp& p) {
  return extract(s, kind, p);
}
inline CertificateCandidate candidate(const PdhgState& s, SequenceKind kind, const StandardFormLp&) {
  return extract(s, kind);
}

// Standard-form checks additionally require the homogeneous ratio, so that
// vanishing differences on feasible runs cannot pass on sign noise alone.
inline CertCheckReport primal_check(const CertificateCandidate& c, const GeneralFormLp& p, double eps) {
  return check_primal_infeasibility(c, p, eps);
}
inline CertCheckReport primal_check(const CertificateCandidate& c, const StandardFormLp& p, double eps) {
  CertCheckReport r = check_standard_primal_farkas(c.y_part, p, eps);
  r.is_primal_cert = r.is_primal_cert && r.scaled_error <= eps;
  return r;
}
inline CertCheckReport dual_check(const CertificateCandidate& c, const GeneralFormLp& p, double eps) {
  return check_dual_infeasibility(c, p, eps);
}
inline CertCheckReport dual_check(const CertificateCandidate& c, const StandardFormLp& p, double eps) {
  CertCheckReport r = check_standard_dual_farkas(c.x_part, p, eps);
  r.is_dual_cert = r.is_dual_cert && r.scaled_error <= eps;
  return r;
}

inline bool converged(std::span<const double> cur, std::span<const double> prev, double tol) {
  double diff = 0.0;
  for (std::size_t i = 0; i < cur.size(); ++i) diff = std::max(diff, std::abs(cur[i] - prev[i]));
  return diff <= tol * (1.0 + norm_inf(cur));
}

}  // namespace detail

// Runs PDHG from z0 and checks the three sequences every check_interval
// iterations. After the first certificate (at k1) the run continues until
// the other side also certifies, the other side's iterates stop moving, or
// k reaches max(10 k1, k1 + 10000); this separates the single-infeasible
// cells from the doubly infeasible one.
template <class Lp>
SolveOutcome run(const Lp& p, const PdhgConfig& cfg) {
  p.check_dimensions();
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  SolveOutcome out;
  out.steps = resolve_steps(p, cfg);
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  PdhgState& s = out.state;
  s = make_state(cfg.x0.empty() ? Vector(n, 0.0) : cfg.x0, cfg.y0.empty() ? Vector(m, 0.0) : cfg.y0);
  detail::check_state(s, n, m);
  PdhgWorkspace w;

  std::vector<std::size_t> active = active_set(p, s.x, cfg.active_tol);
  std::optional<std::size_t> first_found;
  auto emit = [&](TraceRecord rec) {
    if (cfg.trace_sink) cfg.trace_sink(rec);
    if (cfg.record_trace) out.trace.push_back(std::move(rec));
  };

  std::optional<SolveStatus> status;
  while (!status) {
    if (s.k >= cfg.max_iters) break;
    step(s, p, out.steps, w);
    if (s.k % cfg.check_interval != 0 && s.k != cfg.max_iters) continue;

    std::vector<std::size_t> now_active = active_set(p, s.x, cfg.active_tol);
    const bool changed = now_active != active;
    if (changed) {
      out.last_active_change = s.k;
      active = std::move(now_active);
    }
    out.kkt = kkt_residual(p, s.x, s.y);
    const double kkt = out.kkt.max();
    const double ms = elapsed();
    for (SequenceKind kind : kAllSequences) {
      CertificateCandidate cand = detail::candidate(s, kind, p);
      const CertCheckReport pr = detail::primal_check(cand, p, cfg.eps_pinf);
      const CertCheckReport dr = detail::dual_check(cand, p, cfg.eps_dinf);
      const std::string name(sequence_name(kind));
      emit({s.k, name + "_primal", pr.scaled_error, pr.objective_term, kkt, changed, ms});
      emit({s.k, name + "_dual", dr.scaled_error, dr.objective_term, kkt, changed, ms});
      if (!out.primal && pr.is_primal_cert) out.primal = FoundCertificate{cand, pr};
      if (!out.dual && dr.is_dual_cert) out.dual = FoundCertificate{cand, dr};
    }

    if (out.primal && out.dual) {
      status = SolveStatus::kBothInfeasible;
    } else if (out.primal || out.dual) {
      if (!first_found) first_found = s.k;
      const std::size_t cap = std::max(10 * *first_found, *first_found + 10000);
      const bool other_settled = out.primal ? detail::converged(s.x, s.x_prev, cfg.kkt_tol)
                                            : detail::converged(s.y, s.y_prev, cfg.kkt_tol);
      if (other_settled || s.k >= cap) {
        status = out.primal ? SolveStatus::kPrimalInfeasible : SolveStatus::kDualInfeasible;
      }
    } else if (kkt <= cfg.kkt_tol) {
      status = SolveStatus::kOptimal;
    }
  }
  if (!status) {
    if (out.primal) {
      status = SolveStatus::kPrimalInfeasible;
    } else if (out.dual) {
      status = SolveStatus::kDualInfeasible;
    } else {
      status = SolveStatus::kIterationLimit;
    }
  }
  out.status = *status;
  out.iterations = s.k;
  out.elapsed_ms = elapsed();
  return out;
}

}  // namespace lpinfeas

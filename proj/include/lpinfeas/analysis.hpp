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

// End-to-end analysis of one standard-form instance: trajectory, freeze
// iteration, refined ray, Farkas identities, shift identity, affine phase
// and rate fits.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lpinfeas/identifiability.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/operator_lab.hpp"
#include "lpinfeas/oracle.hpp"

namespace lpinfeas {

struct AnalysisConfig {
  std::size_t iterations = 100000;
  double step_factor = 0.9;
  std::size_t shift_steps = 1000;
  // Trajectories are stored densely; longer runs are cut to this many
  // doubles in total.
  std::size_t max_stored_doubles = 50'000'000;
  bool run_oracle = true;
};

struct PowerFitSummary {
  bool available = false;
  // Every sample sits at the rounding floor: the trajectory lies on the ray
  // z^0 + k v up to rounding and there is no decay to fit.
  bool at_floor = false;
  double slope = 0.0;
  double r2 = 0.0;
};

struct AnalysisReport {
  std::size_t n = 0;
  std::size_t m = 0;
  StepSizes steps;
  std::size_t iterations = 0;
  std::vector<std::string> notices;

  std::optional<FeasibilityCell> oracle_cell;

  FreezeInfo freeze;
  std::size_t active_changes = 0;

  VEstimate v_estimate;
  RaySolution ray;
  FarkasIdentity farkas;
  double shift_deviation = 0.0;

  bool spectral_skipped = false;
  AffinePhase phase;
  double q_inf_defect = 0.0;  // ||Q_inf (Q - I)||_F
  double rho_transient = 0.0; // spectral radius of Q - Q_inf
  Theorem5Report theorem5;

  // Power fits of ||(z^k - z^0)/k - v||_M and the average over [1e3, end].
  PowerFitSummary iterate_fit;
  PowerFitSummary average_fit;
  // max_k ||(z^k - z^0)/k - v||_M - (2/k) ||z^0 - z*||_M
  double theorem1_excess = 0.0;

  bool infeasible() const { return norm_inf(ray.v) > 0.0; }
};

// Relative size below which a normalized-iterate error counts as rounding.
inline constexpr double kRateFloor = 1e-10;

namespace detail {

// Errors at or below `floor` are rounding noise and are left out.
inline PowerFitSummary power_fit(const std::vector<std::pair<double, double>>& samples, double k_min,
                                 double floor) {
  PowerFitSummary s;
  std::vector<std::pair<double, double>> kept;
  for (const auto& [k, e] : samples) {
    if (e > floor) kept.emplace_back(k, e);
  }
  s.at_floor = kept.empty() && !samples.empty();
  try {
    const RateFit f = fit_rate(kept, RateModel::kPower, k_min);
    s.available = true;
    s.slope = f.slope;
    s.r2 = f.r2;
  } catch (const ConfigError&) {
    s.available = false;
  }
  return s;
}

}  // namespace detail

inline AnalysisReport analyze_instance(const StandardFormLp& p, const AnalysisConfig& cfg = {}) {
  p.check_dimensions();
  AnalysisReport rep;
  rep.n = p.num_vars();
  rep.m = p.num_rows();
  const std::size_t dim = rep.n + rep.m;
  rep.steps = default_step_sizes(p.a, cfg.step_factor);
  rep.iterations = std::min(cfg.iterations, cfg.max_stored_doubles / std::max<std::size_t>(dim, 1));
  if (rep.iterations < cfg.iterations) {
    rep.notices.push_back("trajectory cut to " + std::to_string(rep.iterations) + " iterations");
  }
  rep.iterations = std::max<std::size_t>(rep.iterations, 1000);

  if (cfg.run_oracle) {
    try {
      rep.oracle_cell = classify_lp(p).cell;
    } catch (const ConfigError& e) {
      rep.notices.push_back(std::string("oracle skipped: ") + e.what());
    }
  }

  const FixedPointOperator t = pdhg_operator(p, rep.steps);
  const Vector z0(dim, 0.0);
  const Trajectory traj = iterate(t, z0, rep.iterations);
  const ActiveSetTracker tracker = track_active_sets(p, traj);
  rep.freeze = freeze_detector(tracker);
  rep.active_changes = tracker.changes().size();
  rep.v_estimate = estimate_v(traj, t);

  rep.ray = refine_ray(p, rep.steps, traj);
  if (!rep.ray.warning.empty()) rep.notices.push_back(rep.ray.warning);
  rep.farkas = farkas_identity(p, rep.steps, rep.ray.v);
  const StandardFormLp aux = build_auxiliary(p, rep.ray.v, rep.steps, rep.ray.partition);
  const std::size_t k_shift = rep.freeze.frozen ? rep.freeze.K : traj.last();
  rep.shift_deviation = shift_identity_deviation(p, aux, rep.steps, traj.z(k_shift), rep.ray.v,
                                                 cfg.shift_steps);

  const double d0 = m_norm(subtract(z0, rep.ray.z_star), p.a, rep.steps);
  std::vector<std::pair<double, double>> it;
  std::vector<std::pair<double, double>> av;
  rep.theorem1_excess = -kInf;
  for (std::size_t k = 1; k <= traj.last(); k += (k < 1000 ? 1 : 37)) {
    const double e_it = m_norm(subtract(traj.normalized_iterate(k), rep.ray.v), p.a, rep.steps);
    rep.theorem1_excess = std::max(rep.theorem1_excess, e_it - 2.0 / static_cast<double>(k) * d0);
    if (k >= 1000) {
      it.emplace_back(static_cast<double>(k), e_it);
      av.emplace_back(static_cast<double>(k),
                      m_norm(subtract(traj.normalized_average(k), rep.ray.v), p.a, rep.steps));
    }
  }
  const double floor = kRateFloor * std::max(1.0, m_norm(rep.ray.v, p.a, rep.steps));
  rep.iterate_fit = detail::power_fit(it, 1000.0, floor);
  rep.average_fit = detail::power_fit(av, 1000.0, floor);

  if (dim > kDenseLimit) {
    rep.spectral_skipped = true;
    rep.notices.push_back("spectral analysis skipped: n + m exceeds the dense limit");
    return rep;
  }
  const Vector& z_end = traj.z(traj.last());
  rep.phase = affine_phase(p, rep.steps, support_of(p, std::span<const double>(z_end).subspan(0, rep.n)));
  const auto big = static_cast<Eigen::Index>(dim);
  rep.q_inf_defect = (rep.phase.Q_inf * (rep.phase.Q - Eigen::MatrixXd::Identity(big, big))).norm();
  rep.rho_transient = spectral_radius(rep.phase.Q - rep.phase.Q_inf);
  rep.theorem5 = verify_theorem5(p, rep.steps, rep.ray, rep.phase, traj, rep.freeze);
  if (rep.theorem5.skipped) rep.notices.push_back(rep.theorem5.notice);
  return rep;
}

}  // namespace lpinfeas

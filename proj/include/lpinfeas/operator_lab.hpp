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

// Fixed-point iterations z^{k+1} = T(z^k) of generic operators, estimators
// of the infimal displacement vector, and log-space rate fits.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/pdhg.hpp"

namespace lpinfeas {

struct FixedPointOperator {
  std::size_t dim = 0;
  std::function<Vector(std::span<const double>)> apply;
  // Norm in which the operator is claimed to be (firmly) nonexpansive.
  std::function<double(std::span<const double>)> norm = [](std::span<const double> z) {
    return norm2(z);
  };
  std::string name;
};

inline FixedPointOperator identity_operator(std::size_t dim) {
  FixedPointOperator t;
  t.dim = dim;
  t.name = "identity";
  t.apply = [](std::span<const double> z) { return Vector(z.begin(), z.end()); };
  return t;
}

inline FixedPointOperator translation_operator(Vector v) {
  FixedPointOperator t;
  t.dim = v.size();
  t.name = "translation";
  t.apply = [v = std::move(v)](std::span<const double> z) {
    Vector out(z.begin(), z.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
    return out;
  };
  return t;
}

// Counterclockwise rotation by 90 degrees in the plane: nonexpansive, not
// firmly so.
inline FixedPointOperator rotation90_operator() {
  FixedPointOperator t;
  t.dim = 2;
  t.name = "rotation90";
  t.apply = [](std::span<const double> z) { return Vector{-z[1], z[0]}; };
  return t;
}

// T(z) = z + exp(-z^2) + 1 for z > 0 and z + 2 otherwise. v = 1 is never
// attained: T(z) - z - 1 = exp(-z^2) > 0.
inline FixedPointOperator slow_displacement_operator() {
  FixedPointOperator t;
  t.dim = 1;
  t.name = "slow_displacement";
  t.apply = [](std::span<const double> z) {
    const double s = z[0];
    return Vector{s > 0.0 ? s + std::exp(-s * s) + 1.0 : s + 2.0};
  };
  return t;
}

template <class Lp>
FixedPointOperator pdhg_operator(const Lp& p, const StepSizes& steps) {
  FixedPointOperator t;
  t.dim = p.num_vars() + p.num_rows();
  t.name = "pdhg";
  t.apply = [&p, steps](std::span<const double> z) { return apply_operator(p, steps, z); };
  t.norm = [&p, steps](std::span<const double> z) {
    return m_norm(z, p.a, steps, coupling_for(p));
  };
  return t;
}

// z^0..z^K with prefix sums of z^1..z^k.
class Trajectory {
 public:
  Trajectory() = default;

  static Trajectory from_points(std::vector<Vector> points) {
    if (points.empty()) throw ConfigError("trajectory needs z^0");
    Trajectory t;
    t.points_ = std::move(points);
    const std::size_t d = t.points_[0].size();
    t.prefix_.assign(1, Vector(d, 0.0));
    for (std::size_t k = 1; k < t.points_.size(); ++k) {
      Vector s = t.prefix_.back();
      for (std::size_t i = 0; i < d; ++i) s[i] += t.points_[k][i];
      t.prefix_.push_back(std::move(s));
    }
    return t;
  }

  std::size_t size() const { return points_.size(); }
  std::size_t last() const { return points_.size() - 1; }
  const Vector& z(std::size_t k) const { return points_.at(k); }
  const std::vector<Vector>& points() const { return points_; }

  // z^k - z^{k-1}
  Vector difference(std::size_t k) const {
    check(k);
    return subtract(points_[k], points_[k - 1]);
  }
  // (z^k - z^0) / k
  Vector normalized_iterate(std::size_t k) const {
    check(k);
    return scaled(1.0 / static_cast<double>(k), subtract(points_[k], points_[0]));
  }
  // 2 / (k (k+1)) * sum_{j=1..k} (z^j - z^0)
  Vector normalized_average(std::size_t k) const {
    check(k);
    const double kk = static_cast<double>(k);
    Vector out(points_[0].size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = 2.0 * (prefix_[k][i] - kk * points_[0][i]) / (kk * (kk + 1.0));
    }
    return out;
  }

 private:
  void check(std::size_t k) const {
    if (k == 0 || k >= points_.size()) throw ConfigError("trajectory index out of range");
  }

  std::vector<Vector> points_;
  std::vector<Vector> prefix_;
};

inline Trajectory iterate(const FixedPointOperator& t, std::span<const double> z0, std::size_t k) {
  if (k < 1) throw ConfigError("iterate: k must be at least 1");
  if (z0.size() != t.dim) throw DimensionError("iterate: z0 has the wrong dimension");
  std::vector<Vector> points;
  points.reserve(k + 1);
  points.emplace_back(z0.begin(), z0.end());
  for (std::size_t j = 1; j <= k; ++j) {
    Vector next = t.apply(points.back());
    for (double v : next) {
      if (!(std::abs(v) <= kDivergenceGuard)) {
        throw NumericalError("iterate: overflow at step " + std::to_string(j));
      }
    }
    points.push_back(std::move(next));
  }
  return Trajectory::from_points(std::move(points));
}

struct VEstimate {
  Vector normalized_iterate;   // (z^K - z^0) / K
  Vector averaged_difference;  // mean of z^j - z^{j-1} over the last 10%
  double disagreement = 0.0;   // relative distance between the two
  double difference_spread = 0.0;  // relative max deviation of the differences from their mean
  bool flagged = false;
};

inline constexpr double kDisagreementThreshold = 1e-6;

inline VEstimate estimate_v(const Trajectory& traj, const FixedPointOperator& t) {
  const std::size_t budget = traj.last();
  if (budget < 100) throw ConfigError("estimate_v: budget must be at least 100");
  VEstimate est;
  est.normalized_iterate = traj.normalized_iterate(budget);
  const std::size_t window = std::max<std::size_t>(1, budget / 10);
  const std::size_t first = budget - window + 1;
  Vector mean(t.dim, 0.0);
  for (std::size_t j = first; j <= budget; ++j) {
    const Vector d = traj.difference(j);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += d[i] / static_cast<double>(window);
  }
  est.averaged_difference = mean;
  const double scale = std::max({t.norm(est.normalized_iterate), t.norm(mean), 1e-300});
  est.disagreement = t.norm(subtract(est.normalized_iterate, mean)) / scale;
  double spread = 0.0;
  for (std::size_t j = first; j <= budget; ++j) {
    spread = std::max(spread, t.norm(subtract(traj.difference(j), mean)));
  }
  est.difference_spread = spread / scale;
  est.flagged =
      est.disagreement > kDisagreementThreshold || est.difference_spread > kDisagreementThreshold;
  return est;
}

inline VEstimate estimate_v(const FixedPointOperator& t, std::span<const double> z0,
                            std::size_t budget) {
  if (budget < 100) throw ConfigError("estimate_v: budget must be at least 100");
  return estimate_v(iterate(t, z0, budget), t);
}

enum class RateModel { kPower, kGeometric };

struct RateFit {
  RateModel model = RateModel::kPower;
  std::vector<std::pair<double, double>> samples;  // (k, error) actually used
  double slope = 0.0;      // d log e / d log k (power) or d log e / d k (geometric)
  double rate = 0.0;       // exp(slope) for the geometric model
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t dropped_nonpositive = 0;
};

inline constexpr double kDefaultWarmup = 100.0;

// Least squares of log e against log k (power) or k (geometric) over
// samples with k >= k_min; nonpositive errors are dropped and counted.
inline RateFit fit_rate(std::span<const std::pair<double, double>> samples, RateModel model,
                        double k_min = kDefaultWarmup) {
  RateFit fit;
  fit.model = model;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [k, e] : samples) {
    if (k < k_min) continue;
    if (!(e > 0.0) || !std::isfinite(e)) {
      ++fit.dropped_nonpositive;
      continue;
    }
    fit.samples.emplace_back(k, e);
    xs.push_back(model == RateModel::kPower ? std::log(k) : k);
    ys.push_back(std::log(e));
  }
  if (xs.size() < 20) throw ConfigError("fit_rate: need at least 20 samples after warm-up");
  const double nn = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / nn;
    my += ys[i] / nn;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_rate: degenerate abscissae");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.rate = std::exp(fit.slope);
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

// Smallest z in [lo, hi] with |T(z) - z - v| <= eps for a scalar operator
// whose excess displacement decreases in z. Bisection to a relative width of
// 1e-12.
inline double find_z_eps(const FixedPointOperator& t, double v, double eps, double lo = 0.0,
                         double hi = 1e3) {
  if (t.dim != 1) throw DimensionError("find_z_eps: scalar operators only");
  auto ok = [&](double z) {
    const double tz = t.apply(std::span<const double>(&z, 1))[0];
    return std::abs(tz - z - v) <= eps;
  };
  if (!ok(hi)) throw ConfigError("find_z_eps: no eps-point below the search bound");
  if (ok(lo)) return lo;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

// ||T z1 - T z2||^2 - ||z1 - z2||^2 + ||(T-I) z1 - (T-I) z2||^2, which is
// <= 0 exactly when the pair satisfies firm nonexpansiveness.
inline double firm_nonexpansive_gap(const FixedPointOperator& t, std::span<const double> z1,
                                    std::span<const double> z2) {
  const Vector t1 = t.apply(z1);
  const Vector t2 = t.apply(z2);
  const Vector dt = subtract(t1, t2);
  const Vector dz = subtract(z1, z2);
  const Vector dr = subtract(dt, dz);
  const double a = t.norm(dt);
  const double b = t.norm(dz);
  const double c = t.norm(dr);
  return a * a - b * b + c * c;
}

}  // namespace lpinfeas

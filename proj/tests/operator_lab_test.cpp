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

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "lpinfeas/analysis.hpp"
#include "lpinfeas/demo.hpp"
#include "lpinfeas/operator_lab.hpp"

namespace lpinfeas {
namespace {

TEST(Iterate, IdentityIsConstant) {
  const Trajectory t = iterate(identity_operator(3), Vector{1.0, -2.0, 0.5}, 10);
  ASSERT_EQ(t.size(), 11u);
  for (std::size_t k = 1; k <= 10; ++k) {
    EXPECT_EQ(t.z(k), t.z(0));
    EXPECT_EQ(norm_inf(t.difference(k)), 0.0);
    EXPECT_EQ(norm_inf(t.normalized_iterate(k)), 0.0);
    EXPECT_EQ(norm_inf(t.normalized_average(k)), 0.0);
  }
}

TEST(Iterate, TranslationDifferenceIsExact) {
  const Vector v{0.5, -0.25};
  const Trajectory t = iterate(translation_operator(v), Vector{0.0, 0.0}, 64);
  for (std::size_t k = 1; k <= 64; ++k) EXPECT_EQ(t.difference(k), v);
}

TEST(Iterate, RotationHasPeriodFour) {
  const Trajectory t = iterate(rotation90_operator(), Vector{1.0, 0.0}, 12);
  EXPECT_EQ(t.z(1), (Vector{0.0, 1.0}));
  EXPECT_EQ(t.z(2), (Vector{-1.0, 0.0}));
  EXPECT_EQ(t.z(3), (Vector{0.0, -1.0}));
  for (std::size_t k = 4; k <= 12; ++k) EXPECT_EQ(t.z(k), t.z(k - 4));
}

TEST(Iterate, PreconditionsAndOverflow) {
  EXPECT_THROW(iterate(identity_operator(1), Vector{0.0}, 0), ConfigError);
  EXPECT_THROW(iterate(identity_operator(2), Vector{0.0}, 3), DimensionError);
  FixedPointOperator blow = identity_operator(1);
  blow.apply = [](std::span<const double> z) { return Vector{z[0] * 1e200 + 1.0}; };
  EXPECT_THROW(iterate(blow, Vector{1.0}, 5), NumericalError);
}

TEST(EstimateV, TranslationBothEstimatorsExact) {
  const Vector v{1.0, -3.0, 0.5};
  const VEstimate e = estimate_v(translation_operator(v), Vector{0.0, 0.0, 0.0}, 200);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(e.normalized_iterate[i], v[i], 1e-13);
    EXPECT_NEAR(e.averaged_difference[i], v[i], 1e-13);
  }
  EXPECT_FALSE(e.flagged);
}

TEST(EstimateV, RotationIsFlagged) {
  const FixedPointOperator rot = rotation90_operator();
  const Trajectory t = iterate(rot, Vector{1.0, 0.0}, 1000);
  const VEstimate e = estimate_v(t, rot);
  EXPECT_LE(norm2(e.normalized_iterate), 2.0 / 1000.0);
  EXPECT_TRUE(e.flagged);
  // Differences keep norm sqrt(2) forever.
  for (std::size_t k = 990; k <= 1000; ++k) EXPECT_NEAR(norm2(t.difference(k)), std::sqrt(2.0), 1e-15);
  // Not firmly nonexpansive: some pair violates the inequality.
  EXPECT_GT(firm_nonexpansive_gap(rot, Vector{1.0, 0.0}, Vector{0.0, 0.0}), 0.5);
}

TEST(EstimateV, BudgetPrecondition) {
  EXPECT_THROW(estimate_v(identity_operator(1), Vector{0.0}, 99), ConfigError);
}

TEST(EstimateV, SlowDisplacementTendsToOne) {
  const VEstimate e = estimate_v(slow_displacement_operator(), Vector{0.0}, 10000);
  EXPECT_NEAR(e.normalized_iterate[0], 1.0, 1e-3);
  EXPECT_NEAR(e.averaged_difference[0], 1.0, 1e-12);
}

// z^k = (-1)^k k^{3/2}: iterates over k grow, averages decay.
TEST(SequenceCounterexample, IterateDivergesAverageConverges) {
  std::vector<Vector> pts;
  for (int k = 0; k <= 100000; ++k) {
    pts.push_back({(k % 2 == 0 ? 1.0 : -1.0) * std::pow(static_cast<double>(k), 1.5)});
  }
  const Trajectory t = Trajectory::from_points(std::move(pts));
  std::vector<std::pair<double, double>> it;
  std::vector<std::pair<double, double>> av;
  for (std::size_t k = 1000; k <= t.last(); k += 1000) {
    it.emplace_back(k, std::abs(t.normalized_iterate(k)[0]));
    av.emplace_back(k, std::abs(t.normalized_average(k)[0]));
  }
  EXPECT_GT(std::abs(t.normalized_iterate(100000)[0]), 300.0);
  EXPECT_LT(std::abs(t.normalized_average(100000)[0]), 1e-2);
  EXPECT_NEAR(fit_rate(it, RateModel::kPower).slope, 0.5, 0.05);
  EXPECT_NEAR(fit_rate(av, RateModel::kPower).slope, -0.5, 0.05);
}

// z_eps solves exp(-z^2) = eps, so z_eps = sqrt(log(1/eps)). Below 1e-10
// the excess exp(-z^2) drowns in the rounding of z + 1.
TEST(SlowDisplacement, EpsPointGrowsLikeSqrtLog) {
  const FixedPointOperator t = slow_displacement_operator();
  std::vector<double> lx;
  std::vector<double> ly;
  for (double p = 0.5; p <= 10.0; p += 0.25) {
    const double eps = std::pow(10.0, -p);
    const double z = find_z_eps(t, 1.0, eps);
    EXPECT_NEAR(z, std::sqrt(std::log(1.0 / eps)), 1e-5 * (1.0 + z));
    lx.push_back(std::log(std::log(1.0 / eps)));
    ly.push_back(std::log(z));
  }
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < lx.size(); ++i) samples.emplace_back(std::exp(lx[i]), std::exp(ly[i]));
  const RateFit f = fit_rate(samples, RateModel::kPower, 0.0);
  EXPECT_NEAR(f.slope, 0.5, 0.1);
}

TEST(SlowDisplacement, FindZEpsErrors) {
  EXPECT_THROW(find_z_eps(identity_operator(2), 1.0, 1e-3), DimensionError);
  EXPECT_THROW(find_z_eps(slow_displacement_operator(), 1.0, 1e-300, 0.0, 1.0), ConfigError);
}

TEST(FitRate, ExactPowerLaw) {
  std::vector<std::pair<double, double>> s;
  for (int k = 1; k <= 1000; ++k) s.emplace_back(k, 7.0 / k);
  const RateFit f = fit_rate(s, RateModel::kPower);
  EXPECT_NEAR(f.slope, -1.0, 0.01);
  EXPECT_NEAR(std::exp(f.intercept), 7.0, 1e-9);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  EXPECT_EQ(f.samples.size(), 901u);
}

TEST(FitRate, ExactGeometric) {
  std::vector<std::pair<double, double>> s;
  for (int k = 100; k <= 400; ++k) s.emplace_back(k, std::pow(0.9, k));
  const RateFit f = fit_rate(s, RateModel::kGeometric);
  EXPECT_NEAR(f.rate, 0.9, 0.001);
}

TEST(FitRate, DropsNonpositiveAndNeedsTwentySamples) {
  std::vector<std::pair<double, double>> s;
  for (int k = 100; k < 119; ++k) s.emplace_back(k, 1.0 / k);
  EXPECT_THROW(fit_rate(s, RateModel::kPower), ConfigError);
  s.emplace_back(119, 0.0);
  s.emplace_back(120, -1.0);
  EXPECT_THROW(fit_rate(s, RateModel::kPower), ConfigError);
  s.emplace_back(121, 1.0 / 121);
  const RateFit f = fit_rate(s, RateModel::kPower);
  EXPECT_EQ(f.dropped_nonpositive, 2u);
  EXPECT_EQ(f.samples.size(), 20u);
}

TEST(PdhgOperator, FirmlyNonexpansiveInMNorm) {
  const StandardFormLp p = to_standard_form(example1(1.0, 2.0)).lp;
  const StepSizes st = default_step_sizes(p.a);
  const FixedPointOperator t = pdhg_operator(p, st);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    Vector z1(t.dim);
    Vector z2(t.dim);
    for (double& v : z1) v = g(rng);
    for (double& v : z2) v = g(rng);
    const double scale = std::pow(t.norm(subtract(z1, z2)), 2);
    EXPECT_LE(firm_nonexpansive_gap(t, z1, z2), 1e-12 * (1.0 + scale));
  }
}

// Normalized-iterate error on a both-infeasible instance decays like 1/k.
TEST(PdhgOperator, BothInfeasibleIterateRate) {
  AnalysisConfig cfg;
  cfg.iterations = 100000;
  cfg.run_oracle = false;
  const AnalysisReport r = analyze_instance(desk_both1(), cfg);
  ASSERT_TRUE(r.iterate_fit.available);
  EXPECT_NEAR(r.iterate_fit.slope, -1.0, 0.15);
  EXPECT_LE(r.theorem1_excess, 1e-9);
}

}  // namespace
}  // namespace lpinfeas

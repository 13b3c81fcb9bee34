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

#include <random>

#include <gtest/gtest.h>

#include "lpinfeas/demo.hpp"
#include "lpinfeas/operator_lab.hpp"
#include "lpinfeas/oracle.hpp"
#include "lpinfeas/pdhg.hpp"
#include "lpinfeas/solver.hpp"

namespace lpinfeas {
namespace {

Vector random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (double& x : v) x = g(rng);
  return v;
}

GeneralFormLp mixed_general() {
  GeneralFormLp p;
  p.c = {1.0, -2.0, 0.5, 3.0};
  p.a = SparseMatrix::FromDense({{1.0, 1.0, 0.0, -1.0}, {0.0, 2.0, 1.0, 1.0}, {-1.0, 0.0, 1.0, 0.0}});
  p.b = {1.0, -2.0, 0.5};
  p.l = {0.0, -1.0, -kInf, -kInf};
  p.u = {kInf, 2.0, 4.0, kInf};
  return p;
}

TEST(StepStandard, ZeroDataIsFixedPoint) {
  StandardFormLp p;
  p.c = {0.0, 0.0};
  p.a = SparseMatrix(1, 2, {});
  p.b = {0.0};
  PdhgState s = make_state(Vector{1.0, 2.0}, Vector{-3.0});
  s = step_standard(s, p, {0.5, 0.5});
  EXPECT_EQ(s.x, (Vector{1.0, 2.0}));
  EXPECT_EQ(s.y, (Vector{-3.0}));
  EXPECT_EQ(s.k, 1u);
}

TEST(StepStandard, FirstStepFromZeroProjectsCost) {
  const StandardFormLp p = to_standard_form(example1(0.0, 1.0)).lp;
  const StepSizes st = default_step_sizes(p.a);
  const PdhgState s = step_standard(make_state(p.num_vars(), p.num_rows()), p, st);
  for (std::size_t j = 0; j < p.num_vars(); ++j) EXPECT_EQ(s.x[j], std::max(-st.eta * p.c[j], 0.0));
}

TEST(StepStandard, Example1FeasibleReachesKkt) {
  const StandardizedLp sd = to_standard_form(example1(0.0, 1.0));
  const StandardFormLp& p = sd.lp;
  const StepSizes st = default_step_sizes(p.a);
  PdhgState s = make_state(p.num_vars(), p.num_rows());
  PdhgWorkspace w;
  for (int k = 0; k < 100000; ++k) step(s, p, st, w);
  const KktResidual r = kkt_residual(p, s.x, s.y);
  EXPECT_LT(r.max(), 1e-6);
  const auto exact = exact_optimal_value(p);
  ASSERT_TRUE(exact.has_value());
  EXPECT_NEAR(r.primal_objective, exact->get_d(), 1e-6);
}

TEST(StepStandard, IteratesStayInCone) {
  const StandardFormLp p = desk_both1();
  const StepSizes st = default_step_sizes(p.a);
  PdhgState s = make_state(p.num_vars(), p.num_rows());
  PdhgWorkspace w;
  for (int k = 0; k < 500; ++k) {
    step(s, p, st, w);
    for (double v : s.x) ASSERT_GE(v, 0.0);
  }
}

TEST(StepGeneral, FixedVariablesStayPut) {
  GeneralFormLp p;
  p.c = {5.0, -5.0};
  p.a = SparseMatrix::FromDense({{1.0, 1.0}});
  p.b = {10.0};
  p.l = {1.0, -2.0};
  p.u = {1.0, -2.0};
  PdhgState s = make_state(2, 1);
  for (int k = 0; k < 3; ++k) s = step_general(s, p, {0.3, 0.3});
  EXPECT_EQ(s.x, (Vector{1.0, -2.0}));
}

TEST(StepGeneral, NegativeRhsKeepsDualAtZero) {
  GeneralFormLp p;
  p.c = {1.0};
  p.a = SparseMatrix(1, 1, {});
  p.b = {-4.0};
  p.l = {0.0};
  p.u = {kInf};
  PdhgState s = make_state(1, 1);
  for (int k = 0; k < 10; ++k) {
    s = step_general(s, p, {0.5, 0.5});
    EXPECT_EQ(s.y[0], 0.0);
  }
}

TEST(StepGeneral, BoundsAndDualSignHold) {
  const GeneralFormLp p = mixed_general();
  const StepSizes st = default_step_sizes(p.a);
  PdhgState s = make_state(p.num_vars(), p.num_rows());
  PdhgWorkspace w;
  for (int k = 0; k < 500; ++k) {
    step(s, p, st, w);
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
      ASSERT_GE(s.x[j], p.l[j]);
      ASSERT_LE(s.x[j], p.u[j]);
    }
    for (double v : s.y) ASSERT_GE(v, 0.0);
  }
}

// With no rows the standardized twin has no slacks, so the two iterations
// coincide after pulling back (shifts, the u - x flip and the x+ - x- split
// all commute with the projected gradient step from the origin).
TEST(StepGeneral, MatchesStandardizedTwinWithoutRows) {
  GeneralFormLp g;
  g.c = {1.0, -0.5, 2.0, -1.0};
  g.a = SparseMatrix(0, 4, {});
  g.b = {};
  g.l = {-3.0, -kInf, -kInf, 1.0};
  g.u = {kInf, 2.0, kInf, kInf};
  const StandardizedLp sd = to_standard_form(g);
  ASSERT_EQ(sd.lp.num_rows(), 0u);
  const StepSizes st{0.1, 0.1};
  PdhgState sg = make_state(sd.map.pull_back_point(Vector(sd.lp.num_vars(), 0.0)), Vector{});
  PdhgState ss = make_state(sd.lp.num_vars(), 0);
  for (int k = 0; k < 100; ++k) {
    sg = step_general(sg, g, st);
    ss = step_standard(ss, sd.lp, st);
    const Vector back = sd.map.pull_back_point(ss.x);
    ASSERT_NEAR(dot(g.c, sg.x), dot(g.c, back), 1e-9);
  }
}

// With rows the slacks and the split duals are iterated separately, so only
// the limits are compared.
TEST(StepGeneral, LimitMatchesStandardizedTwin) {
  const GeneralFormLp g = example1(0.0, 1.0);
  const StandardizedLp sd = to_standard_form(g);
  PdhgConfig cfg;
  cfg.kkt_tol = 1e-9;
  const SolveOutcome a = run(g, cfg);
  const SolveOutcome b = run(sd.lp, cfg);
  ASSERT_EQ(a.status, SolveStatus::kOptimal);
  ASSERT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_NEAR(dot(g.c, a.state.x), dot(g.c, sd.map.pull_back_point(b.state.x)), 1e-7);
}

TEST(StepGeneral, OverflowGuard) {
  GeneralFormLp p;
  p.c = {-1e49};
  p.a = SparseMatrix(0, 1, {});
  p.l = {-kInf};
  p.u = {kInf};
  PdhgState s = make_state(1, 0);
  PdhgWorkspace w;
  EXPECT_THROW(
      {
        for (int k = 0; k < 100; ++k) step(s, p, {1.0, 1.0}, w);
      },
      NumericalError);
}

TEST(RunningSums, MatchDirectPrefixSums) {
  const GeneralFormLp p = mixed_general();
  const StepSizes st = default_step_sizes(p.a);
  PdhgState s = make_state(p.num_vars(), p.num_rows());
  Vector sx(p.num_vars(), 0.0);
  Vector sy(p.num_rows(), 0.0);
  for (int k = 0; k < 50; ++k) {
    s = step_general(s, p, st);
    for (std::size_t j = 0; j < sx.size(); ++j) sx[j] += s.x[j];
    for (std::size_t i = 0; i < sy.size(); ++i) sy[i] += s.y[i];
  }
  for (std::size_t j = 0; j < sx.size(); ++j) EXPECT_NEAR(s.sum_x[j], sx[j], 1e-12);
  for (std::size_t i = 0; i < sy.size(); ++i) EXPECT_NEAR(s.sum_y[i], sy[i], 1e-12);
}

TEST(RecoverR, SignPatterns) {
  GeneralFormLp p;
  p.c = {1.0, -3.0, 2.0};
  p.a = SparseMatrix(1, 3, {});
  p.b = {0.0};
  p.l = {0.0, 0.0, 0.0};
  p.u = {1.0, 1.0, 1.0};
  EXPECT_EQ(recover_r(Vector{0.0}, p), p.c);
  p.l.assign(3, -kInf);
  p.u.assign(3, kInf);
  EXPECT_EQ(recover_r(Vector{0.0}, p), (Vector{0.0, 0.0, 0.0}));
  p.l = {0.0, 0.0, 0.0};
  EXPECT_EQ(recover_r(Vector{0.0}, p)[1], 0.0);
  p.l = {-kInf, -kInf, -kInf};
  p.u = {0.0, 0.0, 0.0};
  EXPECT_EQ(recover_r(Vector{0.0}, p), (Vector{0.0, -3.0, 0.0}));
}

template <class Lp>
void check_operator_properties(const Lp& p, std::uint64_t seed) {
  const StepSizes st = default_step_sizes(p.a);
  const FixedPointOperator t = pdhg_operator(p, st);
  std::mt19937_64 rng(seed);
  const std::size_t d = p.num_vars() + p.num_rows();
  for (int trial = 0; trial < 200; ++trial) {
    const Vector z1 = random_vector(rng, d, 3.0);
    const Vector z2 = random_vector(rng, d, 3.0);
    const double before = t.norm(subtract(z1, z2));
    const double after = t.norm(subtract(t.apply(z1), t.apply(z2)));
    EXPECT_LE(after, before + 1e-10);
    EXPECT_LE(firm_nonexpansive_gap(t, z1, z2), 1e-9 * (1.0 + before * before));
  }
  Vector z = random_vector(rng, d);
  for (int k = 0; k < 200; ++k) {
    const Vector next = t.apply(z);
    EXPECT_LE(inclusion_residual(p, st, z, next), 1e-9);
    z = next;
  }
}

TEST(Operator, FirmlyNonexpansiveInMNorm) {
  check_operator_properties(desk_both1(), 1);
  check_operator_properties(to_standard_form(example1(1.0, 2.0)).lp, 2);
  check_operator_properties(example1(1.0, 2.0), 3);
  check_operator_properties(mixed_general(), 4);
}

TEST(Operator, InclusionResidualDetectsWrongStep) {
  const StandardFormLp p = desk_both1();
  const StepSizes st = default_step_sizes(p.a);
  const Vector z(6, 0.5);
  Vector next = apply_operator(p, st, z);
  EXPECT_LE(inclusion_residual(p, st, z, next), 1e-12);
  next[5] += 0.1;
  EXPECT_GT(inclusion_residual(p, st, z, next), 1e-3);
}

TEST(Run, Example1Cells) {
  struct Case {
    double alpha, beta;
    SolveStatus want;
  };
  for (const Case c : {Case{0.0, 1.0, SolveStatus::kOptimal}, Case{1.0, 2.0, SolveStatus::kBothInfeasible},
                       Case{0.0, 2.0, SolveStatus::kPrimalInfeasible},
                       Case{1.0, 1.0, SolveStatus::kDualInfeasible}}) {
    const GeneralFormLp g = example1(c.alpha, c.beta);
    EXPECT_EQ(run(g, PdhgConfig{}).status, c.want) << c.alpha << " " << c.beta;
    EXPECT_EQ(run(to_standard_form(g).lp, PdhgConfig{}).status, c.want) << c.alpha << " " << c.beta;
  }
}

TEST(Run, ConfigValidation) {
  PdhgConfig cfg;
  cfg.check_interval = 0;
  EXPECT_THROW(run(example1(0.0, 1.0), cfg), ConfigError);
  cfg = PdhgConfig{};
  cfg.eps_pinf = 0.0;
  EXPECT_THROW(run(example1(0.0, 1.0), cfg), ConfigError);
  cfg = PdhgConfig{};
  cfg.steps = StepSizes{10.0, 10.0};
  EXPECT_THROW(run(example1(0.0, 1.0), cfg), ConfigError);
}

TEST(Run, IterationLimit) {
  PdhgConfig cfg;
  cfg.max_iters = 5;
  const SolveOutcome out = run(example1(0.0, 1.0), cfg);
  EXPECT_EQ(out.status, SolveStatus::kIterationLimit);
  EXPECT_EQ(out.iterations, 5u);
}

TEST(Run, TraceIsMonotoneAndPeriodic) {
  PdhgConfig cfg;
  cfg.record_trace = true;
  cfg.check_interval = 7;
  const SolveOutcome out = run(example1(1.0, 2.0), cfg);
  ASSERT_FALSE(out.trace.empty());
  EXPECT_EQ(out.trace.size() % 6, 0u);
  for (std::size_t i = 0; i < out.trace.size(); ++i) {
    EXPECT_EQ(out.trace[i].k % 7, 0u);
    if (i > 0) {
      EXPECT_GE(out.trace[i].k, out.trace[i - 1].k);
    }
  }
}

}  // namespace
}  // namespace lpinfeas

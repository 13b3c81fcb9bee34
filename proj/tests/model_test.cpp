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
#include <limits>
#include <optional>

#include <gtest/gtest.h>

#include "lpinfeas/certificates.hpp"
#include "lpinfeas/demo.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/oracle.hpp"
#include "lpinfeas/solver.hpp"

namespace lpinfeas {
namespace {

// Minimum of c^T x over {A x >= b} in two variables by enumerating the
// intersections of constraint pairs. Only used where the LP is bounded and
// attains its minimum at a vertex.
std::optional<double> vertex_min_2d(const std::vector<Vector>& a, const Vector& b, const Vector& c) {
  std::optional<double> best;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
      if (std::abs(det) < 1e-14) continue;
      const double x0 = (b[i] * a[j][1] - a[i][1] * b[j]) / det;
      const double x1 = (a[i][0] * b[j] - b[i] * a[j][0]) / det;
      bool ok = true;
      for (std::size_t k = 0; k < a.size(); ++k) ok = ok && a[k][0] * x0 + a[k][1] * x1 >= b[k] - 1e-12;
      if (!ok) continue;
      const double val = c[0] * x0 + c[1] * x1;
      if (!best || val < *best) best = val;
    }
  }
  return best;
}

TEST(VariableKind, FromBounds) {
  EXPECT_EQ(variable_kind(0.0, 1.0), VariableKind::kBoxed);
  EXPECT_EQ(variable_kind(0.0, kInf), VariableKind::kLowerOnly);
  EXPECT_EQ(variable_kind(-kInf, 3.0), VariableKind::kUpperOnly);
  EXPECT_EQ(variable_kind(-kInf, kInf), VariableKind::kFree);
}

TEST(ToStandardForm, AlreadyStandardIsUnchanged) {
  StandardFormLp s;
  s.c = {1.0, -2.0, 0.5};
  s.a = SparseMatrix::FromDense({{1.0, 1.0, 0.0}, {0.0, 2.0, -1.0}});
  s.b = {1.0, 3.0};
  const StandardizedLp back = to_standard_form(to_general_form(s));
  EXPECT_EQ(back.lp.a, s.a);
  EXPECT_EQ(back.lp.b, s.b);
  EXPECT_EQ(back.lp.c, s.c);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(back.lp.cone_of(j), VarCone::kNonNegative);
}

TEST(ToStandardForm, FreeVariableSplits) {
  GeneralFormLp g;
  g.c = {2.0};
  g.a = SparseMatrix::FromDense({{3.0}});
  g.b = {1.0};
  g.l = {-kInf};
  g.u = {kInf};
  const StandardizedLp s = to_standard_form(g);
  const auto& v = s.map.vars[0];
  ASSERT_NE(v.minus_column, IndexMap::kNone);
  EXPECT_EQ(s.lp.a.at(0, v.column), 3.0);
  EXPECT_EQ(s.lp.a.at(0, v.minus_column), -3.0);
  EXPECT_EQ(s.lp.c[v.column], 2.0);
  EXPECT_EQ(s.lp.c[v.minus_column], -2.0);
  // x = x+ - x-
  Vector x_std(s.lp.num_vars(), 0.0);
  x_std[v.column] = 5.0;
  x_std[v.minus_column] = 1.5;
  EXPECT_EQ(s.map.pull_back_point(x_std)[0], 3.5);
}

TEST(ToStandardForm, BoundsShiftAndMirror) {
  GeneralFormLp g;
  g.c = {1.0, 1.0, 1.0};
  g.a = SparseMatrix::FromDense({{1.0, 1.0, 1.0}});
  g.b = {0.0};
  g.l = {2.0, -kInf, -1.0};
  g.u = {kInf, 4.0, 1.0};
  const StandardizedLp s = to_standard_form(g);
  Vector x_std(s.lp.num_vars(), 0.0);
  const Vector x = s.map.pull_back_point(x_std);
  EXPECT_EQ(x[0], 2.0);
  EXPECT_EQ(x[1], 4.0);
  EXPECT_EQ(x[2], -1.0);
  EXPECT_EQ(s.map.vars[1].sign, -1.0);
}

TEST(ToStandardForm, RejectsCrossedBounds) {
  GeneralFormLp g;
  g.c = {1.0};
  g.a = SparseMatrix::FromDense({{1.0}});
  g.b = {0.0};
  g.l = {2.0};
  g.u = {1.0};
  EXPECT_THROW(to_standard_form(g), ModelError);
}

TEST(ToStandardForm, Example1OptimumMatchesVertexOracle) {
  const GeneralFormLp g = example1(0.0, 1.0);
  const auto vertex = vertex_min_2d({{-1.0, -2.0}, {-3.0, -1.0}, {1.0, 1.0}}, {-2.0, -2.0, 1.0},
                                    {1.0, 1.0});
  ASSERT_TRUE(vertex.has_value());
  const StandardizedLp s = to_standard_form(g);
  const auto exact = exact_optimal_value(s.lp);
  ASSERT_TRUE(exact.has_value());
  EXPECT_EQ(exact->get_d(), *vertex);

  const SolveOutcome out = run(s.lp, PdhgConfig{});
  ASSERT_EQ(out.status, SolveStatus::kOptimal);
  EXPECT_NEAR(out.kkt.primal_objective, *vertex, 1e-6);
  const Vector x = s.map.pull_back_point(out.state.x);
  EXPECT_NEAR(dot(g.c, x), *vertex, 1e-6);
}

TEST(ToGeneralForm, RoundTripKeepsOptimalValue) {
  StandardFormLp s;
  s.c = {1.0, 2.0, 0.0};
  s.a = SparseMatrix::FromDense({{1.0, 1.0, 1.0}, {1.0, -1.0, 0.0}});
  s.b = {4.0, 1.0};
  const GeneralFormLp g = to_general_form(s);
  EXPECT_EQ(g.num_rows(), 4u);
  for (double l : g.l) EXPECT_EQ(l, 0.0);
  for (double u : g.u) EXPECT_EQ(u, kInf);
  const auto direct = exact_optimal_value(s);
  const auto general = exact_optimal_value(g);
  const auto back = exact_optimal_value(to_standard_form(g).lp);
  ASSERT_TRUE(direct && general && back);
  EXPECT_EQ(*direct, *general);
  EXPECT_EQ(*direct, *back);
}

TEST(IndexMap, DualCertificatePullsBack) {
  const GeneralFormLp g = example1(1.0, 1.0);
  const StandardizedLp s = to_standard_form(g);
  const ClassifyResult c = classify_lp(s.lp);
  ASSERT_TRUE(c.dual_certificate.has_value());
  const Vector x = s.map.pull_back_direction(to_double(*c.dual_certificate));
  EXPECT_TRUE(check_dual_infeasibility(x, g, 1e-12).is_dual_cert);
  EXPECT_TRUE(verify_certificate_exact(x, g, CertificateKind::kDualInfeasibility));
}

TEST(IndexMap, PrimalCertificatePullsBack) {
  const GeneralFormLp g = example1(0.0, 2.0);
  const StandardizedLp s = to_standard_form(g);
  const ClassifyResult c = classify_lp(s.lp);
  ASSERT_TRUE(c.primal_certificate.has_value());
  const Vector y = s.map.pull_back_multipliers(to_double(*c.primal_certificate));
  EXPECT_TRUE(check_primal_infeasibility(y, g, 1e-12).is_primal_cert);
  EXPECT_TRUE(verify_certificate_exact(y, g, CertificateKind::kPrimalInfeasibility));
}

TEST(Validate, WellFormedIsEmpty) {
  EXPECT_TRUE(validate(example1(0.0, 1.0)).empty());
  EXPECT_TRUE(validate(desk_both1()).empty());
}

TEST(Validate, NanRhsFlagged) {
  GeneralFormLp g = example1(0.0, 1.0);
  g.b[1] = std::numeric_limits<double>::quiet_NaN();
  const ValidationReport r = validate(g);
  EXPECT_FALSE(r.ok());
  StandardFormLp s = desk_pinf1();
  s.b[0] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(validate(s).ok());
}

TEST(Validate, EmptyColumnWithCostWarns) {
  StandardFormLp s;
  s.c = {1.0, 3.0};
  s.a = SparseMatrix::FromDense({{1.0, 0.0}});
  s.b = {1.0};
  const ValidationReport r = validate(s);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].severity, ValidationIssue::Severity::kWarning);
}

TEST(Validate, DimensionMismatch) {
  StandardFormLp s = desk_pinf1();
  s.c.push_back(1.0);
  EXPECT_FALSE(validate(s).ok());
  EXPECT_THROW(s.check_dimensions(), DimensionError);
}

}  // namespace
}  // namespace lpinfeas

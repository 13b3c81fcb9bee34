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

#include <gtest/gtest.h>

#include "lpinfeas/demo.hpp"
#include "lpinfeas/oracle.hpp"

namespace lpinfeas {
namespace {

ExactLp system2(std::vector<std::array<int, 3>> rows) {
  ExactLp s;
  s.num_vars = 2;
  for (const auto& r : rows) s.add_row({Rational(r[0]), Rational(r[1])}, Rational(r[2]));
  return s;
}

// Independent check for two variables: add the box |x_j| <= 1000 (every
// minimal face of a system with entries in [-3, 3] meets it), then try every
// intersection of two constraint lines.
bool feasible_by_vertices(const ExactLp& sys) {
  ExactLp boxed = sys;
  boxed.add_row({1, 0}, -1000);
  boxed.add_row({-1, 0}, -1000);
  boxed.add_row({0, 1}, -1000);
  boxed.add_row({0, -1}, -1000);
  const std::size_t r = boxed.rows.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const Rational a = boxed.rows[i][0], b = boxed.rows[i][1];
      const Rational c = boxed.rows[j][0], d = boxed.rows[j][1];
      const Rational det = a * d - b * c;
      if (sgn(det) == 0) continue;
      const RationalVector x{(boxed.rhs[i] * d - b * boxed.rhs[j]) / det,
                             (a * boxed.rhs[j] - c * boxed.rhs[i]) / det};
      if (satisfies(boxed, x)) return true;
    }
  }
  return false;
}

TEST(DecideFeasibility, ContradictoryBounds) {
  ExactLp s;
  s.num_vars = 1;
  s.add_row({1}, 1);    // x >= 1
  s.add_row({-1}, 0);   // x <= 0
  const FeasibilityResult r = decide_feasibility(s);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(is_farkas_combination(s, r.multipliers));
  EXPECT_EQ(r.multipliers, (RationalVector{1, 1}));
}

TEST(DecideFeasibility, WitnessSatisfiesSystem) {
  const ExactLp s = system2({{1, 1, 1}, {1, -1, 0}, {-1, 0, -5}});
  const FeasibilityResult r = decide_feasibility(s);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(satisfies(s, r.witness));
}

TEST(DecideFeasibility, EmptySystemIsFeasible) {
  ExactLp s;
  s.num_vars = 3;
  EXPECT_TRUE(decide_feasibility(s).feasible);
  s.add_row({0, 0, 0}, 1);
  EXPECT_FALSE(decide_feasibility(s).feasible);
}

TEST(DecideFeasibility, RandomSystemsAgreeWithVertexEnumeration) {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> rows(1, 6);
  int feasible = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::array<int, 3>> r(rows(rng));
    for (auto& row : r) row = {coef(rng), coef(rng), coef(rng)};
    const ExactLp s = system2(r);
    const FeasibilityResult res = decide_feasibility(s);
    ASSERT_EQ(res.feasible, feasible_by_vertices(s)) << "trial " << trial;
    if (res.feasible) {
      EXPECT_TRUE(satisfies(s, res.witness));
      ++feasible;
    } else {
      EXPECT_TRUE(is_farkas_combination(s, res.multipliers));
      ++infeasible;
    }
  }
  EXPECT_GT(feasible, 50);
  EXPECT_GT(infeasible, 50);
}

TEST(DecideFeasibility, SizeGuard) {
  ExactLp s;
  s.num_vars = 13;
  EXPECT_THROW(decide_feasibility(s), ConfigError);
  OracleLimits lim;
  lim.max_rows = 1;
  ExactLp t;
  t.num_vars = 1;
  t.add_row({1}, 0);
  t.add_row({1}, 0);
  EXPECT_THROW(decide_feasibility(t, lim), ConfigError);
  EXPECT_THROW(t.add_row({1, 2}, 0), DimensionError);
}

TEST(ClassifyLp, Example1Cells) {
  EXPECT_EQ(classify_lp(example1(0.0, 1.0)).cell, FeasibilityCell::kBothFeasible);
  EXPECT_EQ(classify_lp(example1(1.0, 2.0)).cell, FeasibilityCell::kBothInfeasible);
  EXPECT_EQ(classify_lp(example1(0.0, 2.0)).cell, FeasibilityCell::kPrimalInfDualFeas);
  EXPECT_EQ(classify_lp(example1(1.0, 1.0)).cell, FeasibilityCell::kPrimalFeasDualInf);
}

TEST(ClassifyLp, CertificatesCloseExactly) {
  for (const auto& [alpha, beta] : {std::pair{1.0, 2.0}, {0.0, 2.0}, {1.0, 1.0}}) {
    const GeneralFormLp g = example1(alpha, beta);
    const ClassifyResult c = classify_lp(g);
    if (c.primal_certificate) {
      EXPECT_TRUE(verify_certificate_exact(std::span<const Rational>(*c.primal_certificate), g,
                                           CertificateKind::kPrimalInfeasibility));
    }
    if (c.dual_certificate) {
      EXPECT_TRUE(verify_certificate_exact(std::span<const Rational>(*c.dual_certificate), g,
                                           CertificateKind::kDualInfeasibility));
    }
    const StandardFormLp s = to_standard_form(g).lp;
    const ClassifyResult cs = classify_lp(s);
    EXPECT_EQ(cs.cell, c.cell);
    if (cs.primal_certificate) {
      EXPECT_TRUE(verify_certificate_exact(std::span<const Rational>(*cs.primal_certificate), s,
                                           CertificateKind::kPrimalInfeasibility));
    }
    if (cs.dual_certificate) {
      EXPECT_TRUE(verify_certificate_exact(std::span<const Rational>(*cs.dual_certificate), s,
                                           CertificateKind::kDualInfeasibility));
    }
  }
}

TEST(ClassifyLp, DeskCorpusCells) {
  auto cell = [](const std::string& name) {
    for (const DeskInstance& d : desk_corpus()) {
      if (d.name == name) return classify_lp(d.lp).cell;
    }
    throw ConfigError("missing " + name);
  };
  EXPECT_EQ(cell("pinf1"), FeasibilityCell::kPrimalInfDualFeas);
  EXPECT_EQ(cell("dinf1"), FeasibilityCell::kPrimalFeasDualInf);
  EXPECT_EQ(cell("both1"), FeasibilityCell::kBothInfeasible);
  EXPECT_EQ(cell("bilinear4"), FeasibilityCell::kBothFeasible);
}

TEST(ExactOptimalValue, OneDimensional) {
  GeneralFormLp g;
  g.c = {2.0};
  g.a = SparseMatrix::FromDense({{1.0}});
  g.b = {0.25};
  g.l = {-kInf};
  g.u = {kInf};
  EXPECT_EQ(*exact_optimal_value(g), Rational(1, 2));
  g.objective_offset = 1.0;
  EXPECT_EQ(*exact_optimal_value(g), Rational(3, 2));
  g.b = {0.0};
  g.u = {-1.0};
  EXPECT_FALSE(exact_optimal_value(g).has_value());
}

TEST(Snap, ContinuedFractions) {
  EXPECT_EQ(snap_rational(0.1), Rational(1, 10));
  EXPECT_EQ(snap_rational(1.0 / 3.0), Rational(1, 3));
  EXPECT_EQ(snap_rational(-2.5), Rational(-5, 2));
  EXPECT_EQ(snap_rational(0.0), Rational(0));
  EXPECT_EQ(snap_rational(M_PI), Rational(103993, 33102));
  // Out of reach of small denominators: the binary value is kept.
  EXPECT_EQ(snap_rational(1e-9, 1000), Rational(1e-9));
}

TEST(Snap, ExactifyNormalizesAndDropsDust) {
  const RationalVector e = exactify(Vector{0.5, -1e-15, 0.25, -0.5});
  EXPECT_EQ(e, (RationalVector{1, 0, Rational(1, 2), -1}));
  EXPECT_EQ(exactify(Vector{0.0, 0.0}), (RationalVector{0, 0}));
  EXPECT_EQ(to_double(e), (Vector{1.0, 0.0, 0.5, -1.0}));
}

TEST(VerifyExact, RejectsWrongShapesAndSigns) {
  const GeneralFormLp g = example1(0.0, 2.0);
  EXPECT_FALSE(verify_certificate_exact(RationalVector{1, 1}, g, CertificateKind::kPrimalInfeasibility));
  EXPECT_FALSE(verify_certificate_exact(RationalVector{-2, -1, -5}, g, CertificateKind::kPrimalInfeasibility));
  EXPECT_TRUE(verify_certificate_exact(RationalVector{2, 1, 5}, g, CertificateKind::kPrimalInfeasibility));
  EXPECT_FALSE(verify_certificate_exact(RationalVector{2, 1, 4}, g, CertificateKind::kPrimalInfeasibility));
}

}  // namespace
}  // namespace lpinfeas

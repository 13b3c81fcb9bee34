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

// Built-in instances.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"

namespace lpinfeas {

// min x0 + x1 - alpha x2
// s.t. x0 + 2 x1 <= 2,  3 x0 + x1 <= 2,  x0 + x1 >= beta,  x free.
//
// Since x0 + x1 <= 6/5 on the first two rows, beta = 2 is primal
// infeasible, and alpha != 0 makes the free x2 an unbounded direction.
inline GeneralFormLp example1(double alpha, double beta) {
  GeneralFormLp p;
  p.name = "ex1";
  p.c = {1.0, 1.0, -alpha};
  p.a = SparseMatrix::FromDense({{-1.0, -2.0, 0.0}, {-3.0, -1.0, 0.0}, {1.0, 1.0, 0.0}});
  p.b = {-2.0, -2.0, beta};
  p.l.assign(3, -kInf);
  p.u.assign(3, kInf);
  return p;
}

// Small standard-form instances used by the analysis checks.

// x0 + x1 = -1, x >= 0.
inline StandardFormLp desk_pinf1() {
  StandardFormLp p;
  p.c = {1.0, 2.0};
  p.a = SparseMatrix::FromDense({{1.0, 1.0}});
  p.b = {-1.0};
  return p;
}

// min -x0 s.t. x0 - x1 = 0, x >= 0: the ray (1, 1) is unbounded.
inline StandardFormLp desk_dinf1() {
  StandardFormLp p;
  p.c = {-1.0, 0.0};
  p.a = SparseMatrix::FromDense({{1.0, -1.0}});
  p.b = {0.0};
  return p;
}

// The two blocks above side by side, one per side.
inline StandardFormLp desk_both1() {
  StandardFormLp p;
  p.c = {1.0, 1.0, -1.0, 0.0};
  p.a = SparseMatrix::FromDense({{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, -1.0}});
  p.b = {-1.0, 0.0};
  return p;
}

// min_x max_y y^T (b - A x) + c^T x with x free and A tridiagonal
// (2, 1): every projection is inactive, so PDHG is affine from k = 0.
inline StandardFormLp bilinear_game4() {
  StandardFormLp p;
  p.c = {1.0, -1.0, 0.0, 0.5};
  p.a = SparseMatrix::FromDense(
      {{2.0, 1.0, 0.0, 0.0}, {1.0, 2.0, 1.0, 0.0}, {0.0, 1.0, 2.0, 1.0}, {0.0, 0.0, 1.0, 2.0}});
  p.b = {1.0, 0.0, 0.0, 1.0};
  p.cone.assign(4, VarCone::kFree);
  return p;
}

struct DeskInstance {
  std::string name;
  StandardFormLp lp;
};

inline std::vector<DeskInstance> desk_corpus() {
  std::vector<DeskInstance> out = {
      {"pinf1", desk_pinf1()}, {"dinf1", desk_dinf1()}, {"both1", desk_both1()}};
  const std::pair<double, double> cells[] = {{0.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}, {1.0, 1.0}};
  for (const auto& [alpha, beta] : cells) {
    out.push_back({"ex1_a" + std::to_string(static_cast<int>(alpha)) + "_b" +
                       std::to_string(static_cast<int>(beta)),
                   to_standard_form(example1(alpha, beta)).lp});
  }
  out.push_back({"bilinear4", bilinear_game4()});
  return out;
}

inline GeneralFormLp demo_instance(const std::string& name, double alpha, double beta) {
  if (name == "ex1") return example1(alpha, beta);
  if (name == "pinf1") return to_general_form(desk_pinf1());
  if (name == "dinf1") return to_general_form(desk_dinf1());
  if (name == "both1") return to_general_form(desk_both1());
  if (name == "bilinear4") return to_general_form(bilinear_game4());
  throw ConfigError("unknown demo instance '" + name + "'");
}

}  // namespace lpinfeas

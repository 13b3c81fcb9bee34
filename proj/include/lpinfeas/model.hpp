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

// LP data in two parameterizations.
//
//   Standard form:   min c^T x  s.t.  A x = b,  x in K
//   Inequality form: min c^T x  s.t.  A x >= b,  l <= x <= u
//
// K is the nonnegative orthant unless a per-variable cone is supplied; free
// and fixed-at-zero variables appear in the auxiliary problems built by the
// identifiability analysis and in bilinear games.

#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"

namespace lpinfeas {

enum class VarCone { kNonNegative, kFree, kZero };

struct StandardFormLp {
  Vector c;
  SparseMatrix a;
  Vector b;
  // Empty means every variable is nonnegative.
  std::vector<VarCone> cone;
  double objective_offset = 0.0;

  std::size_t num_vars() const { return a.cols(); }
  std::size_t num_rows() const { return a.rows(); }

  VarCone cone_of(std::size_t j) const {
    return cone.empty() ? VarCone::kNonNegative : cone[j];
  }

  void check_dimensions() const {
    if (c.size() != a.cols() || b.size() != a.rows() ||
        (!cone.empty() && cone.size() != a.cols())) {
      throw DimensionError("standard form LP: dimension mismatch");
    }
  }
};

struct GeneralFormLp {
  std::string name;
  Vector c;
  SparseMatrix a;
  Vector b;
  Vector l;
  Vector u;
  double objective_offset = 0.0;

  std::size_t num_vars() const { return a.cols(); }
  std::size_t num_rows() const { return a.rows(); }

  void check_dimensions() const {
    if (c.size() != a.cols() || b.size() != a.rows() || l.size() != a.cols() ||
        u.size() != a.cols()) {
      throw DimensionError("general form LP: dimension mismatch");
    }
  }
};

enum class VariableKind { kBoxed, kLowerOnly, kUpperOnly, kFree };

inline VariableKind variable_kind(double lower, double upper) {
  const bool has_l = std::isfinite(lower);
  const bool has_u = std::isfinite(upper);
  if (has_l && has_u) return VariableKind::kBoxed;
  if (has_l) return VariableKind::kLowerOnly;
  if (has_u) return VariableKind::kUpperOnly;
  return VariableKind::kFree;
}

inline std::vector<VariableKind> variable_kinds(const GeneralFormLp& p) {
  std::vector<VariableKind> kinds(p.num_vars());
  for (std::size_t i = 0; i < kinds.size(); ++i) kinds[i] = variable_kind(p.l[i], p.u[i]);
  return kinds;
}

// Where each inequality-form quantity lives after standardization.
struct IndexMap {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Variable {
    VariableKind kind = VariableKind::kFree;
    std::size_t column = kNone;        // x' (or x+ for free variables)
    std::size_t minus_column = kNone;  // x- for free variables
    double shift = 0.0;                // x = shift + sign * x'
    double sign = 1.0;
  };
  struct Row {
    std::size_t std_row = kNone;
    // +1 when the standard row is  a^T x - s = b,  -1 when this inequality is
    // the mirrored half of an equality pair stored once with the other half.
    double sign = 1.0;
    std::size_t slack_column = kNone;
  };

  std::vector<Variable> vars;
  std::vector<Row> rows;
  std::size_t num_std_vars = 0;
  std::size_t num_std_rows = 0;

  // Point in the original coordinates.
  Vector pull_back_point(std::span<const double> x_std) const {
    Vector x(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) x[i] = vars[i].shift + direction_entry(i, x_std);
    return x;
  }

  // Direction (recession vector) in the original coordinates: shifts drop out.
  Vector pull_back_direction(std::span<const double> d_std) const {
    Vector x(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) x[i] = direction_entry(i, d_std);
    return x;
  }

  // PDHG multipliers of the standard rows to nonnegative multipliers of the
  // original >= rows. A standard row  a^T x - s = b  with slack s >= 0 pairs
  // with y_ineq = -y_std; an equality pair splits the free multiplier.
  Vector pull_back_multipliers(std::span<const double> y_std) const {
    Vector y(rows.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double value = -rows[i].sign * y_std[rows[i].std_row];
      if (rows[i].slack_column != kNone) {
        y[i] = value;
      } else {
        y[i] = std::max(value, 0.0);
      }
    }
    return y;
  }

 private:
  double direction_entry(std::size_t i, std::span<const double> d) const {
    const Variable& v = vars[i];
    double value = v.sign * d[v.column];
    if (v.minus_column != kNone) value -= d[v.minus_column];
    return value;
  }
};

struct StandardizedLp {
  StandardFormLp lp;
  IndexMap map;
};

namespace detail {

// Rows i, j with a_j = -a_i and b_j = -b_i encode one equality.
inline std::vector<std::size_t> find_mirror_rows(const GeneralFormLp& p) {
  const std::size_t m = p.num_rows();
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(m);
  for (const Triplet& t : p.a.triplets()) rows[t.row].emplace_back(t.col, t.value);
  std::map<std::vector<std::pair<std::size_t, double>>, std::vector<std::size_t>> by_pattern;
  for (std::size_t i = 0; i < m; ++i) {
    auto key = rows[i];
    key.emplace_back(static_cast<std::size_t>(-1), p.b[i]);
    by_pattern[key].push_back(i);
  }
  std::vector<std::size_t> mirror(m, IndexMap::kNone);
  for (std::size_t i = 0; i < m; ++i) {
    if (mirror[i] != IndexMap::kNone || rows[i].empty()) continue;
    auto key = rows[i];
    for (auto& entry : key) entry.second = -entry.second;
    key.emplace_back(static_cast<std::size_t>(-1), -p.b[i]);
    auto it = by_pattern.find(key);
    if (it == by_pattern.end()) continue;
    for (std::size_t j : it->second) {
      if (j != i && mirror[j] == IndexMap::kNone) {
        mirror[i] = j;
        mirror[j] = i;
        break;
      }
    }
  }
  return mirror;
}

}  // namespace detail

// Column layout of the result: one column per original variable (x' or x+),
// then x- for each free variable, then one slack per inequality row that is
// not half of a mirrored equality pair, then one slack per boxed variable.
// Row layout: the original rows (mirrored pairs collapse onto the first row
// of the pair), then one row x' + s = u - l per boxed variable.
inline StandardizedLp to_standard_form(const GeneralFormLp& p) {
  p.check_dimensions();
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(p.l[i]) || std::isnan(p.u[i]) || p.l[i] > p.u[i]) {
      throw ModelError("variable " + std::to_string(i) + ": lower bound exceeds upper bound");
    }
  }

  StandardizedLp out;
  IndexMap& map = out.map;
  map.vars.resize(n);
  map.rows.resize(m);

  std::size_t next_col = n;
  double offset = p.objective_offset;
  Vector shift_b(m, 0.0);  // A * shift, subtracted from b
  std::vector<std::size_t> boxed;
  for (std::size_t i = 0; i < n; ++i) {
    IndexMap::Variable& v = map.vars[i];
    v.kind = variable_kind(p.l[i], p.u[i]);
    v.column = i;
    switch (v.kind) {
      case VariableKind::kBoxed:
        boxed.push_back(i);
        [[fallthrough]];
      case VariableKind::kLowerOnly:
        v.shift = p.l[i];
        v.sign = 1.0;
        break;
      case VariableKind::kUpperOnly:
        v.shift = p.u[i];
        v.sign = -1.0;
        break;
      case VariableKind::kFree:
        v.minus_column = next_col++;
        break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double s = map.vars[i].shift;
    if (s == 0.0) continue;
    offset += p.c[i] * s;
    for (const auto& [row, value] : p.a.column(i)) shift_b[row] += value * s;
  }

  const std::vector<std::size_t> mirror = detail::find_mirror_rows(p);
  std::size_t next_row = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (mirror[r] != IndexMap::kNone && mirror[r] < r) {
      map.rows[r].std_row = map.rows[mirror[r]].std_row;
      map.rows[r].sign = -1.0;
      continue;
    }
    map.rows[r].std_row = next_row++;
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (mirror[r] == IndexMap::kNone) map.rows[r].slack_column = next_col++;
  }
  const std::size_t first_box_row = next_row;
  std::vector<std::size_t> box_slack(boxed.size());
  for (std::size_t k = 0; k < boxed.size(); ++k) box_slack[k] = next_col++;
  const std::size_t n_std = next_col;
  const std::size_t m_std = first_box_row + boxed.size();

  std::vector<Triplet> entries;
  Vector c_std(n_std, 0.0);
  Vector b_std(m_std, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (map.rows[r].sign > 0) b_std[map.rows[r].std_row] = p.b[r] - shift_b[r];
  }
  for (const Triplet& t : p.a.triplets()) {
    const IndexMap::Row& row = map.rows[t.row];
    if (row.sign < 0) continue;
    const IndexMap::Variable& v = map.vars[t.col];
    entries.push_back({row.std_row, v.column, v.sign * t.value});
    if (v.minus_column != IndexMap::kNone) entries.push_back({row.std_row, v.minus_column, -t.value});
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (map.rows[r].slack_column != IndexMap::kNone) {
      entries.push_back({map.rows[r].std_row, map.rows[r].slack_column, -1.0});
    }
  }
  for (std::size_t k = 0; k < boxed.size(); ++k) {
    const std::size_t i = boxed[k];
    const std::size_t row = first_box_row + k;
    entries.push_back({row, map.vars[i].column, 1.0});
    entries.push_back({row, box_slack[k], 1.0});
    b_std[row] = p.u[i] - p.l[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const IndexMap::Variable& v = map.vars[i];
    c_std[v.column] = v.sign * p.c[i];
    if (v.minus_column != IndexMap::kNone) c_std[v.minus_column] = -p.c[i];
  }

  out.lp.c = std::move(c_std);
  out.lp.a = SparseMatrix(m_std, n_std, std::move(entries));
  out.lp.b = std::move(b_std);
  out.lp.objective_offset = offset;
  map.num_std_vars = n_std;
  map.num_std_rows = m_std;
  return out;
}

// Each equality becomes the pair a^T x >= b, -a^T x >= -b. Only nonnegative
// cones are representable; free variables get infinite bounds and fixed
// variables l = u = 0.
inline GeneralFormLp to_general_form(const StandardFormLp& p) {
  p.check_dimensions();
  const std::size_t n = p.num_vars();
  const std::size_t m = p.num_rows();
  GeneralFormLp g;
  g.c = p.c;
  g.objective_offset = p.objective_offset;
  g.l.assign(n, 0.0);
  g.u.assign(n, kInf);
  for (std::size_t j = 0; j < n; ++j) {
    if (p.cone_of(j) == VarCone::kFree) g.l[j] = -kInf;
    if (p.cone_of(j) == VarCone::kZero) g.u[j] = 0.0;
  }
  std::vector<Triplet> entries;
  for (const Triplet& t : p.a.triplets()) {
    entries.push_back({2 * t.row, t.col, t.value});
    entries.push_back({2 * t.row + 1, t.col, -t.value});
  }
  g.a = SparseMatrix(2 * m, n, std::move(entries));
  g.b.resize(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    g.b[2 * i] = p.b[i];
    g.b[2 * i + 1] = -p.b[i];
  }
  return g;
}

struct ValidationIssue {
  enum class Severity { kError, kWarning };
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const {
    for (const auto& i : issues) {
      if (i.severity == ValidationIssue::Severity::kError) return false;
    }
    return true;
  }
  bool empty() const { return issues.empty(); }
};

namespace detail {

inline void check_finite(const Vector& v, const std::string& what, ValidationReport& report) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      report.issues.push_back({ValidationIssue::Severity::kError,
                               what + "[" + std::to_string(i) + "] is not finite"});
    }
  }
}

inline void check_lines(const SparseMatrix& a, ValidationReport& report) {
  std::vector<std::size_t> row_count(a.rows(), 0);
  for (const Triplet& t : a.triplets()) {
    ++row_count[t.row];
    if (!std::isfinite(t.value)) {
      report.issues.push_back({ValidationIssue::Severity::kError,
                               "A(" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                                   ") is not finite"});
    }
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (row_count[i] == 0) {
      report.issues.push_back({ValidationIssue::Severity::kWarning,
                               "row " + std::to_string(i) + " is empty"});
    }
  }
}

}  // namespace detail

inline ValidationReport validate(const StandardFormLp& p) {
  ValidationReport report;
  if (p.c.size() != p.a.cols() || p.b.size() != p.a.rows() ||
      (!p.cone.empty() && p.cone.size() != p.a.cols())) {
    report.issues.push_back({ValidationIssue::Severity::kError, "dimension mismatch"});
    return report;
  }
  detail::check_finite(p.c, "c", report);
  detail::check_finite(p.b, "b", report);
  detail::check_lines(p.a, report);
  for (std::size_t j = 0; j < p.a.cols(); ++j) {
    if (p.a.column(j).empty() && p.c[j] != 0.0) {
      report.issues.push_back({ValidationIssue::Severity::kWarning,
                               "column " + std::to_string(j) +
                                   " is empty with nonzero cost (unbounded risk)"});
    }
  }
  return report;
}

inline ValidationReport validate(const GeneralFormLp& p) {
  ValidationReport report;
  if (p.c.size() != p.a.cols() || p.b.size() != p.a.rows() || p.l.size() != p.a.cols() ||
      p.u.size() != p.a.cols()) {
    report.issues.push_back({ValidationIssue::Severity::kError, "dimension mismatch"});
    return report;
  }
  detail::check_finite(p.c, "c", report);
  detail::check_finite(p.b, "b", report);
  detail::check_lines(p.a, report);
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    if (std::isnan(p.l[j]) || std::isnan(p.u[j]) || p.l[j] == kInf || p.u[j] == -kInf) {
      report.issues.push_back({ValidationIssue::Severity::kError,
                               "variable " + std::to_string(j) + " has an invalid bound"});
    } else if (p.l[j] > p.u[j]) {
      report.issues.push_back({ValidationIssue::Severity::kError,
                               "variable " + std::to_string(j) + " has l > u"});
    }
    if (p.a.column(j).empty() && p.c[j] != 0.0) {
      report.issues.push_back({ValidationIssue::Severity::kWarning,
                               "column " + std::to_string(j) +
                                   " is empty with nonzero cost (unbounded risk)"});
    }
  }
  return report;
}

}  // namespace lpinfeas

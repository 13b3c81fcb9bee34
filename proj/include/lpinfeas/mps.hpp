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

// MPS reader and writer. Free (whitespace separated) format is tried first;
// a line falls back to the fixed column windows 2-3, 5-12, 15-22, 25-36,
// 40-47, 50-61 only when its tokens do not fit the section grammar.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"

namespace lpinfeas {

struct MpsRow {
  char type = 'N';  // N, L, G or E
  std::string name;
};

struct MpsEntry {
  std::size_t row;  // index into MpsDocument::rows
  std::size_t col;
  double value;

  bool operator==(const MpsEntry&) const = default;
};

struct MpsBound {
  std::string type;  // LO, UP, FX, FR, MI, PL
  std::size_t col;
  double value = 0.0;

  bool operator==(const MpsBound&) const = default;
};

struct MpsDocument {
  std::string name;
  std::vector<MpsRow> rows;
  std::size_t objective_row = 0;
  std::vector<std::string> columns;
  std::vector<MpsEntry> entries;
  std::map<std::size_t, double> rhs;
  std::map<std::size_t, double> ranges;
  std::vector<MpsBound> bounds;

  bool operator==(const MpsDocument& o) const {
    if (name != o.name || objective_row != o.objective_row || columns != o.columns ||
        entries != o.entries || rhs != o.rhs || ranges != o.ranges || bounds != o.bounds ||
        rows.size() != o.rows.size()) {
      return false;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].type != o.rows[i].type || rows[i].name != o.rows[i].name) return false;
    }
    return true;
  }
};

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Fixed-format fields 1..6, empty strings dropped from the tail. Field 1
// holds the row or bound type and is blank on COLUMNS, RHS and RANGES lines.
inline std::vector<std::string> split_fixed(std::string_view line) {
  static constexpr std::pair<std::size_t, std::size_t> kWindows[] = {
      {1, 3}, {4, 12}, {14, 22}, {24, 36}, {39, 47}, {49, 61}};
  std::vector<std::string> out;
  for (const auto& [b, e] : kWindows) {
    if (b >= line.size()) break;
    out.push_back(trim(line.substr(b, std::min(e, line.size()) - b)));
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

inline std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  // from_chars rejects a leading '+', which some writers emit.
  std::string_view view = s;
  if (view.front() == '+') view.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
  if (ec != std::errc() || ptr != view.data() + view.size()) {
    const std::string u = upper(view);
    if (u == "INF" || u == "INFINITY" || u == "1E+30") return kInf;
    if (u == "-INF" || u == "-INFINITY") return -kInf;
    return std::nullopt;
  }
  if (value >= 1e30) return kInf;
  if (value <= -1e30) return -kInf;
  return value;
}

class MpsReader {
 public:
  MpsDocument read(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    enum class Section { kNone, kName, kRows, kColumns, kRhs, kRanges, kBounds, kEnd };
    Section section = Section::kNone;
    bool seen_objective = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::string stripped = trim(line);
      if (stripped.empty() || line[0] == '*') continue;
      if (!std::isspace(static_cast<unsigned char>(line[0]))) {
        auto tokens = split_ws(line);
        const std::string key = upper(tokens[0]);
        if (key == "NAME") {
          doc_.name = tokens.size() > 1 ? trim(std::string_view(line).substr(4)) : "";
          section = Section::kName;
        } else if (key == "ROWS") {
          section = Section::kRows;
        } else if (key == "COLUMNS") {
          section = Section::kColumns;
        } else if (key == "RHS") {
          section = Section::kRhs;
        } else if (key == "RANGES") {
          section = Section::kRanges;
        } else if (key == "BOUNDS") {
          section = Section::kBounds;
        } else if (key == "ENDATA") {
          section = Section::kEnd;
          break;
        } else {
          throw ParseError(line_no, "unknown section '" + tokens[0] + "'");
        }
        continue;
      }
      switch (section) {
        case Section::kRows:
          read_row(line, line_no, seen_objective);
          break;
        case Section::kColumns:
          read_column(line, line_no);
          break;
        case Section::kRhs:
          read_rhs_like(line, line_no, doc_.rhs, "RHS");
          break;
        case Section::kRanges:
          read_rhs_like(line, line_no, doc_.ranges, "RANGES");
          break;
        case Section::kBounds:
          read_bound(line, line_no);
          break;
        default:
          throw ParseError(line_no, "data line outside of a section");
      }
    }
    if (section != Section::kEnd) throw ParseError(line_no, "missing ENDATA");
    if (!seen_objective) throw ParseError(line_no, "no objective (N) row");
    return std::move(doc_);
  }

 private:
  void read_row(const std::string& line, std::size_t line_no, bool& seen_objective) {
    auto tokens = split_ws(line);
    if (tokens.size() != 2) tokens = split_fixed(line);
    if (tokens.size() != 2) throw ParseError(line_no, "ROWS entry needs a type and a name");
    const std::string type = upper(tokens[0]);
    if (type.size() != 1 || std::string("NLGE").find(type[0]) == std::string::npos) {
      throw ParseError(line_no, "bad row type '" + tokens[0] + "'");
    }
    if (row_index_.count(tokens[1])) {
      throw ParseError(line_no, "duplicate row name '" + tokens[1] + "'");
    }
    if (type[0] == 'N' && !seen_objective) {
      doc_.objective_row = doc_.rows.size();
      seen_objective = true;
    }
    row_index_[tokens[1]] = doc_.rows.size();
    doc_.rows.push_back({type[0], tokens[1]});
  }

  // Fixed-format fields 2..6 of a COLUMNS, RHS or RANGES line.
  static std::vector<std::string> data_fields(const std::string& line) {
    auto fields = split_fixed(line);
    if (!fields.empty()) fields.erase(fields.begin());
    return fields;
  }

  std::optional<std::size_t> find_row(const std::string& name) const {
    auto it = row_index_.find(name);
    if (it == row_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_row(const std::string& name, std::size_t line_no) const {
    auto r = find_row(name);
    if (!r) throw ParseError(line_no, "unknown row '" + name + "'");
    return *r;
  }

  // Pairs (row, value) starting at `first`; true iff the tokens fit.
  bool pairs_fit(const std::vector<std::string>& t, std::size_t first) const {
    if (t.size() <= first || (t.size() - first) % 2 != 0) return false;
    for (std::size_t i = first; i < t.size(); i += 2) {
      if (!find_row(t[i]) || !parse_number(t[i + 1])) return false;
    }
    return true;
  }

  void read_column(const std::string& line, std::size_t line_no) {
    auto tokens = split_ws(line);
    for (const auto& t : tokens) {
      if (upper(t) == "'MARKER'") throw ParseError(line_no, "integer markers are not supported");
    }
    if (!pairs_fit(tokens, 1)) {
      auto fixed = data_fields(line);
      if (!pairs_fit(fixed, 1)) {
        throw ParseError(line_no, "malformed COLUMNS entry (unknown row or bad number)");
      }
      tokens = std::move(fixed);
    }
    const std::string& col_name = tokens[0];
    std::size_t col;
    auto it = col_index_.find(col_name);
    if (it == col_index_.end()) {
      col = doc_.columns.size();
      col_index_[col_name] = col;
      doc_.columns.push_back(col_name);
    } else {
      col = it->second;
    }
    for (std::size_t i = 1; i < tokens.size(); i += 2) {
      const std::size_t row = *find_row(tokens[i]);
      if (!seen_entries_.insert({row, col}).second) {
        throw ParseError(line_no, "duplicate entry for row '" + tokens[i] + "' in column '" +
                                      col_name + "'");
      }
      doc_.entries.push_back({row, col, *parse_number(tokens[i + 1])});
    }
  }

  void read_rhs_like(const std::string& line, std::size_t line_no,
                     std::map<std::size_t, double>& target, const char* what) {
    auto tokens = split_ws(line);
    std::size_t first = tokens.size() % 2 == 1 ? 1 : 0;
    if (!pairs_fit(tokens, first)) {
      auto fixed = data_fields(line);
      if (pairs_fit(fixed, 1)) {
        tokens = std::move(fixed);
        first = 1;
      } else {
        // Report the first unresolved row name when there is one.
        for (std::size_t i = first; i + 1 < tokens.size(); i += 2) require_row(tokens[i], line_no);
        throw ParseError(line_no, std::string("malformed ") + what + " entry");
      }
    }
    for (std::size_t i = first; i < tokens.size(); i += 2) {
      target[*find_row(tokens[i])] = *parse_number(tokens[i + 1]);
    }
  }

  void read_bound(const std::string& line, std::size_t line_no) {
    auto tokens = split_ws(line);
    if (tokens.empty()) return;
    const std::string type = upper(tokens[0]);
    if (type == "BV" || type == "LI" || type == "UI" || type == "SC") {
      throw ParseError(line_no, "integer bound type '" + type + "' is not supported");
    }
    static const std::vector<std::string> kValued = {"LO", "UP", "FX"};
    static const std::vector<std::string> kBare = {"FR", "MI", "PL"};
    const bool valued = std::find(kValued.begin(), kValued.end(), type) != kValued.end();
    const bool bare = std::find(kBare.begin(), kBare.end(), type) != kBare.end();
    if (!valued && !bare) throw ParseError(line_no, "unknown bound type '" + tokens[0] + "'");

    auto resolve = [&](const std::vector<std::string>& t) -> std::optional<MpsBound> {
      // Layouts: TYPE [set] COL [VALUE]; a value on FR/MI/PL is ignored.
      for (std::size_t col_pos : {std::size_t{2}, std::size_t{1}}) {
        if (t.size() <= col_pos) continue;
        auto it = col_index_.find(t[col_pos]);
        if (it == col_index_.end()) continue;
        const std::size_t rest = t.size() - col_pos - 1;
        if (valued && rest == 1) {
          auto v = parse_number(t[col_pos + 1]);
          if (v) return MpsBound{type, it->second, *v};
        } else if (bare && rest <= 1) {
          return MpsBound{type, it->second, 0.0};
        }
      }
      return std::nullopt;
    };
    auto bound = resolve(tokens);
    if (!bound) bound = resolve(split_fixed(line));
    if (!bound) throw ParseError(line_no, "malformed BOUNDS entry (unknown column or bad value)");
    doc_.bounds.push_back(*bound);
  }

  MpsDocument doc_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::unordered_map<std::string, std::size_t> col_index_;
  struct PairHash {
    std::size_t operator()(const std::pair<std::size_t, std::size_t>& p) const {
      return std::hash<std::size_t>()(p.first * 1000003u + p.second);
    }
  };
  std::unordered_set<std::pair<std::size_t, std::size_t>, PairHash> seen_entries_;
};

}  // namespace detail

inline MpsDocument parse_mps(std::istream& in) { return detail::MpsReader().read(in); }

inline MpsDocument parse_mps(const std::string& text) {
  std::istringstream in(text);
  return parse_mps(in);
}

inline MpsDocument parse_mps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_mps(in);
}

// Writes free-format MPS; parse_mps(write_mps(d)) == d.
inline std::string write_mps(const MpsDocument& doc) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "NAME " << doc.name << "\nROWS\n";
  for (const MpsRow& r : doc.rows) out << " " << r.type << " " << r.name << "\n";
  out << "COLUMNS\n";
  std::vector<MpsEntry> sorted = doc.entries;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MpsEntry& a, const MpsEntry& b) { return a.col < b.col; });
  std::vector<bool> written(doc.columns.size(), false);
  for (const MpsEntry& e : sorted) {
    out << " " << doc.columns[e.col] << " " << doc.rows[e.row].name << " " << e.value << "\n";
    written[e.col] = true;
  }
  for (std::size_t j = 0; j < doc.columns.size(); ++j) {
    // A column without entries still needs a line to be declared.
    if (!written[j]) out << " " << doc.columns[j] << " " << doc.rows[doc.objective_row].name << " 0\n";
  }
  auto number = [](double v) {
    std::ostringstream s;
    s << std::setprecision(17);
    if (v == kInf) {
      s << "1e+30";
    } else if (v == -kInf) {
      s << "-1e+30";
    } else {
      s << v;
    }
    return s.str();
  };
  if (!doc.rhs.empty()) {
    out << "RHS\n";
    for (const auto& [row, v] : doc.rhs) out << " RHS " << doc.rows[row].name << " " << number(v) << "\n";
  }
  if (!doc.ranges.empty()) {
    out << "RANGES\n";
    for (const auto& [row, v] : doc.ranges) out << " RNG " << doc.rows[row].name << " " << number(v) << "\n";
  }
  if (!doc.bounds.empty()) {
    out << "BOUNDS\n";
    for (const MpsBound& b : doc.bounds) {
      out << " " << b.type << " BND " << doc.columns[b.col];
      if (b.type == "LO" || b.type == "UP" || b.type == "FX") out << " " << number(b.value);
      out << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

// Rows become >= rows: G as is, L negated, E and ranged rows as two
// opposing rows. The objective constant is minus the RHS of the objective
// row. An UP bound below zero on a column whose lower bound was never set
// makes the lower bound -inf, as most readers do.
inline GeneralFormLp to_general_form(const MpsDocument& doc) {
  const std::size_t n = doc.columns.size();
  GeneralFormLp p;
  p.name = doc.name;
  p.c.assign(n, 0.0);
  p.l.assign(n, 0.0);
  p.u.assign(n, kInf);

  std::vector<bool> lower_set(n, false);
  for (const MpsBound& b : doc.bounds) {
    const std::size_t j = b.col;
    if (b.type == "LO") {
      p.l[j] = b.value;
      lower_set[j] = true;
    } else if (b.type == "UP") {
      p.u[j] = b.value;
      if (b.value < 0.0 && !lower_set[j] && p.l[j] == 0.0) p.l[j] = -kInf;
    } else if (b.type == "FX") {
      p.l[j] = p.u[j] = b.value;
      lower_set[j] = true;
    } else if (b.type == "FR") {
      p.l[j] = -kInf;
      p.u[j] = kInf;
      lower_set[j] = true;
    } else if (b.type == "MI") {
      p.l[j] = -kInf;
      lower_set[j] = true;
    } else if (b.type == "PL") {
      p.u[j] = kInf;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (p.l[j] > p.u[j]) {
      throw ModelError("column '" + doc.columns[j] + "': conflicting bounds");
    }
  }

  // Each constraint row maps to up to two output rows with a sign.
  struct Out {
    std::size_t index;
    double sign;
  };
  std::vector<std::vector<Out>> row_out(doc.rows.size());
  Vector b;
  auto emit = [&](std::size_t r, double sign, double rhs) {
    row_out[r].push_back({b.size(), sign});
    b.push_back(sign * rhs);
  };
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const MpsRow& row = doc.rows[r];
    if (row.type == 'N') continue;
    const double rhs = doc.rhs.count(r) ? doc.rhs.at(r) : 0.0;
    auto range_it = doc.ranges.find(r);
    if (range_it == doc.ranges.end()) {
      if (row.type == 'G' || row.type == 'E') emit(r, 1.0, rhs);
      if (row.type == 'L' || row.type == 'E') emit(r, -1.0, rhs);
      continue;
    }
    const double rv = range_it->second;
    double lo = rhs;
    double hi = rhs;
    if (row.type == 'G') {
      hi = rhs + std::abs(rv);
    } else if (row.type == 'L') {
      lo = rhs - std::abs(rv);
    } else if (rv > 0) {
      hi = rhs + rv;
    } else {
      lo = rhs + rv;
    }
    emit(r, 1.0, lo);
    emit(r, -1.0, hi);
  }

  std::vector<Triplet> triplets;
  for (const MpsEntry& e : doc.entries) {
    if (e.row == doc.objective_row) {
      p.c[e.col] += e.value;
      continue;
    }
    for (const Out& o : row_out[e.row]) triplets.push_back({o.index, e.col, o.sign * e.value});
  }
  p.a = SparseMatrix(b.size(), n, std::move(triplets));
  p.b = std::move(b);
  if (doc.rhs.count(doc.objective_row)) p.objective_offset = -doc.rhs.at(doc.objective_row);
  return p;
}

}  // namespace lpinfeas

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

// Native JSON instances, trace CSV and result JSON.
//
// Instance schema (field names follow GeneralFormLp):
//   {"name": "...", "c": [...], "b": [...], "l": [...], "u": [...],
//    "objective_offset": 0,
//    "a": {"rows": m, "cols": n, "entries": [[i, j, v], ...]}}
// Infinite bounds are written as the strings "inf" and "-inf". "l" and "u"
// default to 0 and +inf.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lpinfeas/error.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/mps.hpp"
#include "lpinfeas/solver.hpp"

namespace lpinfeas {

using Json = nlohmann::json;

namespace detail {

inline double json_number(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ModelError(what + ": expected a number or \"inf\"/\"-inf\"");
}

inline Json json_value(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  return Json(v);
}

inline Vector json_vector(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ModelError(what + ": expected an array");
  Vector out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(json_number(e, what));
  return out;
}

inline Json json_array(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(json_value(x));
  return out;
}

// 1-based line of a byte offset, for parse error messages.
inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace detail

inline GeneralFormLp instance_from_json(const Json& j) {
  if (!j.is_object()) throw ModelError("instance: expected a JSON object");
  GeneralFormLp p;
  p.name = j.value("name", std::string("instance"));
  p.c = detail::json_vector(j.at("c"), "c");
  p.b = detail::json_vector(j.at("b"), "b");
  const std::size_t n = p.c.size();
  p.l = j.contains("l") ? detail::json_vector(j["l"], "l") : Vector(n, 0.0);
  p.u = j.contains("u") ? detail::json_vector(j["u"], "u") : Vector(n, kInf);
  p.objective_offset = j.contains("objective_offset")
                           ? detail::json_number(j["objective_offset"], "objective_offset")
                           : 0.0;
  const Json& a = j.at("a");
  const auto rows = a.at("rows").get<std::size_t>();
  const auto cols = a.at("cols").get<std::size_t>();
  std::vector<Triplet> entries;
  for (const Json& e : a.at("entries")) {
    if (!e.is_array() || e.size() != 3) throw ModelError("a.entries: expected [i, j, v]");
    entries.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), detail::json_number(e[2], "a")});
  }
  p.a = SparseMatrix(rows, cols, std::move(entries));
  p.check_dimensions();
  return p;
}

inline Json instance_to_json(const GeneralFormLp& p) {
  Json entries = Json::array();
  for (const Triplet& t : p.a.triplets()) entries.push_back({t.row, t.col, t.value});
  return Json{{"name", p.name},
              {"c", detail::json_array(p.c)},
              {"b", detail::json_array(p.b)},
              {"l", detail::json_array(p.l)},
              {"u", detail::json_array(p.u)},
              {"objective_offset", p.objective_offset},
              {"a", {{"rows", p.a.rows()}, {"cols", p.a.cols()}, {"entries", entries}}}};
}

inline GeneralFormLp parse_instance_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const Json::exception& e) {
    throw ModelError(std::string("instance: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool looks_like_json(const std::string& path, const std::string& text) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return true;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

// .json (or a leading '{') selects the native format, anything else MPS.
inline GeneralFormLp load_instance(const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(path, text)) {
    GeneralFormLp p = parse_instance_json(text);
    return p;
  }
  GeneralFormLp p = to_general_form(parse_mps(text));
  return p;
}

// --- trace CSV -----------------------------------------------------------------

inline constexpr std::string_view kTraceHeader = "k,seq,scaled_err,obj_term,kkt,active_changed,ms";

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(std::string_view s, std::size_t line) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(line, "bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

// scaled_err is left empty whenever the objective term is not positive.
inline void write_trace_row(std::ostream& out, const TraceRecord& r) {
  out << r.k << ',' << r.seq << ',';
  if (r.obj_term > 0.0) out << detail::format_double(r.scaled_err);
  out << ',' << detail::format_double(r.obj_term) << ',' << detail::format_double(r.kkt) << ','
      << (r.active_changed ? 1 : 0) << ',' << detail::format_double(r.ms) << '\n';
}

inline void write_trace_csv(std::ostream& out, std::span<const TraceRecord> records) {
  out << kTraceHeader << '\n';
  for (const TraceRecord& r : records) write_trace_row(out, r);
}

// Empty scaled_err reads back as +inf, the value the checks carry when the
// objective term is not positive.
inline std::vector<TraceRecord> parse_trace_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kTraceHeader) throw ParseError(1, "missing trace header");
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 7) throw ParseError(line_no, "expected 7 fields");
    TraceRecord r;
    r.k = static_cast<std::size_t>(detail::parse_double(f[0], line_no));
    r.seq = std::string(f[1]);
    r.scaled_err = f[2].empty() ? kInf : detail::parse_double(f[2], line_no);
    r.obj_term = detail::parse_double(f[3], line_no);
    r.kkt = detail::parse_double(f[4], line_no);
    if (f[5] != "0" && f[5] != "1") throw ParseError(line_no, "active_changed must be 0 or 1");
    r.active_changed = f[5] == "1";
    r.ms = detail::parse_double(f[6], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

// --- result JSON ---------------------------------------------------------------

inline Json certificate_json(const FoundCertificate& f, bool primal_side) {
  Json j{{"sequence", std::string(sequence_name(f.candidate.kind))},
         {"k", f.candidate.k},
         {"scaled_err", detail::json_value(f.report.scaled_error)},
         {"obj_term", f.report.objective_term}};
  if (primal_side) {
    j["y"] = detail::json_array(f.candidate.y_part);
    if (!f.candidate.r_part.empty()) j["r"] = detail::json_array(f.candidate.r_part);
  } else {
    j["x"] = detail::json_array(f.candidate.x_part);
  }
  return j;
}

inline Json result_json(const SolveOutcome& out) {
  Json j{{"status", std::string(status_name(out.status))},
         {"iterations", out.iterations},
         {"eta", out.steps.eta},
         {"tau", out.steps.tau},
         {"elapsed_ms", out.elapsed_ms},
         {"last_active_change", out.last_active_change},
         {"kkt",
          {{"primal", out.kkt.primal},
           {"dual", out.kkt.dual},
           {"gap", out.kkt.gap},
           {"primal_objective", detail::json_value(out.kkt.primal_objective)},
           {"dual_objective", detail::json_value(out.kkt.dual_objective)}}},
         {"x", detail::json_array(out.state.x)},
         {"y", detail::json_array(out.state.y)}};
  j["primal_certificate"] = out.primal ? certificate_json(*out.primal, true) : Json(nullptr);
  j["dual_certificate"] = out.dual ? certificate_json(*out.dual, false) : Json(nullptr);
  return j;
}

}  // namespace lpinfeas

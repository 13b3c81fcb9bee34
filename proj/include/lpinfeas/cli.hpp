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

// Subcommands behind tools/lpinfeas_cli.cpp, kept here so tests can drive
// them with string streams.

#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "lpinfeas/analysis.hpp"
#include "lpinfeas/demo.hpp"
#include "lpinfeas/error.hpp"
#include "lpinfeas/io.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/oracle.hpp"
#include "lpinfeas/solver.hpp"

namespace lpinfeas::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitNumerical = 3,
  kExitIterationLimit = 4,
};

inline int exit_code_for(SolveStatus s) {
  return s == SolveStatus::kIterationLimit ? kExitIterationLimit : kExitOk;
}

struct InstanceSource {
  std::string path;
  std::string demo;  // takes precedence over path
  double alpha = 0.0;
  double beta = 1.0;
};

struct SolveOptions {
  InstanceSource source;
  std::size_t max_iters = 1'000'000;
  double eps = 1e-8;
  double kkt_tol = 1e-8;
  double step_factor = 0.9;
  std::size_t check_interval = 40;
  std::string trace_out;
  std::string json_out;
  std::uint64_t seed = 0;  // reserved
};

struct AnalyzeOptions {
  InstanceSource source;
  std::size_t iterations = 100000;
  double step_factor = 0.9;
  std::string json_out;
};

namespace detail {

inline GeneralFormLp load_general(const InstanceSource& src) {
  if (!src.demo.empty()) return demo_instance(src.demo, src.alpha, src.beta);
  if (src.path.empty()) throw ConfigError("no instance given: pass a path or --demo");
  try {
    return load_instance(src.path);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    // Structural problems in the file (bad bounds, out-of-range entries)
    // are reported as input errors too.
    throw ParseError(0, e.what());
  }
}

// Desk instances are analyzed in their own standard form; everything else
// goes through the general-to-standard conversion.
inline StandardFormLp load_standard(const InstanceSource& src) {
  if (!src.demo.empty()) {
    for (const DeskInstance& d : desk_corpus()) {
      if (d.name == src.demo) return d.lp;
    }
  }
  return to_standard_form(load_general(src)).lp;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << j.dump(2) << '\n';
}

inline Json fit_json(const RateFit& f) {
  return {{"slope", f.slope}, {"rate", f.rate}, {"r2", f.r2}, {"samples", f.samples.size()}};
}

}  // namespace detail

inline Json analysis_json(const AnalysisReport& r) {
  using lpinfeas::detail::json_array;
  using lpinfeas::detail::json_value;
  const std::size_t n = r.n;
  const std::span<const double> v(r.ray.v);
  Json j{{"n", r.n},
         {"m", r.m},
         {"eta", r.steps.eta},
         {"tau", r.steps.tau},
         {"iterations", r.iterations},
         {"oracle_cell", r.oracle_cell ? Json(std::string(cell_name(*r.oracle_cell))) : Json(nullptr)},
         {"freeze",
          {{"K", r.freeze.K}, {"frozen", r.freeze.frozen}, {"not_observed", r.freeze.not_observed},
           {"changes", r.active_changes}}},
         {"v_estimate",
          {{"disagreement", r.v_estimate.disagreement},
           {"difference_spread", r.v_estimate.difference_spread},
           {"flagged", r.v_estimate.flagged}}},
         {"ray",
          {{"v_x_norm", norm2(v.subspan(0, n))},
           {"v_y_norm", norm2(v.subspan(n))},
           {"residual", r.ray.residual},
           {"ray_residual", r.ray.ray_residual},
           {"rounds", r.ray.rounds},
           {"converged", r.ray.converged},
           {"v", json_array(r.ray.v)}}},
         {"partition",
          {{"B", r.ray.partition.B.size()}, {"N1", r.ray.partition.N1.size()},
           {"N2", r.ray.partition.N2.size()}}},
         {"farkas",
          {{"primal_gap", r.farkas.primal_gap},
           {"primal_scale", r.farkas.primal_scale},
           {"dual_gap", r.farkas.dual_gap},
           {"dual_scale", r.farkas.dual_scale}}},
         {"shift_identity_deviation", r.shift_deviation},
         {"iterate_slope", r.iterate_fit.available ? Json(r.iterate_fit.slope) : Json(nullptr)},
         {"average_slope", r.average_fit.available ? Json(r.average_fit.slope) : Json(nullptr)},
         {"rate_errors_at_floor", r.iterate_fit.at_floor && r.average_fit.at_floor},
         {"theorem1_excess", json_value(r.theorem1_excess)},
         {"notices", r.notices}};
  if (r.spectral_skipped) {
    j["spectral"] = {{"skipped", true}};
  } else {
    j["spectral"] = {{"skipped", false},
                     {"support", r.phase.support.size()},
                     {"mu", r.phase.mu},
                     {"lower_rate", r.phase.lower_rate},
                     {"sigma", r.phase.sigma_list},
                     {"q_inf_defect", r.q_inf_defect},
                     {"rho_transient", r.rho_transient}};
    const Theorem5Report& t = r.theorem5;
    j["theorem5"] = {{"skipped", t.skipped}, {"notice", t.notice}};
    if (!t.skipped) {
      j["theorem5"].update({{"difference", detail::fit_json(t.difference_fit)},
                            {"iterate", detail::fit_json(t.iterate_fit)},
                            {"average", detail::fit_json(t.average_fit)},
                            {"rate_in_bracket", t.rate_in_bracket},
                            {"differences_faster", t.differences_faster},
                            {"passed", t.passed()}});
    }
  }
  return j;
}

inline int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  GeneralFormLp p;
  try {
    p = detail::load_general(opt.source);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  PdhgConfig cfg;
  cfg.max_iters = opt.max_iters;
  cfg.eps_pinf = opt.eps;
  cfg.eps_dinf = opt.eps;
  cfg.kkt_tol = opt.kkt_tol;
  cfg.step_factor = opt.step_factor;
  cfg.check_interval = opt.check_interval;
  std::ofstream trace;
  if (!opt.trace_out.empty()) {
    trace.open(opt.trace_out);
    if (!trace) {
      err << "error: cannot write '" << opt.trace_out << "'\n";
      return kExitUsage;
    }
    trace << kTraceHeader << '\n';
    cfg.trace_sink = [&trace](const TraceRecord& r) { write_trace_row(trace, r); };
  }

  SolveOutcome res;
  try {
    res = run(p, cfg);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  out << status_name(res.status) << '\n';
  out << "iterations " << res.iterations << "  time_ms " << std::fixed << std::setprecision(2)
      << res.elapsed_ms << std::defaultfloat << '\n';
  if (res.primal) {
    out << "primal certificate: " << sequence_name(res.primal->candidate.kind) << " at k="
        << res.primal->candidate.k << " scaled_err=" << res.primal->report.scaled_error << '\n';
  }
  if (res.dual) {
    out << "dual certificate: " << sequence_name(res.dual->candidate.kind) << " at k="
        << res.dual->candidate.k << " scaled_err=" << res.dual->report.scaled_error << '\n';
  }
  if (res.status == SolveStatus::kOptimal) {
    out << "objective " << std::setprecision(12) << res.kkt.primal_objective << std::defaultfloat
        << '\n';
  }
  if (!opt.json_out.empty()) {
    Json j = result_json(res);
    j["instance"] = p.name;
    try {
      detail::write_json_file(opt.json_out, j);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return exit_code_for(res.status);
}

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
  StandardFormLp p;
  try {
    p = detail::load_standard(opt.source);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  AnalysisConfig cfg;
  cfg.iterations = opt.iterations;
  cfg.step_factor = opt.step_factor;
  Json j;
  try {
    j = analysis_json(analyze_instance(p, cfg));
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << j.dump(2) << '\n';
  if (!opt.json_out.empty()) {
    try {
      detail::write_json_file(opt.json_out, j);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return kExitOk;
}

inline Json rational_array(std::span<const Rational> v) {
  Json out = Json::array();
  for (const Rational& q : v) out.push_back(q.get_str());
  return out;
}

inline int cmd_oracle(const InstanceSource& src, std::ostream& out, std::ostream& err) {
  GeneralFormLp p;
  try {
    p = detail::load_general(src);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const ClassifyResult c = classify_lp(p);
    out << cell_name(c.cell) << '\n';
    Json j{{"cell", std::string(cell_name(c.cell))}};
    if (c.primal_point) j["primal_point"] = rational_array(*c.primal_point);
    if (c.primal_certificate) j["primal_certificate"] = rational_array(*c.primal_certificate);
    if (c.dual_certificate) j["dual_certificate"] = rational_array(*c.dual_certificate);
    if (c.cell == FeasibilityCell::kBothFeasible) {
      if (const auto opt = exact_optimal_value(p)) j["optimal_value"] = opt->get_str();
    }
    out << j.dump(2) << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

// The four Example 1 cells side by side.
inline int cmd_demo(const SolveOptions& base, std::ostream& out, std::ostream& err) {
  const std::pair<double, double> cells[] = {{0.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}, {1.0, 1.0}};
  int worst = kExitOk;
  for (const auto& [alpha, beta] : cells) {
    SolveOptions o = base;
    o.source = {"", "ex1", alpha, beta};
    o.trace_out.clear();
    o.json_out.clear();
    out << "alpha=" << alpha << " beta=" << beta << ": ";
    const int code = cmd_solve(o, out, err);
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace lpinfeas::cli

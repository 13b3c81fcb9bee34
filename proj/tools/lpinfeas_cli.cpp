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

#include <iostream>

#include <CLI11.hpp>

#include "lpinfeas/cli.hpp"

namespace {

void add_source(CLI::App* cmd, lpinfeas::cli::InstanceSource& src) {
  cmd->add_option("path", src.path, "MPS or JSON instance");
  cmd->add_option("--demo", src.demo, "built-in instance (ex1, pinf1, dinf1, both1, bilinear4)");
  cmd->add_option("--alpha", src.alpha, "ex1 cost parameter");
  cmd->add_option("--beta", src.beta, "ex1 right-hand side parameter");
}

void add_solver_flags(CLI::App* cmd, lpinfeas::cli::SolveOptions& o) {
  cmd->add_option("--max-iters", o.max_iters, "iteration limit")->capture_default_str();
  cmd->add_option("--eps", o.eps, "infeasibility tolerance, both sides")->capture_default_str();
  cmd->add_option("--kkt-tol", o.kkt_tol, "optimality tolerance")->capture_default_str();
  cmd->add_option("--step-factor", o.step_factor, "eta = tau = factor / ||A||")->capture_default_str();
  cmd->add_option("--check-interval", o.check_interval, "iterations between checks")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "reserved");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = lpinfeas::cli;
  CLI::App app{"PDHG with infeasibility detection for linear programs"};
  app.require_subcommand(1);

  cli::SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run PDHG and classify the instance");
  add_source(solve_cmd, solve.source);
  add_solver_flags(solve_cmd, solve);
  solve_cmd->add_option("--trace-out", solve.trace_out, "trace CSV path");
  solve_cmd->add_option("--json-out", solve.json_out, "result JSON path");

  cli::AnalyzeOptions analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "ray, partition and rate analysis");
  add_source(analyze_cmd, analyze.source);
  analyze_cmd->add_option("--iters", analyze.iterations, "trajectory length")->capture_default_str();
  analyze_cmd->add_option("--step-factor", analyze.step_factor, "eta = tau = factor / ||A||");
  analyze_cmd->add_option("--json-out", analyze.json_out, "report JSON path");

  cli::InstanceSource oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact feasibility classification");
  add_source(oracle_cmd, oracle);

  cli::SolveOptions demo;
  CLI::App* demo_cmd = app.add_subcommand("demo", "solve the four ex1 cells");
  add_solver_flags(demo_cmd, demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kExitUsage;
  }
  if (solve_cmd->parsed()) return cli::cmd_solve(solve, std::cout, std::cerr);
  if (analyze_cmd->parsed()) return cli::cmd_analyze(analyze, std::cout, std::cerr);
  if (oracle_cmd->parsed()) return cli::cmd_oracle(oracle, std::cout, std::cerr);
  return cli::cmd_demo(demo, std::cout, std::cerr);
}

#include <plag/plag.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Proximal-perturbed Lagrangian alternating direction solver"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve a built-in problem or a QCQP file");
  std::string problem;
  std::string config;
  std::optional<std::string> x0, step_size, alpha, beta, delta0, decay, tol_opt, tol_feas,
      max_iters, trace, report, stride;
  bool check_invariants = false;

  solve->add_option("--problem", problem, "example1 | example2 | example3 | path to QCQP file");
  solve->add_option("--config", config, "key = value configuration file")->check(CLI::ExistingFile);
  solve->add_option("--x0", x0, "initial point, comma separated");
  solve->add_option("--step-size", step_size, "fixed x step size (required here or in config)");
  solve->add_option("--alpha", alpha, "penalty parameter (default 2000)");
  solve->add_option("--beta", beta, "proximal parameter in (0,1) (default 0.5)");
  solve->add_option("--delta0", delta0, "initial mu-step budget in (0,1] (default 1)");
  solve->add_option("--decay", decay, "reduction ratio r in (0,1) (default 0.999)");
  solve->add_option("--tol-opt", tol_opt, "optimality tolerance (default 1e-6)");
  solve->add_option("--tol-feas", tol_feas, "feasibility tolerance (default 1e-6)");
  solve->add_option("--max-iters", max_iters, "iteration budget (default 200000)");
  solve->add_option("--trace", trace, "trace CSV output path");
  solve->add_option("--report", report, "final report output path");
  solve->add_option("--stride", stride, "record every k-th iteration (default 1)");
  solve->add_flag("--check-invariants", check_invariants, "replay the convergence inequalities");

  CLI11_PARSE(app, argc, argv);

  plag::Settings flags;
  auto flag = [&flags](const char* key, const std::optional<std::string>& v) {
    if (v) flags[key] = {*v, 0};
  };
  if (!problem.empty()) flags["problem"] = {problem, 0};
  flag("x0", x0);
  flag("step_size", step_size);
  flag("alpha", alpha);
  flag("beta", beta);
  flag("delta0", delta0);
  flag("decay", decay);
  flag("tol_opt", tol_opt);
  flag("tol_feas", tol_feas);
  flag("max_iters", max_iters);
  flag("trace", trace);
  flag("report", report);
  flag("stride", stride);
  if (check_invariants) flags["check_invariants"] = {"true", 0};

  plag::RunConfig cfg;
  try {
    cfg = config.empty() ? plag::parse_config({}, flags) : plag::parse_config_file(config, flags);
  } catch (const plag::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return plag::exit_code::usage;
  }
  return plag::run(cfg, std::cerr);
}

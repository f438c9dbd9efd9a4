#pragma once

// Executes a RunConfig: load problem, solve, write trace and report, and
// optionally replay the trace invariants.

#include <plag/config.hpp>
#include <plag/diagnostics.hpp>
#include <plag/problems.hpp>
#include <plag/qcqp_io.hpp>
#include <plag/solver.hpp>
#include <plag/trace_csv.hpp>

#include <fstream>
#include <memory>
#include <ostream>
#include <string>

namespace plag {

namespace exit_code {
inline constexpr int converged = 0;
inline constexpr int iteration_limit = 1;
inline constexpr int failed = 2;  ///< diverged or evaluation error
inline constexpr int invariant_violation = 3;
inline constexpr int output_error = 4;
inline constexpr int usage = 64;
}  // namespace exit_code

/// Built-in name, or else a path to a QCQP file.
inline Problem resolve_problem(const std::string& name_or_path) {
  if (auto p = builtin(name_or_path)) return *p;
  return load_qcqp(name_or_path);
}

namespace detail {

inline std::string full_vector(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += text::format_double(v[i]);
  }
  return out;
}

}  // namespace detail

inline void write_report(std::ostream& out, const Problem& problem, const SolverParams& params,
                         const SolveOutcome& outcome, const TraceCheck* check) {
  const auto& s = outcome.final_state;
  out << "problem = " << problem.name << '\n';
  out << "status = " << to_string(outcome.status) << '\n';
  out << "message = " << outcome.message << '\n';
  out << "iterations = " << s.k << '\n';
  out << "x = " << detail::full_vector(s.x) << '\n';
  out << "lambda = " << detail::full_vector(s.lambda) << '\n';
  out << "mu = " << detail::full_vector(s.mu) << '\n';
  out << "z = " << detail::full_vector(s.z) << '\n';
  if (s.x.allFinite()) {
    try {
      out << "objective = " << text::format_double(problem.f(s.x)) << '\n';
    } catch (const Error&) {
      out << "objective = nan\n";
    }
  }
  out << "optimality = " << text::format_double(outcome.kkt.optimality) << '\n';
  out << "feasibility = " << text::format_double(outcome.kkt.feasibility) << '\n';
  out << "kkt_satisfied = " << (outcome.kkt.satisfied ? "true" : "false") << '\n';
  out << "rho = " << text::format_double(params.penalty.rho()) << '\n';
  out << "delta = " << text::format_double(s.delta) << '\n';
  if (auto ratio = perturbation_ratio_max(outcome.trace, params.penalty.alpha()))
    out << "perturbation_ratio_max = " << text::format_double(*ratio) << '\n';
  if (check) {
    out << "invariant_violations = " << check->violations.size() << '\n';
    out << "blocking_violations = " << check->blocking() << '\n';
    std::size_t i = 0;
    for (const auto& v : check->violations) {
      out << "violation." << ++i << " = " << v.name << " k=" << v.k
          << " lhs=" << text::format_double(v.lhs) << " rhs=" << text::format_double(v.rhs)
          << " margin=" << text::format_double(v.margin)
          << (v.advisory ? " advisory" : "") << '\n';
    }
    i = 0;
    for (const auto& n : check->notices) out << "notice." << ++i << " = " << n << '\n';
  }
}

/// Returns the process exit code. Diagnostics go to `log`.
inline int run(const RunConfig& config, std::ostream& log) {
  for (const auto& w : config.warnings) log << "warning: " << w << '\n';

  Problem problem;
  Vector x0;
  try {
    problem = resolve_problem(config.problem);
    if (config.x0) {
      x0 = *config.x0;
    } else if (auto p = builtin_initial_point(config.problem)) {
      x0 = *p;
    } else {
      x0 = Vector::Zero(problem.n);
    }
    require_size(x0, problem.n, "x0");
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  std::unique_ptr<std::ofstream> trace_out, report_out;
  auto open = [&](const std::filesystem::path& p, std::unique_ptr<std::ofstream>& f) {
    if (p.empty()) return true;
    f = std::make_unique<std::ofstream>(p);
    if (!*f) {
      log << "error: cannot write '" << p.string() << "'\n";
      return false;
    }
    return true;
  };
  if (!open(config.trace_path, trace_out) || !open(config.report_path, report_out))
    return exit_code::output_error;

  SolveOutcome outcome;
  try {
    outcome = solve(problem, config.params, x0);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  std::optional<TraceCheck> check;
  if (config.check_invariants) {
    check = check_trace(outcome.trace, config.params, CheckHints::from(problem.lipschitz_hints));
  }

  if (trace_out) {
    write_trace_csv(*trace_out, outcome.trace);
    if (!trace_out->flush()) {
      log << "error: failed writing '" << config.trace_path.string() << "'\n";
      return exit_code::output_error;
    }
  }
  if (report_out) {
    write_report(*report_out, problem, config.params, outcome, check ? &*check : nullptr);
    if (!report_out->flush()) {
      log << "error: failed writing '" << config.report_path.string() << "'\n";
      return exit_code::output_error;
    }
  }

  log << problem.name << ": " << to_string(outcome.status) << " after " << outcome.final_state.k
      << " iterations, x = (" << text::join(outcome.final_state.x, ", ") << ")\n";

  switch (outcome.status) {
    case Status::IterationLimit: return exit_code::iteration_limit;
    case Status::Diverged:
    case Status::EvaluationError: return exit_code::failed;
    case Status::Converged: break;
  }
  if (check && check->blocking() > 0) {
    log << check->blocking() << " invariant violation(s)\n";
    return exit_code::invariant_violation;
  }
  return exit_code::converged;
}

}  // namespace plag

#pragma once

#include <plag/diagnostics.hpp>
#include <plag/iterate.hpp>

#include <optional>
#include <string>

namespace plag {

enum class Status { Converged, IterationLimit, Diverged, EvaluationError };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::IterationLimit: return "IterationLimit";
    case Status::Diverged: return "Diverged";
    case Status::EvaluationError: return "EvaluationError";
  }
  return "unknown";
}

struct SolveOutcome {
  Status status = Status::IterationLimit;
  IterateState final_state;
  KktReport kkt;
  Trace trace;
  std::string message;
};

/// Overrides for the default zero start of (z, lambda, mu).
struct WarmStart {
  Vector z;
  Vector lambda;
  Vector mu;
};

/// Runs the alternating direction iteration from P_X[x0] until both the
/// optimality residual and |c(x)| fall below tolerance, the iteration budget
/// is used up, or |x| exceeds the divergence bound.
///
/// The trace keeps every trace_stride-th state plus the final one. On an
/// evaluation failure the partial trace and the last good state are returned.
inline SolveOutcome solve(const Problem& problem, const SolverParams& params, const Vector& x0,
                          const std::optional<WarmStart>& warm = std::nullopt) {
  params.validate();
  SolveOutcome out;
  out.trace.stride = params.trace_stride;
  const Tolerances tols{params.tol_optimality, params.tol_feasibility};

  IterateState state = initial_state(problem, params, x0);
  if (warm) {
    require_size(warm->z, problem.m, "warm start z");
    require_size(warm->lambda, problem.m, "warm start lambda");
    require_size(warm->mu, problem.m, "warm start mu");
    state.z = warm->z;
    state.lambda = warm->lambda;
    state.mu = warm->mu;
  }
  std::optional<Vector> previous_x;

  auto finish = [&](Status status, std::string message) {
    out.status = status;
    out.final_state = state;
    out.message = std::move(message);
    return out;
  };

  for (;;) {
    TraceRecord record;
    try {
      if (!state.x.allFinite()) throw EvaluationError("x is not finite");
      record = make_record(problem, params, state, previous_x);
      out.kkt = kkt_report(problem, state, tols);
    } catch (const Error& e) {
      return finish(Status::EvaluationError,
                    "iteration " + std::to_string(state.k) + ": " + e.what());
    }

    const bool satisfied = out.kkt.satisfied;
    const bool diverged = record.norm_x > params.divergence_bound;
    const bool exhausted = state.k >= params.max_iterations;
    const bool stopping = satisfied || diverged || exhausted;
    if (state.k % params.trace_stride == 0 || stopping)
      out.trace.records.push_back(std::move(record));

    if (satisfied) return finish(Status::Converged, "both residuals below tolerance");
    if (diverged)
      return finish(Status::Diverged, "|x| exceeded the divergence bound at iteration " +
                                          std::to_string(state.k));
    if (exhausted) return finish(Status::IterationLimit, "iteration budget exhausted");

    try {
      IterateState next = iterate(problem, params, state);
      previous_x = std::move(state.x);
      state = std::move(next);
    } catch (const Error& e) {
      return finish(Status::EvaluationError, e.what());
    }
  }
}

}  // namespace plag

#pragma once

// One pass of the alternating direction scheme: projected gradient step in x,
// damped ascent in mu, exact maximisation in lambda, exact minimisation in z,
// then geometric decay of the mu-step budget delta.

#include <plag/core.hpp>
#include <plag/plagrangian.hpp>
#include <plag/problem.hpp>

#include <string>

namespace plag {

struct SolverParams {
  PenaltyParams penalty{2000.0, 0.5};
  /// Fixed x step (the inverse proximal weight). No default: must be chosen
  /// per problem.
  double step_size = 0.0;
  double delta0 = 1.0;
  /// Reduction ratio r of the delta schedule; keep it close to 1.
  double decay = 0.999;
  double tol_optimality = 1e-6;
  double tol_feasibility = 1e-6;
  Index max_iterations = 200000;
  double divergence_bound = 1e8;
  /// Record every stride-th iteration in the trace.
  Index trace_stride = 1;

  void validate() const {
    if (!(step_size > 0.0) || !std::isfinite(step_size))
      throw ParameterError("step_size must be positive");
    if (!(delta0 > 0.0 && delta0 <= 1.0)) throw ParameterError("delta0 must lie in (0, 1]");
    if (!(decay > 0.0 && decay < 1.0)) throw ParameterError("decay must lie in (0, 1)");
    if (!(tol_optimality > 0.0)) throw ParameterError("tol_optimality must be > 0");
    if (!(tol_feasibility > 0.0)) throw ParameterError("tol_feasibility must be > 0");
    if (max_iterations < 0) throw ParameterError("max_iterations must be >= 0");
    if (!(divergence_bound > 0.0)) throw ParameterError("divergence_bound must be > 0");
    if (trace_stride < 1) throw ParameterError("trace_stride must be >= 1");
  }

  /// delta_k = r^k delta_0.
  double delta_at(Index k) const {
    return delta0 * std::pow(decay, static_cast<double>(k));
  }
};

struct IterateState : FullState {
  Index k = 0;
  double delta = 0.0;
  /// gamma used to produce this state; 0 before the first mu-step.
  double gamma = 0.0;
};

/// Default start: x projected onto X, z = lambda = mu = 0.
inline IterateState initial_state(const Problem& problem, const SolverParams& params,
                                  const Vector& x0) {
  require_size(x0, problem.n, "x0");
  IterateState s;
  static_cast<FullState&>(s) = FullState::at(problem.project(x0), problem.m);
  s.delta = params.delta0;
  return s;
}

inline Vector step_x(const Problem& problem, const SolverParams& params,
                     const FullState& state) {
  const Vector g = grad_x(problem, state);
  if (!g.allFinite()) throw EvaluationError("gradient of the P-Lagrangian is not finite");
  return problem.project(state.x - params.step_size * g);
}

/// rho delta_k / (|lambda_k - mu_k|^2 + 1).
inline double gamma(const PenaltyParams& penalty, const Vector& lambda, const Vector& mu,
                    double delta) {
  require_size(mu, lambda.size(), "gamma: mu");
  return penalty.rho() * delta / ((lambda - mu).squaredNorm() + 1.0);
}

inline double gamma(const SolverParams& params, const IterateState& state) {
  return gamma(params.penalty, state.lambda, state.mu, state.delta);
}

/// mu_k + (gamma_k / rho)(lambda_k - mu_k). Moves mu by at most delta_k / 2.
inline Vector step_mu(const PenaltyParams& penalty, const Vector& lambda, const Vector& mu,
                      double gamma_k) {
  require_size(mu, lambda.size(), "step_mu: mu");
  return mu + (gamma_k / penalty.rho()) * (lambda - mu);
}

inline Vector step_mu(const SolverParams& params, const IterateState& state) {
  return step_mu(params.penalty, state.lambda, state.mu, gamma(params, state));
}

inline Vector step_lambda(const Problem& problem, const SolverParams& params,
                          const Vector& x_next, const Vector& mu_next) {
  return lambda_hat(problem, params.penalty, x_next, mu_next);
}

inline Vector step_z(const SolverParams& params, const Vector& lambda_next,
                     const Vector& mu_next) {
  return zhat(params.penalty, lambda_next, mu_next);
}

/// Steps in the normative order. The mu-update reads lambda_k, not lambda_{k+1}.
inline IterateState iterate(const Problem& problem, const SolverParams& params,
                            const IterateState& state) {
  check_dimensions(problem, state);
  IterateState next;
  next.k = state.k + 1;
  try {
    next.x = step_x(problem, params, state);
    next.gamma = gamma(params, state);
    next.mu = step_mu(params.penalty, state.lambda, state.mu, next.gamma);
    next.lambda = step_lambda(problem, params, next.x, next.mu);
    next.z = step_z(params, next.lambda, next.mu);
  } catch (const DimensionError&) {
    throw;
  } catch (const Error& e) {
    throw EvaluationError("iteration " + std::to_string(next.k) + ": " + e.what());
  }
  next.delta = params.delta_at(next.k);
  if (!next.x.allFinite() || !next.mu.allFinite() || !next.lambda.allFinite() ||
      !next.z.allFinite() || !std::isfinite(next.gamma))
    throw EvaluationError("iteration " + std::to_string(next.k) +
                          ": non-finite iterate component");
  return next;
}

}  // namespace plag

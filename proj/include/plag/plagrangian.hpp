#pragma once

// Proximal-perturbed Lagrangian
//
//   L(x, z, lambda, mu) = f(x) + <lambda, c(x) - z> + <mu, z>
//                         + (alpha/2)|z|^2 - (beta/2)|lambda - mu|^2
//
// and its closed-form partial minimiser in z / maximiser in lambda.

#include <plag/core.hpp>
#include <plag/problem.hpp>

namespace plag {

/// Penalty alpha, proximal weight beta and the derived rho = alpha/(1+alpha*beta).
/// rho is fixed at construction.
class PenaltyParams {
 public:
  PenaltyParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw ParameterError("alpha must be positive and finite");
    if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
    rho_ = alpha_ / (1.0 + alpha_ * beta_);
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double rho() const { return rho_; }

 private:
  double alpha_;
  double beta_;
  double rho_;
};

struct FullState {
  Vector x;
  Vector z;
  Vector lambda;
  Vector mu;

  /// x given, multipliers and perturbation zero.
  static FullState at(const Vector& x, Index m) {
    return {x, Vector::Zero(m), Vector::Zero(m), Vector::Zero(m)};
  }
};

inline void check_dimensions(const Problem& problem, const FullState& s) {
  require_size(s.x, problem.n, "state.x");
  require_size(s.z, problem.m, "state.z");
  require_size(s.lambda, problem.m, "state.lambda");
  require_size(s.mu, problem.m, "state.mu");
}

inline double eval_full(const Problem& problem, const PenaltyParams& params,
                        const FullState& s) {
  check_dimensions(problem, s);
  const Vector cx = problem.c(s.x);
  const double value = problem.f(s.x) + s.lambda.dot(cx - s.z) + s.mu.dot(s.z) +
                       0.5 * params.alpha() * s.z.squaredNorm() -
                       0.5 * params.beta() * (s.lambda - s.mu).squaredNorm();
  if (!std::isfinite(value))
    throw EvaluationError("P-Lagrangian value is not finite");
  return value;
}

/// grad f(x) + J(x)^T lambda. Deliberately independent of z and mu: they do
/// not enter L through x.
inline Vector grad_x(const Problem& problem, const FullState& s) {
  check_dimensions(problem, s);
  Vector g = problem.grad_f(s.x);
  if (problem.m > 0) g.noalias() += problem.jacobian(s.x).transpose() * s.lambda;
  return g;
}

/// Unique minimiser of L over z: (lambda - mu)/alpha.
inline Vector zhat(const PenaltyParams& params, const Vector& lambda, const Vector& mu) {
  require_size(mu, lambda.size(), "zhat: mu");
  return (lambda - mu) / params.alpha();
}

/// L with z eliminated: f(x) + <lambda, c(x)> - |lambda - mu|^2 / (2 rho).
inline double eval_reduced(const Problem& problem, const PenaltyParams& params,
                           const Vector& x, const Vector& lambda, const Vector& mu) {
  require_size(lambda, problem.m, "lambda");
  require_size(mu, problem.m, "mu");
  const double value = problem.f(x) + lambda.dot(problem.c(x)) -
                       (lambda - mu).squaredNorm() / (2.0 * params.rho());
  if (!std::isfinite(value))
    throw EvaluationError("reduced P-Lagrangian value is not finite");
  return value;
}

/// Unique maximiser of the reduced function over lambda: mu + rho c(x).
inline Vector lambda_hat(const Problem& problem, const PenaltyParams& params,
                         const Vector& x, const Vector& mu) {
  require_size(mu, problem.m, "mu");
  return mu + params.rho() * problem.c(x);
}

}  // namespace plag

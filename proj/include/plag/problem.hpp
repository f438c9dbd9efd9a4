#pragma once

#include <plag/core.hpp>
#include <plag/numcheck.hpp>
#include <plag/projection.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace plag {

/// Optional Lipschitz constants supplied by the user. Never used to pick a
/// step size; only the trace checker reads them.
struct LipschitzHints {
  std::optional<double> grad_f;  ///< of the objective gradient
  std::optional<double> grad_c;  ///< of the constraint Jacobian
  std::optional<double> c;       ///< of the constraint map
};

/// min f(x) s.t. c(x) = 0, x in X, with X given through its projection.
///
/// Evaluators must be pure functions of x. The raw callbacks are public so
/// user code can fill them in directly; the member functions wrap them with
/// shape and finiteness checks.
struct Problem {
  std::string name;
  Index n = 0;
  Index m = 0;
  std::function<double(const Vector&)> objective;
  std::function<Vector(const Vector&)> objective_gradient;
  std::function<Vector(const Vector&)> constraints;
  /// m x n; row j is the gradient of c_j, so the dual-weighted gradient is J^T lambda.
  std::function<Matrix(const Vector&)> constraint_jacobian;
  std::function<Vector(const Vector&)> projection;
  LipschitzHints lipschitz_hints;

  double f(const Vector& x) const {
    require_size(x, n, name + ": x");
    const double v = objective(x);
    if (!std::isfinite(v)) throw EvaluationError(name + ": objective is not finite");
    return v;
  }

  Vector grad_f(const Vector& x) const {
    require_size(x, n, name + ": x");
    Vector g = objective_gradient(x);
    require_size(g, n, name + ": objective_gradient");
    if (!g.allFinite()) throw EvaluationError(name + ": objective_gradient is not finite");
    return g;
  }

  Vector c(const Vector& x) const {
    require_size(x, n, name + ": x");
    if (m == 0 && !constraints) return Vector(0);
    Vector v = constraints(x);
    require_size(v, m, name + ": constraints");
    if (!v.allFinite()) throw EvaluationError(name + ": constraints are not finite");
    return v;
  }

  Matrix jacobian(const Vector& x) const {
    require_size(x, n, name + ": x");
    if (m == 0 && !constraint_jacobian) return Matrix(0, n);
    Matrix j = constraint_jacobian(x);
    if (j.rows() != m) throw DimensionError(name + ": constraint_jacobian rows", m, j.rows());
    if (j.cols() != n) throw DimensionError(name + ": constraint_jacobian cols", n, j.cols());
    if (!j.allFinite()) throw EvaluationError(name + ": constraint_jacobian is not finite");
    return j;
  }

  Vector project(const Vector& v) const {
    require_size(v, n, name + ": projection input");
    Vector p = projection ? projection(v) : v;
    require_size(p, n, name + ": projection");
    return p;
  }
};

/// Wraps a closed-form projection kind as a Problem::projection callback.
inline std::function<Vector(const Vector&)> make_projection(ProjectionKind kind) {
  return [kind = std::move(kind)](const Vector& v) { return plag::project(kind, v); };
}

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double max_rel_error = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }

  const ValidationCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Evaluates every callback at P_X[x0], checks shapes and finiteness, and
/// cross-checks the analytic derivatives against finite differences.
inline ValidationReport validate(const Problem& problem, const Vector& x0,
                                 const numcheck::FdSettings& settings = {}) {
  require_size(x0, problem.n, problem.name + ": x0");
  ValidationReport report;

  auto run = [&report](const std::string& name, auto&& body) {
    ValidationCheck check{name, false, 0.0, {}};
    try {
      body(check);
    } catch (const std::exception& e) {
      check.passed = false;
      check.message = e.what();
    }
    report.checks.push_back(std::move(check));
  };

  Vector x = x0;
  run("projection", [&](ValidationCheck& c) {
    x = problem.project(x0);
    if (!x.allFinite()) throw EvaluationError("projection is not finite");
    c.passed = true;
  });
  run("objective", [&](ValidationCheck& c) {
    problem.f(x);
    c.passed = true;
  });
  run("objective_gradient", [&](ValidationCheck& c) {
    const Vector g = problem.grad_f(x);
    const Vector fd = numcheck::fd_gradient(problem.objective, x, settings);
    const auto cmp = numcheck::compare(g, fd, settings.rel_tol);
    c.max_rel_error = cmp.max_rel_error;
    c.passed = cmp.passed;
    if (!c.passed) c.message = "gradient disagrees with finite differences";
  });
  run("constraints", [&](ValidationCheck& c) {
    problem.c(x);
    c.passed = true;
  });
  run("constraint_jacobian", [&](ValidationCheck& c) {
    const Matrix j = problem.jacobian(x);
    if (problem.m == 0) {
      c.passed = true;
      return;
    }
    const Matrix fd = numcheck::fd_jacobian(problem.constraints, x, settings);
    const auto cmp = numcheck::compare(j, fd, settings.rel_tol);
    c.max_rel_error = cmp.max_rel_error;
    c.passed = cmp.passed;
    if (!c.passed) c.message = "Jacobian disagrees with finite differences";
  });
  return report;
}

}  // namespace plag

#pragma once

// Finite-difference oracle for gradients and Jacobians. Kept free of any
// dependence on the Lagrangian or solver code so it can check them.

#include <plag/core.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

namespace plag::numcheck {

enum class Scheme { central, forward };

struct FdSettings {
  double step = 1e-6;
  Scheme scheme = Scheme::central;
  double rel_tol = 1e-5;

  void validate() const {
    if (!(step > 0.0)) throw ParameterError("finite-difference step must be > 0");
    if (!(rel_tol > 0.0)) throw ParameterError("rel_tol must be > 0");
  }
};

using ScalarFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;

namespace detail {

inline double checked(double value, Index coord) {
  if (!std::isfinite(value))
    throw EvaluationError("non-finite function value while perturbing coordinate " +
                          std::to_string(coord));
  return value;
}

inline Vector checked(Vector value, Index coord) {
  if (!value.allFinite())
    throw EvaluationError("non-finite function value while perturbing coordinate " +
                          std::to_string(coord));
  return value;
}

}  // namespace detail

inline Vector fd_gradient(const ScalarFn& fn, const Vector& x,
                          const FdSettings& settings = {}) {
  settings.validate();
  const double h = settings.step;
  Vector grad(x.size());
  Vector probe = x;
  const double f0 = settings.scheme == Scheme::forward
                        ? detail::checked(fn(x), -1)
                        : 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = detail::checked(fn(probe), i);
    if (settings.scheme == Scheme::central) {
      probe[i] = x[i] - h;
      const double down = detail::checked(fn(probe), i);
      grad[i] = (up - down) / (2.0 * h);
    } else {
      grad[i] = (up - f0) / h;
    }
    probe[i] = x[i];
  }
  return grad;
}

/// Row j holds the derivative of output component j.
inline Matrix fd_jacobian(const VectorFn& fn, const Vector& x,
                          const FdSettings& settings = {}) {
  settings.validate();
  const double h = settings.step;
  const Vector f0 = detail::checked(fn(x), -1);
  Matrix jac(f0.size(), x.size());
  Vector probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    Vector up = detail::checked(fn(probe), i);
    if (up.size() != f0.size())
      throw DimensionError("fd_jacobian output", f0.size(), up.size());
    if (settings.scheme == Scheme::central) {
      probe[i] = x[i] - h;
      Vector down = detail::checked(fn(probe), i);
      if (down.size() != f0.size())
        throw DimensionError("fd_jacobian output", f0.size(), down.size());
      jac.col(i) = (up - down) / (2.0 * h);
    } else {
      jac.col(i) = (up - f0) / h;
    }
    probe[i] = x[i];
  }
  return jac;
}

struct Comparison {
  double max_rel_error = 0.0;
  bool passed = true;
};

/// Entry-wise |a - b| / (1 + |a|), maximised. Works for vectors and matrices.
template <typename DerivedA, typename DerivedB>
Comparison compare(const Eigen::DenseBase<DerivedA>& analytic,
                   const Eigen::DenseBase<DerivedB>& numeric, double rel_tol) {
  if (analytic.rows() != numeric.rows() || analytic.cols() != numeric.cols())
    throw DimensionError("compare: shape mismatch (entries)",
                         analytic.rows() * analytic.cols(),
                         numeric.rows() * numeric.cols());
  Comparison out;
  for (Index j = 0; j < analytic.cols(); ++j) {
    for (Index i = 0; i < analytic.rows(); ++i) {
      const double a = analytic(i, j);
      const double b = numeric(i, j);
      double err = std::abs(a - b) / (1.0 + std::abs(a));
      if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
      out.max_rel_error = std::max(out.max_rel_error, err);
    }
  }
  out.passed = out.max_rel_error <= rel_tol;
  return out;
}

}  // namespace plag::numcheck

#pragma once

// Built-in test problems and a generic QCQP constructor.

#include <plag/core.hpp>
#include <plag/problem.hpp>
#include <plag/projection.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace plag {

/// min 1/2 x'Qx + q'x  s.t.  1/2 x'Q_j x + q_j'x + b_j = 0,  x in X.
struct QcqpSpec {
  Matrix Q;
  Vector q;
  std::vector<Matrix> Qj;
  std::vector<Vector> qj;
  std::vector<double> bj;
  ProjectionKind projection = WholeSpace{};

  Index n() const { return q.size(); }
  Index m() const { return static_cast<Index>(Qj.size()); }

  void validate() const {
    const Index dim = n();
    if (dim == 0) throw DimensionError("qcqp: q must be non-empty", 1, 0);
    if (Q.rows() != dim || Q.cols() != dim) throw DimensionError("qcqp: Q rows/cols", dim, Q.rows());
    if (qj.size() != Qj.size() || bj.size() != Qj.size())
      throw DimensionError("qcqp: constraint data count", m(),
                           static_cast<Index>(std::min(qj.size(), bj.size())));
    for (std::size_t j = 0; j < Qj.size(); ++j) {
      const auto tag = "qcqp: constraint " + std::to_string(j + 1);
      if (Qj[j].rows() != dim || Qj[j].cols() != dim)
        throw DimensionError(tag + " matrix", dim, Qj[j].rows());
      require_size(qj[j], dim, tag + " linear term");
    }
    if (auto d = dimension(projection); d && *d != dim)
      throw DimensionError("qcqp: projection set", dim, *d);
  }
};

inline Problem from_qcqp(QcqpSpec spec, std::string name = "qcqp") {
  spec.validate();
  auto sym = [](const Matrix& a) -> Matrix { return 0.5 * (a + a.transpose()); };
  spec.Q = sym(spec.Q);
  for (auto& a : spec.Qj) a = sym(a);

  const auto data = std::make_shared<const QcqpSpec>(std::move(spec));
  Problem p;
  p.name = std::move(name);
  p.n = data->n();
  p.m = data->m();
  p.objective = [data](const Vector& x) { return 0.5 * x.dot(data->Q * x) + data->q.dot(x); };
  p.objective_gradient = [data](const Vector& x) -> Vector { return data->Q * x + data->q; };
  p.constraints = [data](const Vector& x) -> Vector {
    Vector c(data->m());
    for (Index j = 0; j < data->m(); ++j)
      c[j] = 0.5 * x.dot(data->Qj[j] * x) + data->qj[j].dot(x) + data->bj[j];
    return c;
  };
  p.constraint_jacobian = [data](const Vector& x) -> Matrix {
    Matrix jac(data->m(), data->n());
    for (Index j = 0; j < data->m(); ++j) jac.row(j) = (data->Qj[j] * x + data->qj[j]).transpose();
    return jac;
  };
  p.projection = make_projection(data->projection);
  return p;
}

/// min -(x1-1)^2 + x2^2 s.t. circles of radius 1 about (0,0) and (2,0),
/// on the box [-3,3]^2. The only feasible point is (1,0), where LICQ fails.
inline Problem example1() {
  Problem p;
  p.name = "example1";
  p.n = 2;
  p.m = 2;
  p.objective = [](const Vector& x) { return -(x[0] - 1) * (x[0] - 1) + x[1] * x[1]; };
  p.objective_gradient = [](const Vector& x) -> Vector {
    return Vector{{-2.0 * (x[0] - 1.0), 2.0 * x[1]}};
  };
  p.constraints = [](const Vector& x) -> Vector {
    return Vector{{x[0] * x[0] + x[1] * x[1] - 1.0,
                   (x[0] - 2.0) * (x[0] - 2.0) + x[1] * x[1] - 1.0}};
  };
  p.constraint_jacobian = [](const Vector& x) -> Matrix {
    Matrix j(2, 2);
    j << 2.0 * x[0], 2.0 * x[1], 2.0 * (x[0] - 2.0), 2.0 * x[1];
    return j;
  };
  p.projection = make_projection(Box::uniform(2, -3.0, 3.0));
  return p;
}

inline QcqpSpec example2_spec() {
  QcqpSpec s;
  s.Q.resize(3, 3);
  s.Q << -2, 10, 2, 10, 4, 1, 2, 1, -7;
  s.q = Vector{{-12.0, -6.0, 56.0}};
  Matrix q1 = Vector{{1.0, -1.0, 4.0}}.asDiagonal();
  Matrix q2 = Matrix::Identity(3, 3);
  s.Qj = {q1, q2};
  s.qj = {Vector{{0.0, 0.0, -32.0}}, Vector{{0.0, 0.0, -8.0}}};
  s.bj = {128.0, 32.0};
  s.projection = NonnegativeOrthant{};
  return s;
}

/// Nonconvex QCQP on the nonnegative orthant in R^3; optimum (0,0,8), value 224.
inline Problem example2() { return from_qcqp(example2_spec(), "example2"); }

/// MPCC: min x1^2 + x2^2 - 4 x1 x2 s.t. x1^2 - x2^2 - 4 = 0, x1 x2 = 0,
/// with x >= 0 encoded in X. Optimum (2,0).
inline Problem example3() {
  Problem p;
  p.name = "example3";
  p.n = 2;
  p.m = 2;
  p.objective = [](const Vector& x) { return x[0] * x[0] + x[1] * x[1] - 4.0 * x[0] * x[1]; };
  p.objective_gradient = [](const Vector& x) -> Vector {
    return Vector{{2.0 * x[0] - 4.0 * x[1], 2.0 * x[1] - 4.0 * x[0]}};
  };
  p.constraints = [](const Vector& x) -> Vector {
    return Vector{{x[0] * x[0] - x[1] * x[1] - 4.0, x[0] * x[1]}};
  };
  p.constraint_jacobian = [](const Vector& x) -> Matrix {
    Matrix j(2, 2);
    j << 2.0 * x[0], -2.0 * x[1], x[1], x[0];
    return j;
  };
  p.projection = make_projection(NonnegativeOrthant{});
  return p;
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"example1", "example2", "example3"};
  return names;
}

inline std::optional<Problem> builtin(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  return std::nullopt;
}

/// Starting point used in the reference experiments.
inline std::optional<Vector> builtin_initial_point(const std::string& name) {
  if (name == "example1") return Vector{{3.0, 3.0}};
  if (name == "example2") return Vector{{4.0, 4.0, 4.0}};
  if (name == "example3") return Vector{{5.0, 5.0}};
  return std::nullopt;
}

}  // namespace plag

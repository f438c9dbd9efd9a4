#include <plag/numcheck.hpp>
#include <plag/problems.hpp>

#include <gtest/gtest.h>

#include <Eigen/LU>

#include "test_util.hpp"

namespace plag {
namespace {

TEST(Example1, OptimumIsFeasibleWithDependentGradients) {
  const Problem p = example1();
  const Vector opt{{1.0, 0.0}};
  EXPECT_EQ(p.c(opt), Vector::Zero(2));
  EXPECT_EQ(p.f(opt), 0.0);
  Matrix expected(2, 2);
  expected << 2, 0, -2, 0;
  const Matrix j = p.jacobian(opt);
  EXPECT_EQ(j, expected);
  Eigen::FullPivLU<Matrix> lu(j);
  EXPECT_EQ(lu.rank(), 1);
  EXPECT_EQ(p.project(Vector{{-5.0, 4.0}}), (Vector{{-3.0, 3.0}}));
}

TEST(Example2, OptimalValueAndFeasibility) {
  const Problem p = example2();
  const Vector opt{{0.0, 0.0, 8.0}};
  EXPECT_EQ(p.f(opt), 224.0);
  // c1 = 1/2 * 4 * 64 - 32 * 8 + 128; c2 = 1/2 * 64 - 8 * 8 + 32
  EXPECT_EQ(p.c(opt), Vector::Zero(2));
  EXPECT_EQ(p.n, 3);
  EXPECT_EQ(p.project(Vector{{-1.0, 2.0, -3.0}}), (Vector{{0.0, 2.0, 0.0}}));
}

TEST(Example3, OptimumAndJacobian) {
  const Problem p = example3();
  const Vector opt{{2.0, 0.0}};
  EXPECT_EQ(p.c(opt), Vector::Zero(2));
  EXPECT_EQ(p.f(opt), 4.0);
  Matrix expected(2, 2);
  expected << 4, 0, 0, 2;
  EXPECT_EQ(p.jacobian(opt), expected);
}

TEST(FromQcqp, ZeroDataGivesZeroFunction) {
  QcqpSpec s;
  s.Q = Matrix::Zero(3, 3);
  s.q = Vector::Zero(3);
  const Problem p = from_qcqp(s);
  const Vector x{{1.0, -2.0, 3.0}};
  EXPECT_EQ(p.f(x), 0.0);
  EXPECT_EQ(p.grad_f(x), Vector::Zero(3));
  EXPECT_EQ(p.m, 0);
}

TEST(FromQcqp, Example2ReproducedFromPrintedData) {
  QcqpSpec s;
  s.Q.resize(3, 3);
  s.Q << -2, 10, 2, 10, 4, 1, 2, 1, -7;
  s.q = Vector{{-12, -6, 56}};
  Matrix q1 = Matrix::Zero(3, 3);
  q1.diagonal() << 1, -1, 4;
  s.Qj = {q1, Matrix::Identity(3, 3)};
  s.qj = {Vector{{0, 0, -32}}, Vector{{0, 0, -8}}};
  s.bj = {128, 32};
  s.projection = NonnegativeOrthant{};
  const Problem a = from_qcqp(s);
  const Problem b = example2();
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const Vector x = test::random_vector(rng, 3, 4.0);
    EXPECT_EQ(a.f(x), b.f(x));
    EXPECT_EQ(a.c(x), b.c(x));
    EXPECT_EQ(a.jacobian(x), b.jacobian(x));
  }
}

TEST(FromQcqp, SymmetrisesMatrices) {
  QcqpSpec s;
  s.Q = Matrix{{0.0, 2.0}, {0.0, 0.0}};  // x'Qx = 2 x1 x2
  s.q = Vector::Zero(2);
  const Problem p = from_qcqp(s);
  EXPECT_EQ(p.grad_f(Vector{{1.0, 3.0}}), (Vector{{3.0, 1.0}}));
}

TEST(FromQcqp, DimensionMismatchRejected) {
  QcqpSpec s;
  s.Q = Matrix::Zero(2, 2);
  s.q = Vector::Zero(3);
  EXPECT_THROW(from_qcqp(s), DimensionError);
  s.Q = Matrix::Zero(3, 3);
  s.Qj = {Matrix::Zero(3, 3)};
  s.qj = {Vector::Zero(2)};
  s.bj = {0.0};
  EXPECT_THROW(from_qcqp(s), DimensionError);
  s.qj = {Vector::Zero(3)};
  s.projection = Box::uniform(2, 0.0, 1.0);
  EXPECT_THROW(from_qcqp(s), DimensionError);
}

TEST(FromQcqp, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    QcqpSpec s;
    s.Q = test::random_symmetric(rng, 4);
    s.q = test::random_vector(rng, 4);
    for (int j = 0; j < 3; ++j) {
      s.Qj.push_back(test::random_symmetric(rng, 4));
      s.qj.push_back(test::random_vector(rng, 4));
      s.bj.push_back(test::random_vector(rng, 1)[0]);
    }
    const Problem p = from_qcqp(s);
    const Vector x = test::random_vector(rng, 4);
    EXPECT_TRUE(numcheck::compare(p.grad_f(x), numcheck::fd_gradient(p.objective, x), 1e-6).passed);
    EXPECT_TRUE(
        numcheck::compare(p.jacobian(x), numcheck::fd_jacobian(p.constraints, x), 1e-6).passed);
  }
}

TEST(Builtins, LookupByName) {
  for (const auto& name : builtin_names()) {
    const auto p = builtin(name);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(p->name, name);
    EXPECT_EQ(builtin_initial_point(name)->size(), p->n);
  }
  EXPECT_FALSE(builtin("example4").has_value());
}

}  // namespace
}  // namespace plag

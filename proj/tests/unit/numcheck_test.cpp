#include <plag/numcheck.hpp>
#include <plag/problems.hpp>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace plag::numcheck {
namespace {

TEST(FdGradient, ConstantHasZeroGradient) {
  const Vector g = fd_gradient([](const Vector&) { return 3.5; }, Vector{{1.0, 2.0}});
  EXPECT_LE(g.norm(), 1e-12);
}

TEST(FdGradient, HalfSquaredNorm) {
  auto fn = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  const Vector g = fd_gradient(fn, Vector{{3.0, -4.0}});
  EXPECT_NEAR(g[0], 3.0, 1e-8);
  EXPECT_NEAR(g[1], -4.0, 1e-8);
}

TEST(FdGradient, ForwardSchemeIsFirstOrder) {
  auto fn = [](const Vector& x) { return x[0] * x[0]; };
  FdSettings s;
  s.scheme = Scheme::forward;
  s.step = 1e-4;
  const Vector g = fd_gradient(fn, Vector{{1.0}}, s);
  // (1+h)^2 - 1 over h = 2 + h
  EXPECT_NEAR(g[0], 2.0 + 1e-4, 1e-9);
}

TEST(FdGradient, Example1ObjectiveAtStart) {
  const Problem p = example1();
  const Vector g = fd_gradient(p.objective, Vector{{3.0, 3.0}});
  // analytic: (-2(x1 - 1), 2 x2)
  EXPECT_NEAR(g[0], -4.0, 1e-8);
  EXPECT_NEAR(g[1], 6.0, 1e-8);
}

TEST(FdGradient, NonFiniteValueNamesCoordinate) {
  auto fn = [](const Vector& x) { return x[1] > 1.0 ? std::nan("") : 0.0; };
  try {
    fd_gradient(fn, Vector{{0.0, 1.0}});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("coordinate 1"), std::string::npos) << e.what();
  }
}

TEST(FdGradient, RejectsBadSettings) {
  FdSettings s;
  s.step = 0.0;
  EXPECT_THROW(fd_gradient([](const Vector&) { return 0.0; }, Vector::Zero(1), s), ParameterError);
}

TEST(FdJacobian, LinearMapRecoversMatrix) {
  Matrix a(3, 2);
  a << 1, 2, -3, 0.5, 4, -1;
  const Matrix j = fd_jacobian([&](const Vector& x) -> Vector { return a * x; }, Vector{{0.3, -2.0}});
  EXPECT_LE((j - a).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FdJacobian, Example1ConstraintsAtStart) {
  const Problem p = example1();
  const Matrix j = fd_jacobian(p.constraints, Vector{{3.0, 3.0}});
  Matrix expected(2, 2);
  expected << 6, 6, 2, 6;
  EXPECT_LE((j - expected).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(FdJacobian, NoOutputsGivesEmptyMatrix) {
  const Matrix j = fd_jacobian([](const Vector&) { return Vector(0); }, Vector{{1.0, 2.0}});
  EXPECT_EQ(j.rows(), 0);
  EXPECT_EQ(j.cols(), 2);
}

TEST(Compare, IdenticalPasses) {
  const Vector a{{1.0, -2.0}};
  const auto c = compare(a, a, 1e-5);
  EXPECT_EQ(c.max_rel_error, 0.0);
  EXPECT_TRUE(c.passed);
}

TEST(Compare, RelativeErrorFormula) {
  const auto c = compare(Vector{{1.0}}, Vector{{1.1}}, 1e-5);
  EXPECT_NEAR(c.max_rel_error, 0.05, 1e-12);
  EXPECT_FALSE(c.passed);
}

TEST(Compare, ShapeMismatchThrows) {
  EXPECT_THROW(compare(Vector::Zero(2), Vector::Zero(3), 1e-5), DimensionError);
  EXPECT_THROW(compare(Matrix::Zero(2, 2), Matrix::Zero(1, 4), 1e-5), DimensionError);
}

// Central differences are exact on quadratics up to round-off.
TEST(FdGradient, QuadraticsExactUpToRoundoff) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix q = test::random_symmetric(rng, 4);
    const Vector b = test::random_vector(rng, 4);
    const Vector x = test::random_vector(rng, 4);
    auto fn = [&](const Vector& y) { return 0.5 * y.dot(q * y) + b.dot(y) + 1.0; };
    const Vector g = fd_gradient(fn, x);
    EXPECT_LE((g - (q * x + b)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

}  // namespace
}  // namespace plag::numcheck

#pragma once

#include <plag/core.hpp>

#include <limits>
#include <optional>
#include <string>
#include <variant>

namespace plag {

struct WholeSpace {};

struct NonnegativeOrthant {};

/// Coordinate-wise bounds lo_i <= x_i <= hi_i. Either side may be infinite.
struct Box {
  Vector lower;
  Vector upper;

  Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
      throw DimensionError("box upper bound", lower.size(), upper.size());
    for (Index i = 0; i < lower.size(); ++i) {
      if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i])
        throw ParameterError("box bounds must satisfy lo <= hi (coordinate " +
                             std::to_string(i) + ")");
    }
  }

  /// Same scalar bounds on every coordinate.
  static Box uniform(Index n, double lo, double hi) {
    return Box(Vector::Constant(n, lo), Vector::Constant(n, hi));
  }
};

/// Closed Euclidean ball of the given center and radius.
struct Ball {
  Vector center;
  double radius;

  Ball(Vector c, double r) : center(std::move(c)), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw ParameterError("ball radius must be positive and finite");
  }
};

using ProjectionKind = std::variant<WholeSpace, Box, NonnegativeOrthant, Ball>;

/// Dimension fixed by the set itself, if any.
inline std::optional<Index> dimension(const ProjectionKind& kind) {
  if (const auto* box = std::get_if<Box>(&kind)) return box->lower.size();
  if (const auto* ball = std::get_if<Ball>(&kind)) return ball->center.size();
  return std::nullopt;
}

inline std::string kind_name(const ProjectionKind& kind) {
  struct Namer {
    std::string operator()(const WholeSpace&) const { return "whole"; }
    std::string operator()(const Box&) const { return "box"; }
    std::string operator()(const NonnegativeOrthant&) const { return "orthant"; }
    std::string operator()(const Ball&) const { return "ball"; }
  };
  return std::visit(Namer{}, kind);
}

/// Euclidean projection of v onto the set described by kind.
inline Vector project(const ProjectionKind& kind, const Vector& v) {
  if (auto n = dimension(kind)) require_size(v, *n, "project");

  struct Projector {
    const Vector& v;
    Vector operator()(const WholeSpace&) const { return v; }
    Vector operator()(const NonnegativeOrthant&) const {
      return v.cwiseMax(0.0);
    }
    Vector operator()(const Box& box) const {
      return v.cwiseMax(box.lower).cwiseMin(box.upper);
    }
    Vector operator()(const Ball& ball) const {
      const Vector d = v - ball.center;
      const double dist = d.norm();
      if (dist <= ball.radius) return v;
      return ball.center + d * (ball.radius / dist);
    }
  };
  return std::visit(Projector{v}, kind);
}

}  // namespace plag

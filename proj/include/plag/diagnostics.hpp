#pragma once

// Residuals, per-iteration trace records, the final KKT report, and a checker
// that replays the convergence inequalities over a recorded trace.

#include <plag/core.hpp>
#include <plag/iterate.hpp>
#include <plag/plagrangian.hpp>
#include <plag/problem.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace plag {

/// |x - P_X[x - grad_x L]| with a unit step inside the projection (not the
/// solver's step size).
inline double optimality_residual(const Problem& problem, const FullState& state) {
  const Vector g = grad_x(problem, state);
  return (state.x - problem.project(state.x - g)).norm();
}

/// |lambda - mu| / rho, which equals |c(x)| once lambda has been updated.
inline double feasibility_residual(const PenaltyParams& penalty, const FullState& state) {
  require_size(state.mu, state.lambda.size(), "feasibility_residual: mu");
  return (state.lambda - state.mu).norm() / penalty.rho();
}

struct TraceRecord {
  Index k = 0;
  double objective = 0.0;
  double feasibility = 0.0;
  double optimality = 0.0;
  double lagrangian = 0.0;
  double norm_x = 0.0;
  double norm_lambda = 0.0;
  double norm_mu = 0.0;
  double step_x_norm = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  // Full iterate, kept in memory for the invariant checker. Not part of the
  // CSV columns, so records read back from CSV leave these empty.
  Vector x;
  Vector z;
  Vector lambda;
  Vector mu;
  Vector constraints;
};

struct Trace {
  Index stride = 1;
  std::vector<TraceRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

inline TraceRecord make_record(const Problem& problem, const SolverParams& params,
                               const IterateState& state,
                               const std::optional<Vector>& previous_x = std::nullopt) {
  TraceRecord r;
  r.k = state.k;
  r.objective = problem.f(state.x);
  r.constraints = problem.c(state.x);
  r.feasibility = feasibility_residual(params.penalty, state);
  r.optimality = optimality_residual(problem, state);
  r.lagrangian = eval_full(problem, params.penalty, state);
  r.norm_x = state.x.norm();
  r.norm_lambda = state.lambda.norm();
  r.norm_mu = state.mu.norm();
  r.step_x_norm = previous_x ? (state.x - *previous_x).norm() : 0.0;
  r.gamma = state.gamma;
  r.delta = state.delta;
  r.x = state.x;
  r.z = state.z;
  r.lambda = state.lambda;
  r.mu = state.mu;
  return r;
}

struct Tolerances {
  double optimality = 1e-6;
  double feasibility = 1e-6;
};

struct KktReport {
  double optimality = 0.0;
  /// |c(x)|. Equal to |lambda - mu| / rho after the first lambda-update, but
  /// also correct for an initial state whose multipliers are still zero.
  double feasibility = 0.0;
  Vector multiplier;
  Vector x_final;
  bool satisfied = false;
};

inline KktReport kkt_report(const Problem& problem, const FullState& state,
                            const Tolerances& tols) {
  check_dimensions(problem, state);
  KktReport r;
  r.optimality = optimality_residual(problem, state);
  r.feasibility = problem.c(state.x).norm();
  r.multiplier = state.lambda;
  r.x_final = state.x;
  r.satisfied = r.optimality <= tols.optimality && r.feasibility <= tols.feasibility;
  return r;
}

// ---------------------------------------------------------------------------
// Trace invariants

struct InvariantViolation {
  std::string name;
  Index k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  /// Set for checks run in observe mode (not certified by Lipschitz hints).
  bool advisory = false;
};

/// Optional constants for the checks that need them.
struct CheckHints {
  std::optional<double> lagrangian_grad;  ///< L_p
  std::optional<double> constraint;       ///< L_c

  static CheckHints from(const LipschitzHints& h) { return {std::nullopt, h.c}; }
};

struct TraceCheck {
  std::vector<InvariantViolation> violations;
  std::vector<std::string> notices;

  bool clean() const { return violations.empty(); }

  std::size_t count(const std::string& name) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [&](const InvariantViolation& v) { return v.name == name; }));
  }

  std::size_t blocking() const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [](const InvariantViolation& v) { return !v.advisory; }));
  }
};

class TraceError : public Error {
 public:
  using Error::Error;
};

namespace tolerance {
inline constexpr double exact_relation = 1e-12;
inline constexpr double state_identity = 1e-10;
inline constexpr double trace_feasibility = 1e-8;
inline constexpr double schedule = 1e-12;
inline constexpr double inequality = 1e-12;
}  // namespace tolerance

namespace detail {

struct Collector {
  TraceCheck& out;

  /// Records a violation of lhs <= rhs + slack.
  void at_most(const std::string& name, Index k, double lhs, double rhs, double slack,
               bool advisory = false) {
    if (!(lhs <= rhs + slack) || std::isnan(lhs) || std::isnan(rhs))
      out.violations.push_back({name, k, lhs, rhs, lhs - rhs, advisory});
  }
};

inline double identity_gap(const TraceRecord& r, double rho) {
  return ((r.lambda - r.mu) - rho * r.constraints).norm();
}

inline double identity_scale(const TraceRecord& r, double rho) {
  return 1.0 + r.lambda.norm() + r.mu.norm() + rho * r.constraints.norm();
}

inline bool identity_holds(const TraceRecord& r, double rho) {
  return identity_gap(r, rho) <= tolerance::state_identity * identity_scale(r, rho);
}

inline void require_full(const TraceRecord& r) {
  if (r.x.size() == 0 || r.mu.size() != r.lambda.size() || r.z.size() != r.lambda.size() ||
      r.constraints.size() != r.lambda.size())
    throw TraceError("trace record " + std::to_string(r.k) +
                     " does not carry the full iterate");
}

}  // namespace detail

/// Replays every checkable convergence inequality over a recorded trace.
///
/// Per record: the bound on |mu_k|, the delta schedule, and for k >= 1 the
/// identities lambda_k - mu_k = rho c(x_k) = alpha z_k. Per consecutive pair:
/// the mu-step bounds, the exact |mu_{k+1} - lambda_k| relation, the
/// lambda-step bound (needs L_c) and the approximate decrease of L (strict
/// form needs L_p and L_c certifying eta > L_p + 2 rho L_c^2; otherwise the
/// weaker observed form, reported as advisory).
///
/// The lambda-step and decrease checks of pair (k, k+1) assume
/// lambda_k - mu_k = rho c(x_k). That holds for all k >= 1 but generally not
/// for the initial state, so such pairs are skipped with a notice.
inline TraceCheck check_trace(const Trace& trace, const SolverParams& params,
                              const CheckHints& hints = {}) {
  TraceCheck out;
  if (trace.empty()) throw TraceError("trace is empty");
  detail::Collector collect{out};

  const double rho = params.penalty.rho();
  const double alpha = params.penalty.alpha();
  const double eta = 1.0 / params.step_size;
  const auto& recs = trace.records;

  for (std::size_t i = 1; i < recs.size(); ++i) {
    const Index step = recs[i].k - recs[i - 1].k;
    const bool last = i + 1 == recs.size();
    if (step <= 0 || (trace.stride == 1 && step != 1) ||
        (trace.stride > 1 && step != trace.stride && !(last && step < trace.stride)))
      throw TraceError("non-consecutive trace: record " + std::to_string(i) + " has k=" +
                       std::to_string(recs[i].k) + " after k=" +
                       std::to_string(recs[i - 1].k));
  }
  for (const auto& r : recs) detail::require_full(r);

  const bool have_lc = hints.constraint.has_value();
  std::optional<double> decrease_coeff;
  if (hints.lagrangian_grad && hints.constraint) {
    const double lc = *hints.constraint;
    const double c = 0.5 * (eta - *hints.lagrangian_grad - 2.0 * rho * lc * lc);
    if (c > 0.0) decrease_coeff = c;
  }
  if (!have_lc) out.notices.push_back("lambda_step: skipped (no L_c hint)");
  if (decrease_coeff) {
    out.notices.push_back("decrease: strict mode (eta certified by L_p, L_c)");
  } else {
    out.notices.push_back("decrease: observe mode (eta not certified by hints)");
  }

  const bool starts_at_zero = recs.front().k == 0;
  const double mu0_norm = recs.front().mu.norm();
  if (!starts_at_zero) out.notices.push_back("mu_bound: skipped (trace does not start at k=0)");

  for (const auto& r : recs) {
    if (starts_at_zero) {
      const double budget = 0.5 * params.delta0 *
                            (1.0 - std::pow(params.decay, static_cast<double>(r.k))) /
                            (1.0 - params.decay);
      const double rhs = mu0_norm + budget;
      collect.at_most("mu_bound", r.k, r.mu.norm(), rhs,
                      tolerance::inequality * (1.0 + rhs));
    }
    const double expected_delta = params.delta_at(r.k);
    collect.at_most("delta_schedule", r.k, std::abs(r.delta - expected_delta), 0.0,
                    tolerance::schedule * expected_delta);
    if (r.feasibility < 0.0 || r.optimality < 0.0)
      collect.at_most("nonnegative_residuals", r.k, -std::min(r.feasibility, r.optimality),
                      0.0, 0.0);
    if (r.k >= 1) {
      const double scale = detail::identity_scale(r, rho);
      const Vector rho_c = rho * r.constraints;
      collect.at_most("lambda_mu_identity", r.k, ((r.lambda - r.mu) - rho_c).norm(), 0.0,
                      tolerance::state_identity * scale);
      collect.at_most("z_identity", r.k, (alpha * r.z - rho_c).norm(), 0.0,
                      tolerance::state_identity * (scale + alpha * r.z.norm()));
      const double cn = r.constraints.norm();
      collect.at_most("trace_feasibility", r.k, std::abs(r.feasibility - cn), 0.0,
                      tolerance::trace_feasibility * (1.0 + cn));
    }
  }

  bool skipped_pair_notice = false;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const TraceRecord& cur = recs[i];
    const TraceRecord& nxt = recs[i + 1];
    if (nxt.k != cur.k + 1) continue;
    const Index k = cur.k;
    const double delta_k = cur.delta;
    const double ratio = nxt.gamma / rho;  // gamma_k / rho
    const double gap_sq = (cur.lambda - cur.mu).squaredNorm();

    const double dmu_sq = (nxt.mu - cur.mu).squaredNorm();
    const double mid = ratio * gap_sq;
    collect.at_most("mu_step", k, dmu_sq, mid, tolerance::inequality * (1.0 + mid));
    collect.at_most("mu_step_budget", k, mid, delta_k, tolerance::inequality * (1.0 + delta_k));

    const double lhs_c = (nxt.mu - cur.lambda).norm();
    const double rhs_c = (1.0 - ratio) * std::sqrt(gap_sq);
    const double scale_c = 1.0 + cur.lambda.norm() + cur.mu.norm() + nxt.mu.norm();
    collect.at_most("mu_lambda_gap", k, std::abs(lhs_c - rhs_c), 0.0,
                    tolerance::exact_relation * scale_c);

    if (!detail::identity_holds(cur, rho)) {
      if (!skipped_pair_notice) {
        out.notices.push_back("lambda_step/decrease: skipped at k=" + std::to_string(k) +
                              " (lambda_k - mu_k != rho c(x_k))");
        skipped_pair_notice = true;
      }
      continue;
    }
    const double dx_sq = (nxt.x - cur.x).squaredNorm();
    if (have_lc) {
      const double lc = *hints.constraint;
      const double rhs = 2.0 * rho * rho * lc * lc * dx_sq + 2.0 * delta_k;
      collect.at_most("lambda_step", k, (nxt.lambda - cur.lambda).squaredNorm(), rhs,
                      tolerance::inequality * (1.0 + rhs));
    }
    const double slack = tolerance::inequality * (1.0 + std::abs(cur.lagrangian));
    if (decrease_coeff) {
      const double rhs = cur.lagrangian - *decrease_coeff * dx_sq + 2.0 * delta_k / rho;
      collect.at_most("sufficient_decrease", k, nxt.lagrangian, rhs, slack);
    } else {
      const double rhs = cur.lagrangian + 2.0 * delta_k / rho;
      collect.at_most("observed_decrease", k, nxt.lagrangian, rhs, slack, true);
    }
  }
  return out;
}

struct SuccessiveDifferences {
  double dx = 0.0;
  double dz = 0.0;
  double dlambda = 0.0;
  double dmu = 0.0;
  std::size_t pairs = 0;

  double max() const { return std::max({dx, dz, dlambda, dmu}); }
};

/// Maxima of the successive differences over the last `window` consecutive pairs.
inline SuccessiveDifferences successive_difference_maxima(const Trace& trace,
                                                          std::size_t window = 100) {
  SuccessiveDifferences d;
  const auto& recs = trace.records;
  if (recs.size() < 2) return d;
  const std::size_t first = recs.size() - 1 > window ? recs.size() - 1 - window : 0;
  for (std::size_t i = first; i + 1 < recs.size(); ++i) {
    const auto& a = recs[i];
    const auto& b = recs[i + 1];
    detail::require_full(a);
    detail::require_full(b);
    d.dx = std::max(d.dx, (b.x - a.x).norm());
    d.dz = std::max(d.dz, (b.z - a.z).norm());
    d.dlambda = std::max(d.dlambda, (b.lambda - a.lambda).norm());
    d.dmu = std::max(d.dmu, (b.mu - a.mu).norm());
    ++d.pairs;
  }
  return d;
}

/// Violations of max |successive difference| <= bound over the final window.
inline std::vector<InvariantViolation> check_vanishing_differences(const Trace& trace,
                                                                   double bound,
                                                                   std::size_t window = 100) {
  if (trace.stride != 1) throw TraceError("vanishing-difference check needs stride 1");
  std::vector<InvariantViolation> out;
  const auto d = successive_difference_maxima(trace, window);
  const Index k = trace.empty() ? 0 : trace.records.back().k;
  const std::pair<const char*, double> items[] = {
      {"vanishing_dx", d.dx}, {"vanishing_dz", d.dz},
      {"vanishing_dlambda", d.dlambda}, {"vanishing_dmu", d.dmu}};
  for (const auto& [name, value] : items)
    if (!(value <= bound)) out.push_back({name, k, value, bound, value - bound, false});
  return out;
}

/// max over pairs of |z_{k+1}| / (alpha |z_{k+1} - z_k|). Diagnostic only.
inline std::optional<double> perturbation_ratio_max(const Trace& trace, double alpha) {
  std::optional<double> best;
  const auto& recs = trace.records;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const double denom = alpha * (recs[i + 1].z - recs[i].z).norm();
    if (denom <= 0.0) continue;
    const double ratio = recs[i + 1].z.norm() / denom;
    if (!best || ratio > *best) best = ratio;
  }
  return best;
}

}  // namespace plag

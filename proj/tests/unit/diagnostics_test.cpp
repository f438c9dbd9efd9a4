#include <plag/diagnostics.hpp>
#include <plag/problems.hpp>
#include <plag/solver.hpp>
#include <plag/trace_csv.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace plag {
namespace {

SolverParams fig1_params() {
  SolverParams p;
  p.penalty = PenaltyParams(2000.0, 0.5);
  p.step_size = 0.002;
  p.delta0 = 1.0;
  p.decay = 0.999;
  return p;
}

const SolveOutcome& example1_run() {
  static const SolveOutcome out = solve(example1(), fig1_params(), Vector{{3.0, 3.0}});
  return out;
}

TEST(OptimalityResidual, InteriorStationaryPointIsZero) {
  // example3 objective is stationary at 0 with lambda = 0; use whole-space copy
  Problem p = example3();
  p.projection = nullptr;
  EXPECT_EQ(optimality_residual(p, FullState::at(Vector::Zero(2), 2)), 0.0);
}

TEST(OptimalityResidual, WholeSpaceIsGradientNorm) {
  Problem p = example1();
  p.projection = nullptr;
  FullState s = FullState::at(Vector{{0.5, 0.5}}, 2);
  s.lambda = Vector{{0.2, -0.7}};
  EXPECT_DOUBLE_EQ(optimality_residual(p, s), grad_x(p, s).norm());
}

TEST(OptimalityResidual, UsesUnitStep) {
  // at (3,3), grad f = (-4, 6): x - grad = (7, -3) -> box (3, -3); residual 6
  EXPECT_DOUBLE_EQ(optimality_residual(example1(), FullState::at(Vector{{3.0, 3.0}}, 2)), 6.0);
}

TEST(OptimalityResidual, Example1ConvergedRun) {
  const auto& out = example1_run();
  ASSERT_EQ(out.status, Status::Converged);
  FullState at_opt = out.final_state;
  at_opt.x = Vector{{1.0, 0.0}};
  EXPECT_LE(optimality_residual(example1(), at_opt), 1e-3);
}

TEST(FeasibilityResidual, Cases) {
  const PenaltyParams two(4.0, 0.25);
  FullState s = FullState::at(Vector::Zero(1), 2);
  s.lambda = Vector{{1.0, 2.0}};
  s.mu = s.lambda;
  EXPECT_EQ(feasibility_residual(two, s), 0.0);
  s.lambda = Vector{{3.0, 4.0}};
  s.mu = Vector::Zero(2);
  EXPECT_DOUBLE_EQ(feasibility_residual(two, s), 2.5);
}

TEST(FeasibilityResidual, MatchesConstraintNormAlongTrace) {
  for (const auto& r : example1_run().trace.records) {
    if (r.k == 0) continue;
    const double cn = r.constraints.norm();
    EXPECT_LE(std::abs(r.feasibility - cn), 1e-8 * (1.0 + cn)) << r.k;
  }
}

TEST(KktReport, ConvergedExample2) {
  SolverParams params = fig1_params();
  params.step_size = 0.005;
  params.delta0 = 0.5;
  const auto out = solve(example2(), params, Vector{{4.0, 4.0, 4.0}});
  const auto report = kkt_report(example2(), out.final_state, {1e-6, 1e-6});
  EXPECT_TRUE(report.satisfied);
  EXPECT_LE((report.x_final - Vector{{0.0, 0.0, 8.0}}).norm(), 1e-2);
  EXPECT_EQ(report.multiplier, out.final_state.lambda);
}

TEST(KktReport, InfeasibleStartNotSatisfied) {
  const auto r = kkt_report(example1(), FullState::at(Vector{{3.0, 3.0}}, 2), {1e-6, 1e-6});
  EXPECT_FALSE(r.satisfied);
  EXPECT_GT(r.feasibility, 1.0);
}

TEST(KktReport, FeasibleButNotStationary) {
  // (1,0) is the only feasible point of example1; with lambda = 0 the
  // gradient of f is zero there, so shift to example3's feasible (2,0):
  // grad f(2,0) = (4, -8), J^T 0 = 0, so the residual is nonzero.
  const auto r = kkt_report(example3(), FullState::at(Vector{{2.0, 0.0}}, 2), {1e-6, 1e-6});
  EXPECT_EQ(r.feasibility, 0.0);
  EXPECT_GT(r.optimality, 1.0);
  EXPECT_FALSE(r.satisfied);
}

TEST(KktReport, MonotoneInTolerances) {
  const auto& out = example1_run();
  const Problem p = example1();
  for (const auto& rec : out.trace.records) {
    FullState s{rec.x, rec.z, rec.lambda, rec.mu};
    for (double tol : {1e-8, 1e-6, 1e-3}) {
      if (!kkt_report(p, s, {tol, tol}).satisfied) continue;
      EXPECT_TRUE(kkt_report(p, s, {tol * 10, tol * 10}).satisfied);
    }
  }
}

TEST(CheckTrace, CorrectRunIsClean) {
  const auto& out = example1_run();
  const auto check = check_trace(out.trace, fig1_params());
  EXPECT_TRUE(check.clean()) << check.violations.front().name << " at k=" << check.violations.front().k;
  EXPECT_FALSE(check.notices.empty());
}

TEST(CheckTrace, LcHintEnablesLambdaStep) {
  // |J| over the box [-3,3]^2 is bounded by the Frobenius bound sqrt(4*9*3 + 4*25)
  const auto check = check_trace(example1_run().trace, fig1_params(), {std::nullopt, std::sqrt(208.0)});
  EXPECT_TRUE(check.clean());
  for (const auto& n : check.notices) EXPECT_EQ(n.find("lambda_step: skipped (no L_c"), std::string::npos);
}

TEST(CheckTrace, PerturbedMuViolatesBound) {
  Trace trace = example1_run().trace;
  auto& r = trace.records[5];
  r.mu = Vector{{1e4, 0.0}};
  const auto check = check_trace(trace, fig1_params());
  EXPECT_GE(check.count("mu_bound"), 1u);
  const auto it = std::find_if(check.violations.begin(), check.violations.end(),
                               [](const auto& v) { return v.name == "mu_bound"; });
  EXPECT_EQ(it->k, 5);
  EXPECT_GT(it->margin, 0.0);
}

TEST(CheckTrace, SingleRecordIsClean) {
  Trace trace;
  trace.records.push_back(example1_run().trace.records.front());
  EXPECT_TRUE(check_trace(trace, fig1_params()).clean());
}

TEST(CheckTrace, BrokenIdentityDetected) {
  Trace trace = example1_run().trace;
  trace.records[3].lambda[0] += 1e-3;
  const auto check = check_trace(trace, fig1_params());
  EXPECT_GE(check.count("lambda_mu_identity"), 1u);
}

TEST(CheckTrace, InflatedLagrangianDetected) {
  Trace trace = example1_run().trace;
  trace.records[10].lagrangian += 100.0;
  const auto check = check_trace(trace, fig1_params());
  EXPECT_EQ(check.count("observed_decrease"), 1u);
  EXPECT_TRUE(check.violations.front().advisory);
  EXPECT_EQ(check.blocking(), 0u);
}

TEST(CheckTrace, StrictModeWhenCertified) {
  Trace trace = example1_run().trace;
  trace.records[10].lagrangian += 100.0;
  // fake constants small enough that eta = 500 > L_p + 2 rho L_c^2
  const auto check = check_trace(trace, fig1_params(), {1.0, 1.0});
  EXPECT_GE(check.count("sufficient_decrease"), 1u);
  EXPECT_GE(check.blocking(), 1u);
}

TEST(CheckTrace, NonConsecutiveTraceRejected) {
  Trace trace = example1_run().trace;
  trace.records.erase(trace.records.begin() + 4);
  EXPECT_THROW(check_trace(trace, fig1_params()), TraceError);
  EXPECT_THROW(check_trace(Trace{}, fig1_params()), TraceError);
}

TEST(CheckTrace, StridedTraceChecksPerRecordOnly) {
  SolverParams params = fig1_params();
  params.trace_stride = 7;
  const auto out = solve(example1(), params, Vector{{3.0, 3.0}});
  const auto check = check_trace(out.trace, params);
  EXPECT_TRUE(check.clean());
}

TEST(VanishingDifferences, ConvergedRunBelowBound) {
  SolverParams params = fig1_params();
  params.tol_optimality = params.tol_feasibility = 1e-8;
  const auto out = solve(example1(), params, Vector{{3.0, 3.0}});
  ASSERT_EQ(out.status, Status::Converged);
  const auto d = successive_difference_maxima(out.trace, 100);
  EXPECT_EQ(d.pairs, 100u);
  EXPECT_LE(d.max(), 1e-5);
  EXPECT_TRUE(check_vanishing_differences(out.trace, 1e-5).empty());
  EXPECT_EQ(check_vanishing_differences(out.trace, 1e-12).size(), 4u);
}

TEST(Trace, CsvRoundTrip) {
  const auto& trace = example1_run().trace;
  std::stringstream ss;
  write_trace_csv(ss, trace);
  std::string header;
  std::getline(std::stringstream(ss.str()), header);
  EXPECT_EQ(header,
            "k,objective,feasibility,optimality,lagrangian,norm_x,norm_lambda,norm_mu,step_x_norm,"
            "gamma,delta");
  const auto back = read_trace_csv(ss);
  ASSERT_EQ(back.size(), trace.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& a = trace.records[i];
    const auto& b = back[i];
    EXPECT_EQ(a.k, b.k);
    for (auto [x, y] : {std::pair{a.objective, b.objective}, {a.feasibility, b.feasibility},
                        {a.optimality, b.optimality}, {a.lagrangian, b.lagrangian},
                        {a.norm_x, b.norm_x}, {a.norm_lambda, b.norm_lambda},
                        {a.norm_mu, b.norm_mu}, {a.step_x_norm, b.step_x_norm},
                        {a.gamma, b.gamma}, {a.delta, b.delta}})
      EXPECT_EQ(x, y);
  }
}

TEST(Trace, CsvRejectsBadHeader) {
  std::stringstream ss("k,objective\n0,1\n");
  EXPECT_THROW(read_trace_csv(ss), ParseError);
}

TEST(Trace, RecordsCarryScheduleAndSteps) {
  const auto& recs = example1_run().trace.records;
  EXPECT_EQ(recs[0].gamma, 0.0);
  EXPECT_EQ(recs[0].step_x_norm, 0.0);
  EXPECT_DOUBLE_EQ(recs[1].step_x_norm, (recs[1].x - recs[0].x).norm());
  EXPECT_DOUBLE_EQ(recs[3].delta, std::pow(0.999, 3));
}

}  // namespace
}  // namespace plag

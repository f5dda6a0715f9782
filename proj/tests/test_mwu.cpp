#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cutcover;

namespace {

// Explicit cut-covering instance: rows are edges, one column per cut with
// coefficient 1/(k*c_e) on each crossing edge.
ExplicitInstance cut_instance(const Graph& g, int k) {
  std::vector<SparseColumn> cols;
  for_each_cut(g, EdgeWeights(static_cast<std::size_t>(g.num_edges()), 0.0), [&](const std::vector<char>& in, double) {
    SparseColumn c;
    for (int e : cut_edges(g, in)) {
      c.rows.push_back(e);
      c.coef.push_back(1.0 / (k * g.edge(e).cost));
    }
    cols.push_back(std::move(c));
  });
  return ExplicitInstance(static_cast<std::size_t>(g.num_edges()), std::move(cols));
}

double solve_explicit(const Graph& g, int k, double eps_target, std::vector<double>* y_out = nullptr) {
  const ExplicitInstance inst = cut_instance(g, k);
  const SolverOptions opts = options_for(eps_target);
  ExplicitDriver driver(inst);
  const SolveResult r = run_solver(inst.rows(), opts, driver);
  const auto y = extract_covering_solution(r.y, g.costs());
  double bound = 0.0;
  for (int e = 0; e < g.num_edges(); ++e) bound += g.edge(e).cost * y[static_cast<std::size_t>(e)];
  if (y_out) *y_out = y;
  return bound;
}

}  // namespace

TEST(Focus, SingleEntry) {
  const auto inst = ExplicitInstance::from_dense({{1.0}});
  DualState s = fixtures::state_with({1.0}, 0.5, 1.0);
  SolverOptions opts;
  MwuMonitor mon(opts, 1);
  focus(inst, {0}, s, mon);
  EXPECT_DOUBLE_EQ(s.w[0], 1.5);
  EXPECT_DOUBLE_EQ(s.cong[0], 0.5);
  EXPECT_EQ(mon.stats.iterations, 1);
}

TEST(Focus, EmptyBatchIsNoOp) {
  const auto inst = ExplicitInstance::from_dense({{1.0}});
  DualState s = fixtures::state_with({1.0}, 0.5, 1.0);
  SolverOptions opts;
  MwuMonitor mon(opts, 1);
  focus(inst, {}, s, mon);
  EXPECT_DOUBLE_EQ(s.w[0], 1.0);
  EXPECT_DOUBLE_EQ(s.cong[0], 0.0);
  EXPECT_EQ(mon.stats.iterations, 0);
  EXPECT_EQ(mon.stats.focus_calls, 0);
}

TEST(Focus, BoundaryIsStrict) {
  const auto inst = ExplicitInstance::from_dense({{1.0}, {1.0}});
  DualState s = fixtures::state_with({1.0, 1.0}, 0.5, 2.0);
  SolverOptions opts;
  MwuMonitor mon(opts, 2);
  focus(inst, {0}, s, mon);
  EXPECT_DOUBLE_EQ(s.w[0], 1.5);
  EXPECT_DOUBLE_EQ(s.w[1], 1.5);
  EXPECT_EQ(mon.stats.iterations, 1);
}

TEST(Focus, RejectsColumnAtThreshold) {
  const auto inst = ExplicitInstance::from_dense({{1.0}});
  DualState s = fixtures::state_with({1.5}, 0.5, 1.0);
  SolverOptions opts;
  MwuMonitor mon(opts, 1);
  EXPECT_THROW(focus(inst, {0}, s, mon), ContractViolation);
}

TEST(Focus, ClearsEveryColumn) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CounterRng rng(seed, 1);
    const std::size_t m = 2 + rng.uniform_int(6), n = 1 + rng.uniform_int(6);
    std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) a[rng.uniform_int(m)][j] = 1.0;
    for (auto& row : a)
      for (double& x : row)
        if (rng.uniform_int(3) == 0) x = rng.uniform(0.1, 2.0);
    const auto inst = ExplicitInstance::from_dense(a);
    DualState s(m, 0.2);
    s.lambda = inst.min_column_weight(s.w);
    SolverOptions opts;
    MwuMonitor mon(opts, m);
    std::vector<std::size_t> batch(n);
    for (std::size_t j = 0; j < n; ++j) batch[j] = j;
    std::erase_if(batch, [&](std::size_t j) { return !(inst.column_weight(j, s.w) < s.threshold()); });
    focus(inst, batch, s, mon);
    if (s.exhausted()) continue;
    for (std::size_t j : batch) EXPECT_GE(inst.column_weight(j, s.w), s.threshold());
  }
}

TEST(DualState, Eta) {
  DualState s(8, 0.5);
  EXPECT_NEAR(s.eta(), std::log(8.0) / 0.5, 1e-12);
  EXPECT_NEAR(s.eta(), 4.1589, 1e-4);
}

TEST(DualState, RejectsBadAccuracy) {
  EXPECT_THROW(DualState(3, 0.0), ValidationError);
  EXPECT_THROW(DualState(3, 1.0), ValidationError);
  EXPECT_THROW(DualState(0, 0.1), ValidationError);
}

TEST(DualState, RescaleKeepsRatios) {
  DualState s = fixtures::state_with({1e10, 3e10, 2.0}, 0.1, 5e9);
  const double ratio = s.w[1] / s.lambda;
  s.rescale();
  EXPECT_EQ(s.scale_exponent, 1);
  EXPECT_DOUBLE_EQ(s.w[1] / s.lambda, ratio);
  EXPECT_NEAR(s.log_weight(0), std::log(1e10), 1e-9);
}

TEST(EpochAdvance, GrowsLambda) {
  DualState s = fixtures::state_with({1.0}, 0.25, 1.0);
  epoch_advance(s);
  EXPECT_DOUBLE_EQ(s.lambda, 1.25);
  DualState t(2, 0.4);
  t.lambda = 1.0;
  epoch_advance(t);
  EXPECT_DOUBLE_EQ(t.lambda, 1.4);
}

TEST(EpochAdvance, SnapshotReplacedWhenBetter) {
  DualState s = fixtures::state_with({1.5, 1.5}, 0.2, 1.25);  // 3 / 1.5 = 2
  s.best_value = 2.5;
  epoch_advance(s);
  EXPECT_DOUBLE_EQ(s.best_value, 2.0);
  ASSERT_EQ(s.best_y.size(), 2u);
  EXPECT_DOUBLE_EQ(s.best_y[0], 1.0);
}

TEST(EpochAdvance, SnapshotKeptWhenWorse) {
  DualState s = fixtures::state_with({2.25, 2.25}, 0.2, 1.25);  // 4.5 / 1.5 = 3
  s.best_value = 2.5;
  s.best_y = {7.0, 7.0};
  epoch_advance(s);
  EXPECT_DOUBLE_EQ(s.best_value, 2.5);
  EXPECT_DOUBLE_EQ(s.best_y[0], 7.0);
}

TEST(ExtractCovering, Examples) {
  const std::vector<double> single{10.0}, cost5{5.0};
  EXPECT_DOUBLE_EQ(extract_covering_solution(single, cost5)[0], 2.0);
  const std::vector<double> ones{1, 1, 1};
  const auto y = extract_covering_solution(ones, ones);
  const Graph k3 = fixtures::triangle();
  EXPECT_GE(exact_min_cut_bruteforce(k3, y).value, 2.0);
  const std::vector<double> tens{10, 10, 10};
  const auto z = extract_covering_solution(ones, tens);
  for (double v : z) EXPECT_DOUBLE_EQ(v, 0.1);
}

TEST(RunSolver, TriangleEnvelope) {
  std::vector<double> y;
  const double bound = solve_explicit(fixtures::triangle(), 2, 0.05, &y);
  EXPECT_GE(bound, 3.0 * (1 - 1e-9));
  EXPECT_LE(bound, 3.15);
  EXPECT_GE(exact_min_cut_bruteforce(fixtures::triangle(), y).value, 2.0 * (1 - 1e-9));
}

TEST(RunSolver, SingleEdgeEnvelope) {
  const double bound = solve_explicit(fixtures::single_edge(), 2, 0.05);
  EXPECT_GE(bound, 10.0 * (1 - 1e-9));
  EXPECT_LE(bound, 10.5);
}

TEST(RunSolver, EpochCountWithinBound) {
  const ExplicitInstance inst = cut_instance(fixtures::complete(5), 2);
  const SolverOptions opts = options_for(0.2);
  ExplicitDriver driver(inst);
  const SolveResult r = run_solver(inst.rows(), opts, driver);
  EXPECT_LE(static_cast<double>(r.stats.epochs), r.stats.epoch_bound);
  EXPECT_GE(r.stats.final_max_cong, std::log(10.0) / opts.eps);
  EXPECT_GT(r.stats.iterations, 0);
  for (std::size_t i = 1; i < r.stats.lambda_trajectory.size(); ++i)
    EXPECT_NEAR(r.stats.lambda_trajectory[i] / r.stats.lambda_trajectory[i - 1], 1.0 + opts.eps, 1e-12);
}

TEST(RunSolver, IterationBudget) {
  const ExplicitInstance inst = cut_instance(fixtures::complete(5), 2);
  SolverOptions opts = options_for(0.1);
  opts.max_iterations = 5;
  ExplicitDriver driver(inst);
  EXPECT_THROW(run_solver(inst.rows(), opts, driver), BudgetExceeded);
}

TEST(RunSolver, TraceSeesEveryIteration) {
  const ExplicitInstance inst = cut_instance(fixtures::cycle(4), 2);
  SolverOptions opts = options_for(0.3);
  long long records = 0;
  opts.trace = [&](const TraceRecord& r) {
    ++records;
    EXPECT_GT(r.focus_size, 0u);
  };
  ExplicitDriver driver(inst);
  const SolveResult r = run_solver(inst.rows(), opts, driver);
  EXPECT_EQ(records, r.stats.iterations);
}

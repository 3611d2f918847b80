#include <gtest/gtest.h>

#include "ptts/flow.hpp"
#include "ptts/oracle.hpp"

using namespace ptts;

namespace {

FlowNetwork two_parallel_paths() {
  // S=0, A=1, B=2, T=3: S->A->T at cost 0 and S->B->T at cost 1, capacity 6.
  FlowNetwork n(4);
  n.supplies = {10, 0, 0, -10};
  n.add_edge(0, 1, 0, 6, 0);
  n.add_edge(1, 3, 0, 6, 0);
  n.add_edge(0, 2, 0, 6, 1);
  n.add_edge(2, 3, 0, 6, 0);
  return n;
}

}  // namespace

TEST(FlowNetwork, ValidateRejectsMalformed) {
  FlowNetwork n(2);
  n.supplies = {1, 0};
  EXPECT_THROW(n.validate(), std::invalid_argument);
  n.supplies = {0, 0};
  n.add_edge(0, 0, 0, 1);
  EXPECT_NO_THROW(n.validate());
  n.edges = {{0, 1, 3, 2, 0}};
  EXPECT_THROW(n.validate(), std::invalid_argument);
  n.edges = {{0, 5, 0, 2, 0}};
  EXPECT_THROW(n.validate(), std::invalid_argument);
}

TEST(Reduce, ZeroLowerBoundsIsIdentity) {
  const FlowNetwork n = two_parallel_paths();
  const ReducedNetwork r = reduce_lower_bounds(n);
  EXPECT_EQ(r.network, n);
  EXPECT_EQ(r.base_cost, 0);
  EXPECT_EQ(r.base_flows, std::vector<std::int64_t>(4, 0));
}

TEST(Reduce, ForcedEdge) {
  FlowNetwork n(2);
  n.supplies = {5, -5};
  n.add_edge(0, 1, 5, 5, 2);
  const ReducedNetwork r = reduce_lower_bounds(n);
  EXPECT_EQ(r.network.edges[0].upper, 0);
  EXPECT_EQ(r.network.supplies, (std::vector<std::int64_t>{0, 0}));
  EXPECT_EQ(r.base_flows[0], 5);
  EXPECT_EQ(r.base_cost, 10);
}

TEST(Reduce, ComposedSolutionRespectsOriginalBounds) {
  FlowNetwork n(4);
  n.supplies = {7, 0, 0, -7};
  n.add_edge(0, 1, 2, 5, 1);
  n.add_edge(0, 2, 1, 4, 0);
  n.add_edge(1, 3, 0, 6, 0);
  n.add_edge(2, 3, 3, 3, 0);
  n.add_edge(1, 2, 0, 2, 0);
  const ReducedNetwork r = reduce_lower_bounds(n);
  auto reduced = solve_min_cost_flow(r.network);
  ASSERT_TRUE(reduced);
  std::vector<std::int64_t> composed(n.edges.size());
  for (std::size_t k = 0; k < n.edges.size(); ++k) composed[k] = r.base_flows[k] + reduced->flows[k];
  for (std::size_t k = 0; k < n.edges.size(); ++k) {
    EXPECT_GE(composed[k], n.edges[k].lower);
    EXPECT_LE(composed[k], n.edges[k].upper);
  }
  EXPECT_EQ(r.base_cost + reduced->objective, *brute_force_min_cost(n));
}

TEST(Solve, ForcedFlowUnique) {
  FlowNetwork n(3);
  n.supplies = {4, 0, -4};
  n.add_edge(0, 1, 4, 4, 3);
  n.add_edge(1, 2, 4, 4, -1);
  auto s = solve_min_cost_flow(n);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->flows, (std::vector<std::int64_t>{4, 4}));
  EXPECT_EQ(s->objective, 8);
  EXPECT_TRUE(check_certificate(n, *s));
}

TEST(Solve, TwoParallelPathsPrefersCheapOne) {
  const FlowNetwork n = two_parallel_paths();
  EXPECT_EQ(brute_force_min_cost(n), 4);  // oracle first
  auto s = solve_min_cost_flow(n);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->flows, (std::vector<std::int64_t>{6, 6, 4, 4}));
  EXPECT_EQ(s->objective, 4);
  EXPECT_TRUE(check_certificate(n, *s));
}

TEST(Solve, CapacityCutIsInfeasible) {
  FlowNetwork n(2);
  n.supplies = {10, -10};
  n.add_edge(0, 1, 0, 5);
  EXPECT_FALSE(solve_min_cost_flow(n).has_value());
  EXPECT_FALSE(is_feasible(n));
}

TEST(Solve, NegativeCycleIsSaturated) {
  // Cycle 0->1->2->0 with total cost -3 and no supplies: optimum runs the
  // cycle at capacity.
  FlowNetwork n(3);
  n.add_edge(0, 1, 0, 4, -1);
  n.add_edge(1, 2, 0, 3, -1);
  n.add_edge(2, 0, 0, 5, -1);
  EXPECT_EQ(brute_force_min_cost(n), -9);
  auto s = solve_min_cost_flow(n);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->objective, -9);
  EXPECT_TRUE(check_certificate(n, *s));
}

TEST(Solve, CertificateRejectsSuboptimalFlow) {
  const FlowNetwork n = two_parallel_paths();
  auto s = solve_min_cost_flow(n);
  ASSERT_TRUE(s);
  FlowSolution worse = *s;
  worse.flows = {4, 4, 6, 6};
  worse.objective = 6;
  EXPECT_FALSE(check_certificate(n, worse));
}

TEST(Feasible, ZeroSupplyNetwork) {
  FlowNetwork n(3);
  n.add_edge(0, 1, 0, 5);
  n.add_edge(1, 2, 0, 5);
  EXPECT_TRUE(is_feasible(n));
}

TEST(Feasible, ForcedFlowsThatCannotBalance) {
  FlowNetwork n(3);
  n.add_edge(0, 1, 3, 3);
  n.add_edge(1, 2, 2, 2);
  n.add_edge(2, 0, 3, 3);
  EXPECT_FALSE(is_feasible(n));
  EXPECT_FALSE(brute_force_min_cost(n).has_value());
}

TEST(Solve, LargeSuppliesStayExact) {
  const std::int64_t big = std::int64_t{1} << 40;
  FlowNetwork n(3);
  n.supplies = {big, 0, -big};
  n.add_edge(0, 1, 0, big, 1);
  n.add_edge(1, 2, 0, big, 1);
  n.add_edge(0, 2, 0, big / 2, 3);
  auto s = solve_min_cost_flow(n);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->objective, 2 * big);
  EXPECT_TRUE(check_certificate(n, *s));
}

TEST(Solve, SolverInstanceReusable) {
  MinCostFlowSolver solver;
  const FlowNetwork a = two_parallel_paths();
  FlowNetwork b(2);
  b.supplies = {10, -10};
  b.add_edge(0, 1, 0, 5);
  EXPECT_EQ(solver.solve(a)->objective, 4);
  EXPECT_FALSE(solver.solve(b).has_value());
  EXPECT_EQ(solver.solve(a)->objective, 4);
}

TEST(Solve, SelfLoopsSitAtTheirCheapestBound) {
  FlowNetwork n(2);
  n.supplies = {3, -3};
  n.add_edge(0, 1, 0, 3, 1);
  n.add_edge(0, 0, 1, 4, 2);
  n.add_edge(1, 1, 0, 5, -3);
  ASSERT_EQ(brute_force_min_cost(n), 3 + 2 - 15);
  const auto s = solve_min_cost_flow(n);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->flows, (std::vector<std::int64_t>{3, 1, 5}));
  EXPECT_EQ(s->objective, -10);
  EXPECT_TRUE(check_certificate(n, *s));
}

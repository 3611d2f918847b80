#include <gtest/gtest.h>

#include "ptts/oracle.hpp"

using namespace ptts;

namespace {

// Mint of 100 into A (known), one unleaked transfer A -> B.
AttackerView mint_then_one_transfer() {
  AttackerView v;
  v.n_addresses = 2;
  v.deployer = 0;
  v.total_supply = 100;
  v.topology = {{0, 0, 1}};
  return v;
}

}  // namespace

TEST(OracleLimits, GuardOnEnumerationSize) {
  EXPECT_NO_THROW(OracleLimits{}.validate());
  EXPECT_THROW((OracleLimits{7, 20}.validate()), OracleLimitExceeded);
}

TEST(Oracle, ForcedNetworkHasOneAssignment) {
  FlowNetwork n(3);
  n.supplies = {2, 0, -2};
  n.add_edge(0, 1, 2, 2, 5);
  n.add_edge(1, 2, 2, 2, 1);
  EXPECT_EQ(count_feasible_flows(n), 1u);
  EXPECT_EQ(brute_force_min_cost(n), 12);
}

TEST(Oracle, InfeasibleForcedNetwork) {
  FlowNetwork n(2);
  n.supplies = {2, -2};
  n.add_edge(0, 1, 1, 1);
  EXPECT_FALSE(brute_force_min_cost(n).has_value());
}

TEST(Oracle, LimitsExceeded) {
  FlowNetwork n(2);
  n.supplies = {0, 0};
  n.add_edge(0, 1, 0, 21);
  EXPECT_THROW(brute_force_min_cost(n), OracleLimitExceeded);
}

TEST(Oracle, HundredAndOneAssignmentsForMintExample) {
  // Hand-built: A=0, B=1, S=2, T=3; edges mint, A->B, A->T, B->T. For every
  // x on A->B in 0..100 exactly one completion exists.
  FlowNetwork n(4);
  n.supplies = {0, 0, 100, -100};
  n.add_edge(2, 0, 100, 100);
  n.add_edge(0, 1, 0, 100);
  n.add_edge(0, 3, 0, 100);
  n.add_edge(1, 3, 0, 100);
  const OracleLimits wide{3, 100};
  EXPECT_EQ(count_feasible_flows(n, wide), 101u);

  const BalanceRange r = brute_force_range(mint_then_one_transfer(), 1, wide);
  EXPECT_EQ(r.min_value, 0u);
  EXPECT_EQ(r.max_value, 100u);
}

TEST(Oracle, AllEdgesForced) {
  AttackerView v = mint_then_one_transfer();
  v.total_supply = 10;
  v.leaked_amounts = {{0, 4}};
  // Balance edges are still free, but conservation pins them.
  const BalanceRange r = brute_force_range(v, 1);
  EXPECT_EQ(r.min_value, 4u);
  EXPECT_EQ(r.max_value, 4u);
}

TEST(Oracle, InconsistentLeak) {
  AttackerView v = mint_then_one_transfer();
  v.total_supply = 10;
  v.topology = {{0, 1, 0}};  // B -> A, but B never receives anything
  v.leaked_amounts = {{0, 4}};
  EXPECT_THROW(brute_force_range(v, 1), InconsistentLeakError);
}

TEST(OracleCheck, FiftyRandomInstancesAgree) {
  const OracleCheckReport r = run_oracle_check(50, 2024);
  EXPECT_EQ(r.instances, 50u);
  EXPECT_GT(r.network_instances, 0u);
  EXPECT_GT(r.range_instances, 0u);
  EXPECT_TRUE(r.passed()) << r.first_failure;
}

TEST(OracleCheck, DetectsInjectedSolverBug) {
  SolverHooks broken;
  broken.solve = [](const FlowNetwork& n) {
    auto s = solve_min_cost_flow(n);
    if (s) s->objective += 1;
    return s;
  };
  const OracleCheckReport r = run_oracle_check(10, 5, broken);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.first_failure.find("p min"), std::string::npos);
}

TEST(OracleCheck, DetectsInjectedRangeBug) {
  SolverHooks broken;
  broken.estimate = [](const AttackerView& v, Address t) {
    auto r = estimate_balance_range(v, t);
    r.max_value = v.total_supply;
    r.min_value = 0;
    return r;
  };
  EXPECT_FALSE(run_oracle_check(20, 5, broken).passed());
}

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "ptts/attack.hpp"
#include "ptts/flow.hpp"

namespace ptts {

// Exhaustive reference answers for toy instances. Nothing here calls the
// flow solver or build_attack_network.

struct OracleLimits {
  std::size_t max_free_edges = 6;
  std::int64_t max_bound_span = 20;

  // (max_bound_span + 1) ^ max_free_edges must not exceed 10^8.
  void validate() const;
};

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of integer flows satisfying bounds and conservation.
std::uint64_t count_feasible_flows(const FlowNetwork& n, const OracleLimits& limits = {});

// Minimum of sum(c * x) over all feasible integer flows, or nullopt.
std::optional<std::int64_t> brute_force_min_cost(const FlowNetwork& n, const OracleLimits& limits = {});

// Min and max of the target's balance over every feasible assignment.
// Throws InconsistentLeakError when nothing is feasible.
BalanceRange brute_force_range(const AttackerView& v, Address target, const OracleLimits& limits = {});

// Random solver-versus-oracle cross check. The solver entry points are
// injectable so the harness itself can be tested against a broken solver.
struct SolverHooks {
  std::function<std::optional<FlowSolution>(const FlowNetwork&)> solve = solve_min_cost_flow;
  std::function<bool(const FlowNetwork&)> feasible = is_feasible;
  std::function<BalanceRange(const AttackerView&, Address)> estimate = [](const AttackerView& v, Address t) {
    return estimate_balance_range(v, t);
  };
};

struct OracleCheckReport {
  std::size_t instances = 0;
  std::size_t network_instances = 0;
  std::size_t range_instances = 0;
  std::size_t mismatches = 0;
  std::string first_failure;  // description followed by a DIMACS dump

  bool passed() const { return mismatches == 0; }
};

OracleCheckReport run_oracle_check(std::size_t instances, std::uint64_t seed, const SolverHooks& hooks = {});

}  // namespace ptts

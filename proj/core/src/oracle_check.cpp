#include <sstream>

#include "ptts/dimacs.hpp"
#include "ptts/oracle.hpp"
#include "ptts/rng.hpp"

namespace ptts {

namespace {

// Random network built around a hidden feasible flow, so most instances are
// feasible; one in five gets a perturbed supply to exercise infeasibility.
FlowNetwork random_network(Rng& rng) {
  const auto nodes = static_cast<std::size_t>(rng.uniform(3, 5));
  FlowNetwork n(nodes);
  const auto edges = rng.uniform(3, 7);
  std::size_t free_edges = 0;
  for (std::uint64_t k = 0; k < edges; ++k) {
    const auto from = static_cast<NodeId>(rng.index(nodes));
    auto to = static_cast<NodeId>(rng.index(nodes - 1));
    if (to >= from) ++to;
    const auto lower = static_cast<std::int64_t>(rng.uniform(0, 4));
    std::int64_t upper = lower;
    if (free_edges < 5 && rng.uniform(0, 3) != 0) {
      upper = lower + static_cast<std::int64_t>(rng.uniform(1, 6));
      ++free_edges;
    }
    const auto x = static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(lower), static_cast<std::uint64_t>(upper)));
    const auto cost = static_cast<std::int32_t>(static_cast<std::int64_t>(rng.uniform(0, 6)) - 3);
    n.add_edge(from, to, lower, upper, cost);
    n.supplies[from] += x;
    n.supplies[to] -= x;
  }
  if (rng.uniform(0, 4) == 0) {
    const auto a = rng.index(nodes);
    const auto b = (a + 1 + rng.index(nodes - 1)) % nodes;
    n.supplies[a] += 1;
    n.supplies[b] -= 1;
  }
  return n;
}

AttackerView random_view(Rng& rng, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
  const auto tx = static_cast<std::size_t>(rng.uniform(1, 3));
  const auto supply = rng.uniform(1, 8);
  const Scenario s = generate_scenario(n, tx, supply, seed);
  // Keep free edges (balance edges plus unleaked transfers) within limits.
  const double ratio = n + tx <= 6 ? static_cast<double>(rng.uniform(0, 4)) / 4.0 : 1.0;
  LeakedSet leaked = select_leaked(s, ratio, derive_seed(seed, 1));
  while (n + (tx - leaked.indices.size()) > 6) leaked = select_leaked(s, 1.0, 0);
  return make_attacker_view(s, leaked);
}

}  // namespace

OracleCheckReport run_oracle_check(std::size_t instances, std::uint64_t seed, const SolverHooks& hooks) {
  OracleCheckReport report;
  Rng rng(seed);
  const auto record = [&](const std::string& what, const FlowNetwork& n) {
    ++report.mismatches;
    if (report.first_failure.empty()) report.first_failure = what + "\n" + to_dimacs(n);
  };

  for (std::size_t i = 0; i < instances; ++i) {
    ++report.instances;
    if (i % 2 == 0) {
      ++report.network_instances;
      const FlowNetwork n = random_network(rng);
      const auto expected = brute_force_min_cost(n);
      const bool feasible = hooks.feasible(n);
      const auto sol = hooks.solve(n);
      std::ostringstream why;
      if (feasible != expected.has_value()) {
        why << "instance " << i << ": feasibility " << feasible << " vs oracle " << expected.has_value();
      } else if (sol.has_value() != expected.has_value()) {
        why << "instance " << i << ": solver feasibility disagrees with oracle";
      } else if (sol && sol->objective != *expected) {
        why << "instance " << i << ": objective " << sol->objective << " vs oracle " << *expected;
      } else if (sol && !check_certificate(n, *sol)) {
        why << "instance " << i << ": optimality certificate rejected";
      }
      if (!why.str().empty()) record(why.str(), n);
    } else {
      ++report.range_instances;
      const AttackerView v = random_view(rng, derive_seed(seed, i));
      const auto target = static_cast<Address>(rng.index(v.n_addresses));
      const BalanceRange expected = brute_force_range(v, target);
      const BalanceRange got = hooks.estimate(v, target);
      if (got != expected) {
        std::ostringstream why;
        why << "instance " << i << ": target " << target << " range [" << got.min_value << ", " << got.max_value
            << "] vs oracle [" << expected.min_value << ", " << expected.max_value << "]";
        record(why.str(), build_attack_network(v, target, +1).network);
      }
    }
  }
  return report;
}

}  // namespace ptts

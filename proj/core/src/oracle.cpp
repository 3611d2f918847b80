#include "ptts/oracle.hpp"

#include <algorithm>
#include <limits>

namespace ptts {

namespace {

// Odometer over the free edges in index order. Calls visit(x) for every
// assignment that conserves flow at every node.
template <typename Visit>
void enumerate(const FlowNetwork& n, const OracleLimits& limits, Visit visit) {
  limits.validate();
  n.validate();
  std::vector<std::size_t> free;
  std::vector<std::int64_t> x(n.edges.size());
  double combos = 1.0;
  for (std::size_t k = 0; k < n.edges.size(); ++k) {
    const auto& e = n.edges[k];
    x[k] = e.lower;
    if (e.lower == e.upper) continue;
    if (e.upper - e.lower > limits.max_bound_span)
      throw OracleLimitExceeded("edge " + std::to_string(k) + " bound span exceeds oracle limit");
    free.push_back(k);
    combos *= static_cast<double>(e.upper - e.lower + 1);
  }
  if (free.size() > limits.max_free_edges) throw OracleLimitExceeded("too many free edges for the oracle");
  if (combos > 1e8) throw OracleLimitExceeded("enumeration exceeds 10^8 assignments");

  std::vector<std::int64_t> net(n.node_count);
  while (true) {
    std::fill(net.begin(), net.end(), 0);
    for (std::size_t k = 0; k < n.edges.size(); ++k) {
      net[n.edges[k].from] += x[k];
      net[n.edges[k].to] -= x[k];
    }
    if (net == n.supplies) visit(x);

    std::size_t i = free.size();
    while (i > 0) {
      const std::size_t k = free[i - 1];
      if (x[k] < n.edges[k].upper) {
        ++x[k];
        break;
      }
      x[k] = n.edges[k].lower;
      --i;
    }
    if (i == 0) return;
  }
}

}  // namespace

void OracleLimits::validate() const {
  double combos = 1.0;
  for (std::size_t i = 0; i < max_free_edges; ++i) combos *= static_cast<double>(max_bound_span + 1);
  if (max_bound_span < 0 || combos > 1e8) throw OracleLimitExceeded("oracle limits allow more than 10^8 assignments");
}

std::uint64_t count_feasible_flows(const FlowNetwork& n, const OracleLimits& limits) {
  std::uint64_t count = 0;
  enumerate(n, limits, [&](const std::vector<std::int64_t>&) { ++count; });
  return count;
}

std::optional<std::int64_t> brute_force_min_cost(const FlowNetwork& n, const OracleLimits& limits) {
  std::optional<std::int64_t> best;
  enumerate(n, limits, [&](const std::vector<std::int64_t>& x) {
    std::int64_t cost = 0;
    for (std::size_t k = 0; k < x.size(); ++k) cost += n.edges[k].cost * x[k];
    if (!best || cost < *best) best = cost;
  });
  return best;
}

BalanceRange brute_force_range(const AttackerView& v, Address target, const OracleLimits& limits) {
  v.validate();
  if (target >= v.n_addresses) throw std::out_of_range("target is not an address");
  const auto total = static_cast<std::int64_t>(v.total_supply);
  const auto source = static_cast<NodeId>(v.n_addresses);
  const auto sink = source + 1;

  FlowNetwork n(v.n_addresses + 2);
  n.supplies[source] = total;
  n.supplies[sink] = -total;
  n.add_edge(source, v.deployer, v.mint_known ? total : 0, total);
  for (const auto& t : v.topology) {
    auto it = v.leaked_amounts.find(t.index);
    const std::int64_t lo = it == v.leaked_amounts.end() ? 0 : static_cast<std::int64_t>(it->second);
    const std::int64_t hi = it == v.leaked_amounts.end() ? total : lo;
    n.add_edge(t.from, t.to, lo, hi);
  }
  std::size_t target_edge = 0;
  for (Address a = 0; a < v.n_addresses; ++a) {
    const auto k = n.add_edge(a, sink, 0, total);
    if (a == target) target_edge = k;
  }

  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  enumerate(n, limits, [&](const std::vector<std::int64_t>& x) {
    lo = std::min(lo, x[target_edge]);
    hi = std::max(hi, x[target_edge]);
  });
  if (lo > hi) throw InconsistentLeakError("no assignment satisfies the leaked amounts");
  return {target, static_cast<TokenAmount>(lo), static_cast<TokenAmount>(hi)};
}

}  // namespace ptts

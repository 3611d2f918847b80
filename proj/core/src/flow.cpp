#include "ptts/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace ptts {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("flow arithmetic overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("flow arithmetic overflow");
  return r;
}

}  // namespace

void FlowNetwork::validate() const {
  if (supplies.size() != node_count) throw std::invalid_argument("supply vector size differs from node count");
  std::int64_t total = 0;
  for (auto b : supplies) total = checked_add(total, b);
  if (total != 0) throw std::invalid_argument("supplies do not sum to zero");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    const std::string where = "edge " + std::to_string(k);
    if (e.from >= node_count || e.to >= node_count) throw std::invalid_argument(where + " has an unknown endpoint");
    if (e.lower < 0 || e.lower > e.upper) throw std::invalid_argument(where + " violates 0 <= lower <= upper");
  }
}

ReducedNetwork reduce_lower_bounds(const FlowNetwork& n) {
  n.validate();
  ReducedNetwork r{FlowNetwork(n.node_count), std::vector<std::int64_t>(n.edges.size(), 0), 0};
  r.network.supplies = n.supplies;
  r.network.edges.reserve(n.edges.size());
  for (std::size_t k = 0; k < n.edges.size(); ++k) {
    const auto& e = n.edges[k];
    r.network.add_edge(e.from, e.to, 0, e.upper - e.lower, e.cost);
    if (e.lower == 0) continue;
    r.base_flows[k] = e.lower;
    r.network.supplies[e.from] = checked_add(r.network.supplies[e.from], -e.lower);
    r.network.supplies[e.to] = checked_add(r.network.supplies[e.to], e.lower);
    r.base_cost = checked_add(r.base_cost, checked_mul(e.cost, e.lower));
  }
  return r;
}

std::size_t MinCostFlowSolver::add_arc(NodeId from, NodeId to, std::int64_t cap, std::int64_t cost) {
  const std::size_t id = arcs_.size();
  arcs_.push_back({to, cap, cost});
  arcs_.push_back({from, 0, -cost});
  adjacency_[from].push_back(static_cast<std::uint32_t>(id));
  adjacency_[to].push_back(static_cast<std::uint32_t>(id + 1));
  return id;
}

void MinCostFlowSolver::build_residual(const FlowNetwork& reduced, std::size_t extra_nodes) {
  const std::size_t total = reduced.node_count + extra_nodes;
  arcs_.clear();
  arcs_.reserve(2 * (reduced.edges.size() + reduced.node_count));
  adjacency_.assign(total, {});
  level_.assign(total, -1);
  cursor_.assign(total, 0);
  potential_.assign(total, 0);
  dist_.assign(total, kInf);
  for (const auto& e : reduced.edges) add_arc(e.from, e.to, e.upper, e.cost);
}

bool MinCostFlowSolver::admissible(NodeId from, const Arc& a) const {
  return a.cost + potential_[from] - potential_[a.to] == 0;
}

bool MinCostFlowSolver::bfs_levels(NodeId source, NodeId sink, bool admissible_only) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<NodeId> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const NodeId v = q.front();
    q.pop();
    for (auto id : adjacency_[v]) {
      const Arc& a = arcs_[id];
      if (a.cap <= 0 || level_[a.to] >= 0) continue;
      if (admissible_only && !admissible(v, a)) continue;
      level_[a.to] = level_[v] + 1;
      q.push(a.to);
    }
  }
  return level_[sink] >= 0;
}

std::int64_t MinCostFlowSolver::augment(NodeId v, NodeId sink, std::int64_t limit, bool admissible_only) {
  if (v == sink) return limit;
  for (auto& i = cursor_[v]; i < adjacency_[v].size(); ++i) {
    const auto id = adjacency_[v][i];
    Arc& a = arcs_[id];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    if (admissible_only && !admissible(v, a)) continue;
    const std::int64_t pushed = augment(a.to, sink, std::min(limit, a.cap), admissible_only);
    if (pushed > 0) {
      a.cap -= pushed;
      arcs_[id ^ 1].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t MinCostFlowSolver::max_flow(NodeId source, NodeId sink, bool admissible_only) {
  std::int64_t total = 0;
  while (bfs_levels(source, sink, admissible_only)) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    while (const std::int64_t f = augment(source, sink, kInf, admissible_only)) total = checked_add(total, f);
  }
  return total;
}

bool MinCostFlowSolver::shortest_paths(NodeId source, NodeId sink) {
  using Entry = std::pair<std::int64_t, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::fill(dist_.begin(), dist_.end(), kInf);
  dist_[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d != dist_[v]) continue;
    for (auto id : adjacency_[v]) {
      const Arc& a = arcs_[id];
      if (a.cap <= 0) continue;
      const std::int64_t reduced = a.cost + potential_[v] - potential_[a.to];
      const std::int64_t nd = checked_add(d, reduced);
      if (nd < dist_[a.to]) {
        dist_[a.to] = nd;
        heap.push({nd, a.to});
      }
    }
  }
  if (dist_[sink] == kInf) return false;
  const std::int64_t cap = dist_[sink];
  for (std::size_t v = 0; v < potential_.size(); ++v)
    potential_[v] = checked_add(potential_[v], std::min(dist_[v], cap));
  return true;
}

bool MinCostFlowSolver::feasible(const FlowNetwork& n) {
  const ReducedNetwork r = reduce_lower_bounds(n);
  const auto source = static_cast<NodeId>(n.node_count);
  const auto sink = source + 1;
  build_residual(r.network, 2);
  std::int64_t required = 0;
  for (NodeId v = 0; v < n.node_count; ++v) {
    const std::int64_t b = r.network.supplies[v];
    if (b > 0) {
      add_arc(source, v, b, 0);
      required = checked_add(required, b);
    } else if (b < 0) {
      add_arc(v, sink, -b, 0);
    }
  }
  return max_flow(source, sink, false) == required;
}

std::optional<FlowSolution> MinCostFlowSolver::solve(const FlowNetwork& n) {
  phases_ = 0;
  if (!feasible(n)) return std::nullopt;

  const ReducedNetwork r = reduce_lower_bounds(n);
  const std::size_t m = r.network.edges.size();
  const auto source = static_cast<NodeId>(n.node_count);
  const auto sink = source + 1;
  build_residual(r.network, 2);

  // Saturating negative arcs leaves only non-negative residual costs, so zero
  // potentials are already valid. This also absorbs negative cycles.
  std::vector<std::int64_t> excess = r.network.supplies;
  for (std::size_t k = 0; k < m; ++k) {
    Arc& fwd = arcs_[2 * k];
    if (fwd.cost >= 0 || fwd.cap == 0) continue;
    const std::int64_t c = fwd.cap;
    const auto& e = r.network.edges[k];
    fwd.cap = 0;
    arcs_[2 * k + 1].cap = c;
    excess[e.from] = checked_add(excess[e.from], -c);
    excess[e.to] = checked_add(excess[e.to], c);
  }
  std::int64_t required = 0;
  for (NodeId v = 0; v < n.node_count; ++v) {
    if (excess[v] > 0) {
      add_arc(source, v, excess[v], 0);
      required = checked_add(required, excess[v]);
    } else if (excess[v] < 0) {
      add_arc(v, sink, -excess[v], 0);
    }
  }

  std::int64_t routed = 0;
  while (routed < required) {
    if (!shortest_paths(source, sink)) {
      // Unreachable after a successful feasibility phase.
      throw std::logic_error("min-cost flow: excess stranded after feasibility check");
    }
    ++phases_;
    routed = checked_add(routed, max_flow(source, sink, true));
  }

  FlowSolution sol;
  sol.flows.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::int64_t used = r.network.edges[k].upper - arcs_[2 * k].cap;
    sol.flows[k] = checked_add(r.base_flows[k], used);
    sol.objective = checked_add(sol.objective, checked_mul(n.edges[k].cost, sol.flows[k]));
  }
  sol.potentials.assign(potential_.begin(), potential_.begin() + static_cast<std::ptrdiff_t>(n.node_count));
  return sol;
}

std::optional<FlowSolution> solve_min_cost_flow(const FlowNetwork& n) {
  MinCostFlowSolver solver;
  return solver.solve(n);
}

bool is_feasible(const FlowNetwork& n) {
  MinCostFlowSolver solver;
  return solver.feasible(n);
}

bool check_certificate(const FlowNetwork& n, const FlowSolution& s) {
  if (s.flows.size() != n.edges.size() || s.potentials.size() != n.node_count) return false;
  std::vector<std::int64_t> net(n.node_count, 0);
  std::int64_t objective = 0;
  for (std::size_t k = 0; k < n.edges.size(); ++k) {
    const auto& e = n.edges[k];
    const std::int64_t x = s.flows[k];
    if (x < e.lower || x > e.upper) return false;
    net[e.from] = checked_add(net[e.from], x);
    net[e.to] = checked_add(net[e.to], -x);
    objective = checked_add(objective, checked_mul(e.cost, x));
    const std::int64_t reduced = e.cost + s.potentials[e.from] - s.potentials[e.to];
    if (x < e.upper && reduced < 0) return false;
    if (x > e.lower && reduced > 0) return false;
  }
  if (net != n.supplies) return false;
  return objective == s.objective;
}

}  // namespace ptts

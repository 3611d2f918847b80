#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ptts {

using NodeId = std::uint32_t;

struct FlowEdge {
  NodeId from = 0;
  NodeId to = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::int32_t cost = 0;

  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

// Directed network with node supplies (positive = source) and per-edge
// [lower, upper] bounds. Parallel edges and self-loops are allowed.
struct FlowNetwork {
  std::size_t node_count = 0;
  std::vector<std::int64_t> supplies;  // size node_count, sums to zero
  std::vector<FlowEdge> edges;

  explicit FlowNetwork(std::size_t nodes = 0) : node_count(nodes), supplies(nodes, 0) {}

  std::size_t add_edge(NodeId from, NodeId to, std::int64_t lower, std::int64_t upper, std::int32_t cost = 0) {
    edges.push_back({from, to, lower, upper, cost});
    return edges.size() - 1;
  }

  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  friend bool operator==(const FlowNetwork&, const FlowNetwork&) = default;
};

struct ReducedNetwork {
  FlowNetwork network;  // every lower bound is zero
  std::vector<std::int64_t> base_flows;
  std::int64_t base_cost = 0;
};

// Moves each lower bound into the base flow and the endpoint supplies.
ReducedNetwork reduce_lower_bounds(const FlowNetwork& n);

struct FlowSolution {
  std::vector<std::int64_t> flows;  // one per edge, lower <= x <= upper
  std::int64_t objective = 0;
  // Node potentials p with reduced cost c + p[from] - p[to] >= 0 on every
  // edge below its upper bound and <= 0 on every edge above its lower bound.
  std::vector<std::int64_t> potentials;
};

// Exact integer min-cost flow.
//
// The network is reduced to zero lower bounds, negative-cost arcs are
// saturated so every residual cost starts non-negative, and the remaining
// excess is routed by shortest-path phases: a Dijkstra pass over reduced costs
// updates the potentials, then a blocking flow saturates the zero-reduced-cost
// subgraph. Feasibility is settled first by a separate max-flow, and phase two
// never runs on an infeasible network.
//
// A solver instance owns its scratch buffers. Use one instance per thread.
class MinCostFlowSolver {
 public:
  // nullopt when no flow satisfies the supplies and bounds. Throws
  // std::invalid_argument for malformed networks and std::overflow_error if
  // an intermediate quantity leaves the 64-bit range.
  std::optional<FlowSolution> solve(const FlowNetwork& n);

  bool feasible(const FlowNetwork& n);

  std::size_t last_phase_count() const { return phases_; }

 private:
  struct Arc {
    NodeId to;
    std::int64_t cap;
    std::int64_t cost;
  };

  void build_residual(const FlowNetwork& reduced, std::size_t extra_nodes);
  std::size_t add_arc(NodeId from, NodeId to, std::int64_t cap, std::int64_t cost);
  std::int64_t max_flow(NodeId source, NodeId sink, bool admissible_only);
  bool bfs_levels(NodeId source, NodeId sink, bool admissible_only);
  std::int64_t augment(NodeId v, NodeId sink, std::int64_t limit, bool admissible_only);
  bool shortest_paths(NodeId source, NodeId sink);
  bool admissible(NodeId from, const Arc& a) const;

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<std::int64_t> potential_;
  std::vector<std::int64_t> dist_;
  std::size_t phases_ = 0;
};

std::optional<FlowSolution> solve_min_cost_flow(const FlowNetwork& n);

bool is_feasible(const FlowNetwork& n);

// Recomputes bounds, conservation, the objective, and complementary
// slackness against the reported potentials.
bool check_certificate(const FlowNetwork& n, const FlowSolution& s);

}  // namespace ptts

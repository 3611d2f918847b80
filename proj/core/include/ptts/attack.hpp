#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ptts/flow.hpp"
#include "ptts/scenario.hpp"

namespace ptts {

struct TransferEdge {
  std::size_t index = 0;
  Address from = 0;
  Address to = 0;

  friend bool operator==(const TransferEdge&, const TransferEdge&) = default;
};

// Everything the adversary knows: public topology plus the leaked amounts.
// Contains no unleaked amount and no blind factor.
struct AttackerView {
  std::size_t n_addresses = 0;
  Address deployer = 0;
  TokenAmount total_supply = 0;
  std::vector<TransferEdge> topology;
  std::map<std::size_t, TokenAmount> leaked_amounts;  // transfer index -> amount
  bool mint_known = true;  // deployment mint is public unless hidden

  // Throws std::invalid_argument on dangling indices or addresses.
  void validate() const;

  friend bool operator==(const AttackerView&, const AttackerView&) = default;
};

AttackerView make_attacker_view(const Scenario& s, const LeakedSet& leaked, bool mint_known = true);

class InconsistentLeakError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BalanceRange {
  Address target = 0;
  TokenAmount min_value = 0;
  TokenAmount max_value = 0;

  bool contains(TokenAmount v) const { return min_value <= v && v <= max_value; }
  friend bool operator==(const BalanceRange&, const BalanceRange&) = default;
};

// Network layout: address a is node a, then the source S and the sink T.
// Edge 0 is the mint S -> deployer, edges 1..m mirror the transfers in
// topology order, and the last n edges are the balance edges a -> T.
struct AttackNetwork {
  FlowNetwork network;
  NodeId source = 0;
  NodeId sink = 0;
  std::size_t mint_edge = 0;
  std::size_t first_transfer_edge = 1;
  std::size_t first_balance_edge = 0;

  std::size_t balance_edge(Address a) const { return first_balance_edge + a; }
};

// sign -1 maximizes the target's balance, +1 minimizes it. Throws
// std::out_of_range for an unknown target and std::invalid_argument for a
// sign other than +/-1.
AttackNetwork build_attack_network(const AttackerView& v, Address target, int sign);

struct EstimateStats {
  double solve_seconds = 0.0;  // solver phases only, network build excluded
  std::size_t phases_max = 0;
  std::size_t phases_min = 0;
};

// Two min-cost-flow solves sharing one constraint set. The cost -1 solve
// yields the maximum feasible balance and the cost +1 solve the minimum.
// Throws InconsistentLeakError when the leaked amounts admit no flow, and
// std::logic_error if a solve fails its optimality certificate.
BalanceRange estimate_balance_range(const AttackerView& v, Address target, EstimateStats* stats = nullptr,
                                    bool parallel = false);

using Goodness = boost::rational<std::int64_t>;

// 1 - (max - min) / supply, exact.
Goodness goodness(const BalanceRange& r, TokenAmount token_supply);

// Decimal rendering rounded half-up, e.g. format_fixed(2/3, 2) == "0.67".
std::string format_fixed(const Goodness& g, int decimals);

// True when some flow gives the target exactly `balance`.
bool probe_balance(const AttackerView& v, Address target, TokenAmount balance);

// Probes min, max, the midpoint and samples-3 seeded interior points of the
// range; true iff every probe is feasible.
bool verify_contiguity(const AttackerView& v, Address target, const BalanceRange& r, std::size_t samples = 9,
                       std::uint64_t seed = 0);

}  // namespace ptts

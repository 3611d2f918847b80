#include "ptts/attack.hpp"

#include <chrono>
#include <future>
#include <set>

#include "ptts/rng.hpp"

namespace ptts {

void AttackerView::validate() const {
  if (n_addresses == 0) throw std::invalid_argument("attacker view has no addresses");
  if (deployer >= n_addresses) throw std::invalid_argument("deployer outside address range");
  if (total_supply == 0) throw std::invalid_argument("total supply must be positive");
  std::set<std::size_t> seen;
  for (const auto& t : topology) {
    if (t.from >= n_addresses || t.to >= n_addresses)
      throw std::invalid_argument("transfer " + std::to_string(t.index) + " references unknown address");
    if (!seen.insert(t.index).second)
      throw std::invalid_argument("duplicate transfer index " + std::to_string(t.index));
  }
  for (const auto& [index, amount] : leaked_amounts) {
    if (!seen.contains(index)) throw std::invalid_argument("leaked index " + std::to_string(index) + " not in topology");
    if (amount > total_supply) throw std::invalid_argument("leaked amount exceeds total supply");
  }
}

AttackerView make_attacker_view(const Scenario& s, const LeakedSet& leaked, bool mint_known) {
  AttackerView v;
  v.n_addresses = s.n_addresses;
  v.deployer = s.deployer;
  v.total_supply = s.total_supply;
  v.mint_known = mint_known;
  v.topology.reserve(s.transfers.size());
  for (const auto& t : s.transfers) {
    v.topology.push_back({t.index, t.from, t.to});
    if (leaked.contains(t.index)) v.leaked_amounts.emplace(t.index, t.amount);
  }
  return v;
}

AttackNetwork build_attack_network(const AttackerView& v, Address target, int sign) {
  if (target >= v.n_addresses) throw std::out_of_range("target " + std::to_string(target) + " is not an address");
  if (sign != 1 && sign != -1) throw std::invalid_argument("cost sign must be +1 or -1");
  const auto total = static_cast<std::int64_t>(v.total_supply);

  AttackNetwork a;
  a.network = FlowNetwork(v.n_addresses + 2);
  a.source = static_cast<NodeId>(v.n_addresses);
  a.sink = a.source + 1;
  a.network.supplies[a.source] = total;
  a.network.supplies[a.sink] = -total;
  a.network.edges.reserve(1 + v.topology.size() + v.n_addresses);

  a.mint_edge = a.network.add_edge(a.source, v.deployer, v.mint_known ? total : 0, total);
  a.first_transfer_edge = a.network.edges.size();
  for (const auto& t : v.topology) {
    auto it = v.leaked_amounts.find(t.index);
    if (it != v.leaked_amounts.end()) {
      const auto amount = static_cast<std::int64_t>(it->second);
      a.network.add_edge(t.from, t.to, amount, amount);
    } else {
      a.network.add_edge(t.from, t.to, 0, total);
    }
  }
  a.first_balance_edge = a.network.edges.size();
  for (Address u = 0; u < v.n_addresses; ++u)
    a.network.add_edge(u, a.sink, 0, total, u == target ? sign : 0);
  return a;
}

namespace {

struct SolveOutcome {
  std::int64_t balance = 0;
  std::size_t phases = 0;
  double seconds = 0.0;
};

SolveOutcome solve_side(const AttackNetwork& net, Address target, int sign) {
  MinCostFlowSolver solver;
  const auto start = std::chrono::steady_clock::now();
  auto sol = solver.solve(net.network);
  const auto stop = std::chrono::steady_clock::now();
  if (!sol) throw InconsistentLeakError("leaked amounts admit no feasible flow");
  const std::int64_t x = sol->flows[net.balance_edge(target)];
  if (sol->objective != sign * x) throw std::logic_error("objective differs from the balance-edge flow");
  if (!check_certificate(net.network, *sol)) throw std::logic_error("optimality certificate failed");
  return {x, solver.last_phase_count(), std::chrono::duration<double>(stop - start).count()};
}

}  // namespace

BalanceRange estimate_balance_range(const AttackerView& v, Address target, EstimateStats* stats, bool parallel) {
  v.validate();
  const AttackNetwork upper = build_attack_network(v, target, -1);
  const AttackNetwork lower = build_attack_network(v, target, +1);

  SolveOutcome hi, lo;
  if (parallel) {
    auto fut = std::async(std::launch::async, [&] { return solve_side(upper, target, -1); });
    lo = solve_side(lower, target, +1);
    hi = fut.get();
  } else {
    hi = solve_side(upper, target, -1);
    lo = solve_side(lower, target, +1);
  }
  if (lo.balance > hi.balance) throw std::logic_error("minimum balance exceeds maximum");
  if (stats) {
    stats->solve_seconds = parallel ? std::max(hi.seconds, lo.seconds) : hi.seconds + lo.seconds;
    stats->phases_max = hi.phases;
    stats->phases_min = lo.phases;
  }
  return {target, static_cast<TokenAmount>(lo.balance), static_cast<TokenAmount>(hi.balance)};
}

Goodness goodness(const BalanceRange& r, TokenAmount token_supply) {
  if (token_supply == 0) throw std::invalid_argument("token supply must be positive");
  if (r.min_value > r.max_value || r.max_value > token_supply) throw std::invalid_argument("invalid balance range");
  const auto supply = static_cast<std::int64_t>(token_supply);
  const auto width = static_cast<std::int64_t>(r.max_value - r.min_value);
  return Goodness(supply - width, supply);
}

std::string format_fixed(const Goodness& g, int decimals) {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool negative = g < 0;
  const Goodness a = negative ? -g : g;
  // round half up on the magnitude
  __extension__ using Wide = __int128;
  const auto num = static_cast<Wide>(a.numerator()) * scale;
  const auto den = static_cast<Wide>(a.denominator());
  const auto scaled = static_cast<std::int64_t>((2 * num + den) / (2 * den));
  std::string digits = std::to_string(scaled / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
    digits += "." + frac;
  }
  return negative && scaled != 0 ? "-" + digits : digits;
}

bool probe_balance(const AttackerView& v, Address target, TokenAmount balance) {
  AttackNetwork a = build_attack_network(v, target, +1);
  auto& e = a.network.edges[a.balance_edge(target)];
  e.lower = e.upper = static_cast<std::int64_t>(balance);
  return is_feasible(a.network);
}

bool verify_contiguity(const AttackerView& v, Address target, const BalanceRange& r, std::size_t samples,
                       std::uint64_t seed) {
  std::vector<TokenAmount> probes = {r.min_value, r.max_value, r.min_value + (r.max_value - r.min_value) / 2};
  Rng rng(seed);
  for (std::size_t i = 3; i < samples; ++i) probes.push_back(rng.uniform(r.min_value, r.max_value));
  for (auto m : probes)
    if (!probe_balance(v, target, m)) return false;
  return true;
}

}  // namespace ptts

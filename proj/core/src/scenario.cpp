#include "ptts/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ptts/rng.hpp"

namespace ptts {

namespace {

constexpr std::uint64_t kTransferStream = 1;
constexpr std::uint64_t kBlindStream = 2;

// Set of addresses with positive balance supporting O(1) uniform draws.
class HolderSet {
 public:
  explicit HolderSet(std::size_t n) : position_(n, kAbsent) {}

  void insert(Address a) {
    if (position_[a] != kAbsent) return;
    position_[a] = members_.size();
    members_.push_back(a);
  }

  void erase(Address a) {
    const std::size_t pos = position_[a];
    if (pos == kAbsent) return;
    const Address last = members_.back();
    members_[pos] = last;
    position_[last] = pos;
    members_.pop_back();
    position_[a] = kAbsent;
  }

  bool empty() const { return members_.empty(); }
  Address draw(Rng& rng) const { return members_[rng.index(members_.size())]; }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position_;
  std::vector<Address> members_;
};

std::vector<std::pair<std::string, std::string>> publics_of(const PublicInputs& p) {
  return {{"amount_hash", p.amount_hash.hex()},
          {"balance_hash", p.balance_hash.hex()},
          {"next_balance_hash", p.next_balance_hash.hex()}};
}

}  // namespace

bool LeakedSet::contains(std::size_t index) const {
  return std::binary_search(indices.begin(), indices.end(), index);
}

Scenario generate_scenario(std::size_t n_addresses, std::size_t n_transactions, TokenAmount total_supply,
                           std::uint64_t seed) {
  if (n_addresses < 2) throw std::invalid_argument("scenario needs at least 2 addresses");
  if (total_supply == 0) throw std::invalid_argument("total supply must be positive");

  Scenario s;
  s.n_addresses = n_addresses;
  s.deployer = 0;
  s.total_supply = total_supply;
  s.seed = seed;
  s.true_balances.assign(n_addresses, 0);
  s.true_balances[s.deployer] = total_supply;
  s.transfers.reserve(n_transactions);

  HolderSet holders(n_addresses);
  holders.insert(s.deployer);
  Rng rng(derive_seed(seed, kTransferStream));

  for (std::size_t i = 0; i < n_transactions; ++i) {
    const Address from = holders.draw(rng);
    // Receiver uniform over the other n-1 addresses.
    Address to = static_cast<Address>(rng.index(n_addresses - 1));
    if (to >= from) ++to;
    const TokenAmount amount = rng.uniform(1, s.true_balances[from]);

    s.true_balances[from] -= amount;
    s.true_balances[to] += amount;
    if (s.true_balances[from] == 0) holders.erase(from);
    holders.insert(to);
    s.transfers.push_back({i, from, to, amount});
  }
  return s;
}

std::vector<TokenAmount> replay_balances(const Scenario& s) {
  std::vector<TokenAmount> balances(s.n_addresses, 0);
  balances.at(s.deployer) = s.total_supply;
  for (const auto& t : s.transfers) {
    if (t.from >= s.n_addresses || t.to >= s.n_addresses)
      throw std::invalid_argument("transfer " + std::to_string(t.index) + " references unknown address");
    if (t.amount > balances[t.from])
      throw std::invalid_argument("transfer " + std::to_string(t.index) + " overdraws its sender");
    balances[t.from] -= t.amount;
    balances[t.to] += t.amount;
  }
  return balances;
}

std::size_t leak_count(double ratio, std::size_t n) {
  // The epsilon absorbs binary representation error in ratios like 0.15.
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5 + 1e-9));
}

LeakedSet select_leaked(const Scenario& s, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("leakage ratio must lie in [0, 1]");
  const std::size_t n = s.transfers.size();
  const std::size_t k = std::min(n, leak_count(ratio, n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  // Forward Fisher-Yates: after step i the first i+1 slots are final, so
  // prefixes are nested across ratios.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + rng.index(n - i);
    std::swap(order[i], order[j]);
  }

  LeakedSet out;
  out.ratio = ratio;
  out.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

ReplayResult replay_on_ledger(const Scenario& s) {
  Rng rng(derive_seed(s.seed, kBlindStream));
  ReplayResult r;
  r.wallets.assign(s.n_addresses, Opening{});

  auto& deployer = r.wallets.at(s.deployer);
  deployer = {s.total_supply, generate_blind(rng)};
  try {
    r.ledger = deploy_token("PrivateToken", "PTT", s.total_supply, s.deployer, deployer.blind);
  } catch (const ProtocolError& e) {
    throw IntegrationError(std::string("deploy failed: ") + e.what());
  }
  r.transcript.push_back(
      {"deploy", s.deployer, s.deployer, {{"balance_hash", r.ledger.balance_hash.at(s.deployer).hex()}}, "ok"});

  for (const auto& t : s.transfers) {
    const auto fail = [&](const char* step, const std::exception& e) {
      throw IntegrationError("transfer " + std::to_string(t.index) + " " + step + " failed: " + e.what());
    };
    auto& sender = r.wallets.at(t.from);
    auto& receiver = r.wallets.at(t.to);

    try {
      r.ledger = get_consent(std::move(r.ledger), t.from, t.to);
    } catch (const std::exception& e) {
      fail("get_consent", e);
    }
    r.transcript.push_back({"get_consent", t.from, t.to, {}, "ok"});

    try {
      r.ledger = give_consent(std::move(r.ledger), t.from, t.to);
    } catch (const std::exception& e) {
      fail("give_consent", e);
    }
    r.transcript.push_back({"give_consent", t.from, t.to, {}, "ok"});

    // Sender side.
    const BlindFactor amount_blind = generate_blind(rng);
    Witness sw{t.amount, sender.balance, amount_blind, sender.blind, generate_blind(rng)};
    const PublicInputs sp{commit(sw.amount, sw.amount_blind), r.ledger.balance_hash.at(t.from),
                          commit(sender.balance - std::min(sender.balance, t.amount), sw.next_balance_blind)};
    try {
      const ProofToken proof = prove(RelationKind::Sender, sw, sp);
      r.ledger = private_deposit(std::move(r.ledger), t.from, t.to, sp.amount_hash, sp.next_balance_hash,
                                 SealedMessage(t.to, t.amount, amount_blind), proof);
    } catch (const std::exception& e) {
      fail("private_deposit", e);
    }
    sender = {sender.balance - t.amount, sw.next_balance_blind};
    r.transcript.push_back({"private_deposit", t.from, t.to, publics_of(sp), "ok"});

    // Receiver side, using only what the sealed message reveals.
    try {
      const auto [amount, blind] = open_sealed(*r.ledger.sealed.at({t.from, t.to}), t.to);
      Witness rw{amount, receiver.balance, blind, receiver.blind, generate_blind(rng)};
      TokenAmount next = 0;
      if (__builtin_add_overflow(receiver.balance, amount, &next))
        throw std::overflow_error("receiver balance overflow");
      const PublicInputs rp{commit(amount, blind), r.ledger.balance_hash.at(t.to),
                            commit(next, rw.next_balance_blind)};
      const ProofToken proof = prove(RelationKind::Receiver, rw, rp);
      r.ledger = private_withdraw(std::move(r.ledger), t.from, t.to, rp.amount_hash, rp.next_balance_hash, proof);
      receiver = {next, rw.next_balance_blind};
      r.transcript.push_back({"private_withdraw", t.from, t.to, publics_of(rp), "ok"});
    } catch (const std::exception& e) {
      fail("private_withdraw", e);
    }
  }

  for (Address a = 0; a < s.n_addresses; ++a) {
    const auto c = r.ledger.balance_of(a);
    const TokenAmount expected = a < s.true_balances.size() ? s.true_balances[a] : 0;
    const bool opens = c ? verify_open(*c, expected, r.wallets[a].blind) : expected == 0;
    if (!opens || r.wallets[a].balance != expected)
      throw IntegrationError("address " + std::to_string(a) + " does not open to its true balance");
  }
  return r;
}

}  // namespace ptts

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ptts/commitment.hpp"
#include "ptts/protocol.hpp"

namespace ptts {

struct TransferRecord {
  std::size_t index = 0;
  Address from = 0;
  Address to = 0;
  TokenAmount amount = 0;  // ground truth; hidden from the attacker unless leaked

  friend bool operator==(const TransferRecord&, const TransferRecord&) = default;
};

// Ground-truth world. Addresses are 0..n_addresses-1 and the deployer mints
// the whole supply to itself.
struct Scenario {
  std::size_t n_addresses = 0;
  Address deployer = 0;
  TokenAmount total_supply = 0;
  std::uint64_t seed = 0;
  std::vector<TransferRecord> transfers;
  std::vector<TokenAmount> true_balances;  // indexed by address, final state

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct LeakedSet {
  double ratio = 0.0;
  std::vector<std::size_t> indices;  // sorted ascending

  bool contains(std::size_t index) const;
};

// Throws std::invalid_argument when n_addresses < 2 or total_supply == 0.
Scenario generate_scenario(std::size_t n_addresses, std::size_t n_transactions, TokenAmount total_supply,
                           std::uint64_t seed);

// Replays transfers from the initial mint and returns per-address balances.
// Throws std::invalid_argument if any transfer overdraws its sender.
std::vector<TokenAmount> replay_balances(const Scenario& s);

// round-half-up(ratio * n)
std::size_t leak_count(double ratio, std::size_t n);

// Uniform sample without replacement. The sample is a prefix of a seeded
// permutation, so the same seed with a larger ratio yields a superset.
// Throws std::invalid_argument when ratio is outside [0, 1].
LeakedSet select_leaked(const Scenario& s, double ratio, std::uint64_t seed);

// Private per-address state retained by wallets during replay.
struct Opening {
  TokenAmount balance = 0;
  BlindFactor blind;
};

struct ReplayResult {
  LedgerState ledger;
  Transcript transcript;
  std::vector<Opening> wallets;  // indexed by address
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs deploy plus the four-step flow for every transfer. Any protocol error,
// or a final commitment that does not open to the true balance, throws
// IntegrationError.
ReplayResult replay_on_ledger(const Scenario& s);

}  // namespace ptts

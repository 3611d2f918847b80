#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptts/commitment.hpp"

namespace ptts {

using Address = std::uint32_t;
using AddressPair = std::pair<Address, Address>;  // (sender, receiver)

// Private data known only to the proving party. Never stored on the ledger.
struct Witness {
  TokenAmount amount = 0;
  TokenAmount balance = 0;
  BlindFactor amount_blind;
  BlindFactor balance_blind;
  BlindFactor next_balance_blind;
};

struct PublicInputs {
  Commitment amount_hash;
  Commitment balance_hash;
  Commitment next_balance_hash;

  friend bool operator==(const PublicInputs&, const PublicInputs&) = default;
};

enum class RelationKind : std::uint8_t { Sender = 1, Receiver = 2 };

const char* to_string(RelationKind kind);

// Simulated proof object. Binds a relation kind to its public inputs; carries
// no witness data.
struct ProofToken {
  RelationKind kind;
  PublicInputs publics;
  Digest binder;
};

enum class ProtocolErrc {
  ZeroSupply,
  MissingRequest,
  NoConsent,
  ProofInvalid,
  AllowanceMismatch,
  WrongRecipient,
  RelationUnsatisfied,
};

const char* to_string(ProtocolErrc code);

class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(ProtocolErrc code);
  ProtocolErrc code() const { return code_; }

 private:
  ProtocolErrc code_;
};

// Stand-in for the sender-to-receiver secure channel. The payload holds the
// amount and its blind; only the recipient may open it.
class SealedMessage {
 public:
  SealedMessage(Address recipient, TokenAmount amount, BlindFactor amount_blind);

  Address recipient() const { return recipient_; }

  friend bool operator==(const SealedMessage&, const SealedMessage&) = default;

 private:
  friend std::pair<TokenAmount, BlindFactor> open_sealed(const SealedMessage& m, Address caller);

  Address recipient_;
  std::array<std::uint8_t, 16> payload_;
};

struct LedgerState {
  std::string token_name;
  std::string token_symbol;
  TokenAmount total_supply = 0;
  Address deployer = 0;
  std::map<Address, Commitment> balance_hash;
  std::map<AddressPair, bool> request;
  std::map<AddressPair, bool> consent;
  // Absent key or nullopt both mean "cleared"; a commitment to zero is not a
  // cleared slot.
  std::map<AddressPair, std::optional<Commitment>> allowance;
  std::map<AddressPair, std::optional<SealedMessage>> sealed;

  bool has_request(Address sender, Address receiver) const;
  bool has_consent(Address sender, Address receiver) const;
  std::optional<Commitment> allowance_of(Address sender, Address receiver) const;
  std::optional<Commitment> balance_of(Address who) const;

  friend bool operator==(const LedgerState&, const LedgerState&) = default;
};

// Evaluates the sender or receiver relation on a witness. Receiver relations
// throw std::overflow_error when balance + amount exceeds 64 bits.
bool check_relation(RelationKind kind, const Witness& w, const PublicInputs& p);

// Throws ProtocolError(RelationUnsatisfied) when the witness does not satisfy
// the relation.
ProofToken prove(RelationKind kind, const Witness& w, const PublicInputs& p);

bool verify_proof(const ProofToken& t, RelationKind kind, const PublicInputs& p);

// Ledger transitions. Each takes the old state by value and returns the new
// one; on error the exception propagates and the caller's state is untouched.

LedgerState deploy_token(std::string name, std::string symbol, TokenAmount supply, Address deployer,
                         BlindFactor deployer_blind);

LedgerState get_consent(LedgerState state, Address sender, Address receiver);

LedgerState give_consent(LedgerState state, Address sender, Address receiver);

LedgerState private_deposit(LedgerState state, Address sender, Address receiver, const Commitment& amount_hash,
                            const Commitment& next_balance_hash, const SealedMessage& sealed,
                            const ProofToken& proof);

LedgerState private_withdraw(LedgerState state, Address sender, Address receiver, const Commitment& amount_hash,
                             const Commitment& next_balance_hash, const ProofToken& proof);

std::pair<TokenAmount, BlindFactor> open_sealed(const SealedMessage& m, Address caller);

// Public record of one protocol call. Witnesses never appear here.
struct TranscriptEntry {
  std::string step_type;  // deploy | get_consent | give_consent | private_deposit | private_withdraw
  Address sender = 0;
  Address receiver = 0;
  std::vector<std::pair<std::string, std::string>> public_inputs;  // name -> hex digest
  std::string result;                                              // "ok" or error name
};

using Transcript = std::vector<TranscriptEntry>;

}  // namespace ptts

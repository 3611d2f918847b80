#include "ptts/protocol.hpp"

#include <algorithm>

namespace ptts {

namespace {

// Fixed key standing in for the proving system's soundness. Tokens can only be
// minted through prove(), which checks the relation first.
constexpr std::array<std::uint8_t, 32> kSimulationSecret = {
    0x3c, 0x91, 0x5e, 0x07, 0xa2, 0x6b, 0xd4, 0x18, 0xf0, 0x2e, 0x77, 0xc9, 0x45, 0x8a, 0x13, 0xbe,
    0x60, 0xdf, 0x29, 0x84, 0x1b, 0xe6, 0x5a, 0xc3, 0x9f, 0x02, 0x74, 0xad, 0x38, 0xf5, 0x4e, 0xd1};

Digest compute_binder(RelationKind kind, const PublicInputs& p) {
  std::array<std::uint8_t, 1 + 3 * 32 + 32> msg{};
  msg[0] = static_cast<std::uint8_t>(kind);
  auto out = msg.begin() + 1;
  out = std::copy(p.amount_hash.digest().begin(), p.amount_hash.digest().end(), out);
  out = std::copy(p.balance_hash.digest().begin(), p.balance_hash.digest().end(), out);
  out = std::copy(p.next_balance_hash.digest().begin(), p.next_balance_hash.digest().end(), out);
  std::copy(kSimulationSecret.begin(), kSimulationSecret.end(), out);
  return sha256(msg);
}

// Addresses enter the ledger at a public commitment to zero with a zero
// blind; a never-funded address has no secret balance to hide.
void ensure_registered(LedgerState& state, Address who) {
  state.balance_hash.try_emplace(who, commit(0, BlindFactor{}));
}

template <typename Map>
bool flag(const Map& m, const AddressPair& key) {
  auto it = m.find(key);
  return it != m.end() && it->second;
}

}  // namespace

const char* to_string(RelationKind kind) {
  return kind == RelationKind::Sender ? "sender" : "receiver";
}

const char* to_string(ProtocolErrc code) {
  switch (code) {
    case ProtocolErrc::ZeroSupply: return "zero_supply";
    case ProtocolErrc::MissingRequest: return "missing_request";
    case ProtocolErrc::NoConsent: return "no_consent";
    case ProtocolErrc::ProofInvalid: return "proof_invalid";
    case ProtocolErrc::AllowanceMismatch: return "allowance_mismatch";
    case ProtocolErrc::WrongRecipient: return "wrong_recipient";
    case ProtocolErrc::RelationUnsatisfied: return "relation_unsatisfied";
  }
  return "unknown";
}

ProtocolError::ProtocolError(ProtocolErrc code) : std::runtime_error(to_string(code)), code_(code) {}

SealedMessage::SealedMessage(Address recipient, TokenAmount amount, BlindFactor amount_blind)
    : recipient_(recipient), payload_{} {
  for (int i = 0; i < 8; ++i) {
    payload_[7 - i] = static_cast<std::uint8_t>(amount >> (8 * i));
    payload_[15 - i] = static_cast<std::uint8_t>(amount_blind.value() >> (8 * i));
  }
}

std::pair<TokenAmount, BlindFactor> open_sealed(const SealedMessage& m, Address caller) {
  if (caller != m.recipient_) throw ProtocolError(ProtocolErrc::WrongRecipient);
  std::uint64_t amount = 0;
  std::uint64_t blind = 0;
  for (int i = 0; i < 8; ++i) {
    amount = (amount << 8) | m.payload_[i];
    blind = (blind << 8) | m.payload_[8 + i];
  }
  return {amount, BlindFactor(blind)};
}

bool LedgerState::has_request(Address sender, Address receiver) const {
  return flag(request, {sender, receiver});
}

bool LedgerState::has_consent(Address sender, Address receiver) const {
  return flag(consent, {sender, receiver});
}

std::optional<Commitment> LedgerState::allowance_of(Address sender, Address receiver) const {
  auto it = allowance.find({sender, receiver});
  return it == allowance.end() ? std::nullopt : it->second;
}

std::optional<Commitment> LedgerState::balance_of(Address who) const {
  auto it = balance_hash.find(who);
  if (it == balance_hash.end()) return std::nullopt;
  return it->second;
}

bool check_relation(RelationKind kind, const Witness& w, const PublicInputs& p) {
  TokenAmount next = 0;
  if (kind == RelationKind::Sender) {
    if (w.amount > w.balance) return false;
    next = w.balance - w.amount;
  } else {
    if (__builtin_add_overflow(w.balance, w.amount, &next))
      throw std::overflow_error("receiver balance + amount overflows 64 bits");
  }
  return verify_open(p.amount_hash, w.amount, w.amount_blind) &&
         verify_open(p.balance_hash, w.balance, w.balance_blind) &&
         verify_open(p.next_balance_hash, next, w.next_balance_blind);
}

ProofToken prove(RelationKind kind, const Witness& w, const PublicInputs& p) {
  if (!check_relation(kind, w, p)) throw ProtocolError(ProtocolErrc::RelationUnsatisfied);
  return ProofToken{kind, p, compute_binder(kind, p)};
}

bool verify_proof(const ProofToken& t, RelationKind kind, const PublicInputs& p) {
  return t.kind == kind && t.publics == p && t.binder == compute_binder(kind, p);
}

LedgerState deploy_token(std::string name, std::string symbol, TokenAmount supply, Address deployer,
                         BlindFactor deployer_blind) {
  if (supply == 0) throw ProtocolError(ProtocolErrc::ZeroSupply);
  LedgerState state;
  state.token_name = std::move(name);
  state.token_symbol = std::move(symbol);
  state.total_supply = supply;
  state.deployer = deployer;
  state.balance_hash.insert_or_assign(deployer, commit(supply, deployer_blind));
  return state;
}

LedgerState get_consent(LedgerState state, Address sender, Address receiver) {
  state.request[{sender, receiver}] = true;
  ensure_registered(state, sender);
  ensure_registered(state, receiver);
  return state;
}

LedgerState give_consent(LedgerState state, Address sender, Address receiver) {
  if (!state.has_request(sender, receiver)) throw ProtocolError(ProtocolErrc::MissingRequest);
  state.consent[{sender, receiver}] = true;
  return state;
}

LedgerState private_deposit(LedgerState state, Address sender, Address receiver, const Commitment& amount_hash,
                            const Commitment& next_balance_hash, const SealedMessage& sealed,
                            const ProofToken& proof) {
  if (!state.has_consent(sender, receiver)) throw ProtocolError(ProtocolErrc::NoConsent);
  // The current balance commitment always comes from the ledger.
  auto current = state.balance_of(sender);
  if (!current || !verify_proof(proof, RelationKind::Sender, {amount_hash, *current, next_balance_hash}))
    throw ProtocolError(ProtocolErrc::ProofInvalid);
  state.balance_hash.insert_or_assign(sender, next_balance_hash);
  state.allowance.insert_or_assign(AddressPair{sender, receiver}, amount_hash);
  state.sealed.insert_or_assign(AddressPair{sender, receiver}, sealed);
  return state;
}

LedgerState private_withdraw(LedgerState state, Address sender, Address receiver, const Commitment& amount_hash,
                             const Commitment& next_balance_hash, const ProofToken& proof) {
  if (!state.has_consent(sender, receiver)) throw ProtocolError(ProtocolErrc::NoConsent);
  auto allowed = state.allowance_of(sender, receiver);
  if (!allowed || *allowed != amount_hash) throw ProtocolError(ProtocolErrc::AllowanceMismatch);
  auto current = state.balance_of(receiver);
  if (!current || !verify_proof(proof, RelationKind::Receiver, {amount_hash, *current, next_balance_hash}))
    throw ProtocolError(ProtocolErrc::ProofInvalid);
  state.balance_hash.insert_or_assign(receiver, next_balance_hash);
  state.allowance.insert_or_assign(AddressPair{sender, receiver}, std::nullopt);
  return state;
}

}  // namespace ptts

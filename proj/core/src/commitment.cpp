#include "ptts/commitment.hpp"

#include <openssl/sha.h>

#include <stdexcept>

namespace ptts {

namespace {

void put_be256(std::uint64_t v, std::uint8_t* out) {
  // Upper 24 bytes stay zero; a 64-bit value occupies the last 8.
  for (int i = 0; i < 8; ++i) out[31 - i] = static_cast<std::uint8_t>(v >> (8 * i));
}

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Digest sha256(std::span<const std::uint8_t> message) {
  Digest out{};
  SHA256(message.data(), message.size(), out.data());
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

BlindFactor::BlindFactor(std::uint64_t bits) : bits_(bits) {
  if (bits >= kLimit) throw std::out_of_range("blind factor exceeds 52 bits");
}

BlindFactor generate_blind(Rng& rng) { return BlindFactor(rng.uniform(0, BlindFactor::kLimit - 1)); }

std::optional<Commitment> Commitment::from_hex(std::string_view hex) {
  if (hex.size() != 64) return std::nullopt;
  Digest d{};
  for (std::size_t i = 0; i < 32; ++i) {
    const int hi = hex_nibble(hex[2 * i]);
    const int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    d[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return Commitment(d);
}

Commitment commit(TokenAmount value, BlindFactor blind) {
  std::array<std::uint8_t, 64> msg{};
  put_be256(blind.value(), msg.data());
  put_be256(value, msg.data() + 32);
  return Commitment(sha256(msg));
}

bool verify_open(const Commitment& c, TokenAmount value, BlindFactor blind) {
  return commit(value, blind) == c;
}

}  // namespace ptts

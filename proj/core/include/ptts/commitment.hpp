#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ptts/rng.hpp"

namespace ptts {

using TokenAmount = std::uint64_t;
using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> message);

std::string to_hex(std::span<const std::uint8_t> bytes);

// 52-bit random salt mixed into every commitment.
class BlindFactor {
 public:
  static constexpr unsigned kBits = 52;
  static constexpr std::uint64_t kLimit = std::uint64_t{1} << kBits;

  constexpr BlindFactor() = default;

  // Throws std::out_of_range when bits >= 2^52.
  explicit BlindFactor(std::uint64_t bits);

  constexpr std::uint64_t value() const { return bits_; }

  friend constexpr bool operator==(BlindFactor, BlindFactor) = default;

 private:
  std::uint64_t bits_ = 0;
};

BlindFactor generate_blind(Rng& rng);

// SHA-256 digest binding a token amount to a blind factor. Only commit() and
// the hex parser create non-default values.
class Commitment {
 public:
  const Digest& digest() const { return digest_; }
  std::string hex() const { return to_hex(digest_); }

  // Lowercase or uppercase 64-character hex; nullopt on malformed input.
  static std::optional<Commitment> from_hex(std::string_view hex);

  friend bool operator==(const Commitment&, const Commitment&) = default;
  friend auto operator<=>(const Commitment&, const Commitment&) = default;

 private:
  explicit Commitment(const Digest& d) : digest_(d) {}
  friend Commitment commit(TokenAmount value, BlindFactor blind);

  Digest digest_{};
};

// SHA-256 over [32-byte big-endian blind || 32-byte big-endian value].
Commitment commit(TokenAmount value, BlindFactor blind);

bool verify_open(const Commitment& c, TokenAmount value, BlindFactor blind);

}  // namespace ptts

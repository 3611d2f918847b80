#include <gtest/gtest.h>

#include <set>

#include "ptts/commitment.hpp"

using namespace ptts;

// Reference digests computed with Python hashlib over
// blind.to_bytes(32, 'big') + value.to_bytes(32, 'big').
TEST(Commitment, ZeroVectorMatchesReferenceSha256) {
  EXPECT_EQ(commit(0, BlindFactor(0)).hex(), "f5a5fd42d16a20302798ef6ed309979b43003d2320d9f0e8ea9831a92759fb4b");
}

TEST(Commitment, PinnedVectors) {
  EXPECT_EQ(commit(100, BlindFactor(1)).hex(), "438229bdb82d1bc62be3314dfeac2100527f3f3b054b5d17f0eb9f730de015f8");
  EXPECT_EQ(commit(100, BlindFactor(2)).hex(), "d493ea1a895b474c4687080a084e6b10b986cc3a0250ca113211aeae591c3ffc");
  EXPECT_EQ(commit(42, BlindFactor(123456789)).hex(),
            "799ca7531f8bbd9af1c550786b4c2969801f1ea98f2ca1ccbebb77e7e6a5c2d5");
  EXPECT_EQ(commit(1'000'000, BlindFactor(BlindFactor::kLimit - 1)).hex(),
            "712012812997f52c950f6d0ad7bac9d9067e5cbc9e5e6018f940729409ec260d");
}

TEST(Commitment, Deterministic) {
  const BlindFactor b(987654321);
  EXPECT_EQ(commit(77, b), commit(77, b));
}

TEST(Commitment, DistinctBlindsGiveDistinctDigests) {
  EXPECT_NE(commit(100, BlindFactor(1)), commit(100, BlindFactor(2)));
}

TEST(Commitment, VerifyOpen) {
  const BlindFactor b(123456789);
  const Commitment c = commit(42, b);
  EXPECT_TRUE(verify_open(c, 42, b));
  EXPECT_FALSE(verify_open(c, 43, b));
  EXPECT_FALSE(verify_open(c, 42, BlindFactor(123456790)));
  // The two mismatching openings are themselves the reference digests.
  EXPECT_EQ(commit(43, b).hex(), "4ba25935764bef813b83084a880293a8a063cd5db80a328c6a0213ad7b071e75");
  EXPECT_EQ(commit(42, BlindFactor(123456790)).hex(),
            "252b0126fe1705205997caa1a0b5a665a416fc161f60dddb36845735a30a9f4d");
}

TEST(Commitment, BindingOnSmallGrid) {
  std::set<std::string> seen;
  for (TokenAmount v = 0; v < 16; ++v)
    for (std::uint64_t b = 0; b < 16; ++b) {
      const Commitment c = commit(v, BlindFactor(b));
      EXPECT_TRUE(verify_open(c, v, BlindFactor(b)));
      EXPECT_TRUE(seen.insert(c.hex()).second) << "collision at v=" << v << " b=" << b;
    }
}

TEST(Commitment, HexRoundTrip) {
  const Commitment c = commit(5, BlindFactor(9));
  const auto parsed = Commitment::from_hex(c.hex());
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(*parsed, c);
  EXPECT_FALSE(Commitment::from_hex("abc").has_value());
  EXPECT_FALSE(Commitment::from_hex(std::string(64, 'g')).has_value());
}

TEST(BlindFactor, RejectsMoreThan52Bits) {
  EXPECT_NO_THROW(BlindFactor(BlindFactor::kLimit - 1));
  EXPECT_THROW(BlindFactor(BlindFactor::kLimit), std::out_of_range);
}

TEST(BlindFactor, SeededGenerationIsDeterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(generate_blind(a), generate_blind(b));
}

TEST(BlindFactor, TenThousandDrawsInRangeWithoutDuplicates) {
  Rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10'000; ++i) {
    const auto b = generate_blind(rng);
    EXPECT_LT(b.value(), BlindFactor::kLimit);
    seen.insert(b.value());
  }
  EXPECT_EQ(seen.size(), 10'000u);
}

TEST(Rng, UniformStaysInBounds) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto x = rng.uniform(5, 9);
    EXPECT_GE(x, 5u);
    EXPECT_LE(x, 9u);
  }
  EXPECT_EQ(rng.uniform(4, 4), 4u);
}

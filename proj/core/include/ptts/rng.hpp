#pragma once

#include <cstdint>
#include <random>

namespace ptts {

// Seedable generator with platform-independent bounded draws.
//
// std::uniform_int_distribution is implementation-defined, so scenario files
// generated on one standard library would not match another. All bounded
// draws go through uniform() instead, which uses rejection sampling on the
// raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi], inclusive. Requires lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  // Uniform index in [0, n). Requires n > 0.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, n - 1)); }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a stream tag.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace ptts

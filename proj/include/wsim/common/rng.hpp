#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "wsim/common/bytes.hpp"

namespace wsim {

/// Mixes a label into a seed (FNV-1a over the label, then splitmix64), so
/// every actor in a run gets an independent, reproducible stream.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

/// Seeded generator with platform-independent derived draws. The standard
/// distributions are implementation-defined, so bounded integers and unit
/// doubles are derived here from the raw mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound). bound must be non-zero.
  std::uint64_t uniform(std::uint64_t bound);

  /// Uniform in [lo, hi], inclusive.
  std::uint64_t uniform_range(std::uint64_t lo, std::uint64_t hi);

  /// Uniform in [0, 1) with 53 bits of precision.
  double unit();

  bool bernoulli(double p);

  void fill(std::span<std::uint8_t> out);

  template <std::size_t N>
  ByteArray<N> bytes() {
    ByteArray<N> out{};
    fill(out);
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsim

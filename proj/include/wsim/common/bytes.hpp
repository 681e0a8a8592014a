#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsim {

using Bytes = std::vector<std::uint8_t>;

template <std::size_t N>
using ByteArray = std::array<std::uint8_t, N>;

/// Simulated time. One tick is one millisecond.
using Tick = std::uint64_t;

inline constexpr Tick kTicksPerSecond = 1000;

std::string to_hex(std::span<const std::uint8_t> data);

/// Accepts upper or lower case; throws std::invalid_argument on odd length
/// or non-hex characters.
Bytes from_hex(std::string_view hex);

template <std::size_t N>
ByteArray<N> array_from_hex(std::string_view hex) {
  const Bytes raw = from_hex(hex);
  if (raw.size() != N) {
    throw std::invalid_argument("expected " + std::to_string(N) + " hex bytes, got " +
                                std::to_string(raw.size()));
  }
  ByteArray<N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace wsim

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "wsim/common/bytes.hpp"

namespace wsim {

/// 48-bit IEEE 802 address. Textual form is `AA:BB:CC:DD:EE:FF`, upper hex.
class MacAddr {
 public:
  constexpr MacAddr() = default;
  explicit constexpr MacAddr(const ByteArray<6>& bytes) : bytes_(bytes) {}

  /// Throws std::invalid_argument unless the text is six colon-separated
  /// hex octets.
  static MacAddr parse(std::string_view text);
  static std::optional<MacAddr> try_parse(std::string_view text);

  static constexpr MacAddr broadcast() {
    return MacAddr(ByteArray<6>{0xff, 0xff, 0xff, 0xff, 0xff, 0xff});
  }

  /// Locally administered unicast address from 40 random bits.
  static MacAddr local_from_bits(std::uint64_t bits);

  bool is_broadcast() const { return *this == broadcast(); }
  const ByteArray<6>& bytes() const { return bytes_; }
  std::string to_string() const;

  /// Address `offset` positions after this one, treating the address as a
  /// 48-bit big-endian integer.
  MacAddr offset(std::uint64_t offset) const;

  auto operator<=>(const MacAddr&) const = default;

 private:
  ByteArray<6> bytes_{};
};

}  // namespace wsim

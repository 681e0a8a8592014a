#include "wsim/common/mac_addr.hpp"

#include <stdexcept>

namespace wsim {

std::optional<MacAddr> MacAddr::try_parse(std::string_view text) {
  if (text.size() != 17) return std::nullopt;
  ByteArray<6> out{};
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t at = i * 3;
    if (i > 0 && text[at - 1] != ':') return std::nullopt;
    try {
      const Bytes b = from_hex(text.substr(at, 2));
      out[i] = b[0];
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return MacAddr(out);
}

MacAddr MacAddr::parse(std::string_view text) {
  if (auto mac = try_parse(text)) return *mac;
  throw std::invalid_argument("invalid MAC address '" + std::string(text) + "'");
}

MacAddr MacAddr::local_from_bits(std::uint64_t bits) {
  ByteArray<6> out{};
  out[0] = 0x02;  // locally administered, unicast
  for (int i = 5; i >= 1; --i) {
    out[i] = static_cast<std::uint8_t>(bits & 0xff);
    bits >>= 8;
  }
  return MacAddr(out);
}

std::string MacAddr::to_string() const {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(17);
  for (std::size_t i = 0; i < 6; ++i) {
    if (i > 0) out.push_back(':');
    out.push_back(kDigits[bytes_[i] >> 4]);
    out.push_back(kDigits[bytes_[i] & 0x0f]);
  }
  return out;
}

MacAddr MacAddr::offset(std::uint64_t offset) const {
  std::uint64_t value = 0;
  for (auto b : bytes_) value = (value << 8) | b;
  value = (value + offset) & 0xffffffffffffULL;
  ByteArray<6> out{};
  for (int i = 5; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(value & 0xff);
    value >>= 8;
  }
  return MacAddr(out);
}

}  // namespace wsim

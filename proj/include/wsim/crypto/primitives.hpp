#pragma once

// Thin wrappers over libcrypto digests.

#include <span>
#include <string_view>

#include "wsim/common/bytes.hpp"

namespace wsim::crypto {

ByteArray<20> hmac_sha1(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);
ByteArray<32> hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);

/// IEEE 802.11 KDF-Hash-Length with SHA-256:
/// HMAC(key, i_le16 || label || context || bits_le16) for i = 1.. until
/// `bits` are produced. bits must be a multiple of 8.
Bytes kdf_sha256(std::span<const std::uint8_t> key, std::string_view label,
                 std::span<const std::uint8_t> context, unsigned bits);

/// Constant-time equality for tags and MICs.
bool equal_ct(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace wsim::crypto

#include "wsim/crypto/primitives.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <stdexcept>

namespace wsim::crypto {

namespace {

template <std::size_t N>
ByteArray<N> hmac(const EVP_MD* md, std::span<const std::uint8_t> key,
                  std::span<const std::uint8_t> data) {
  ByteArray<N> out{};
  unsigned int len = 0;
  if (HMAC(md, key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(),
           &len) == nullptr ||
      len != N) {
    throw std::runtime_error("HMAC failed");
  }
  return out;
}

}  // namespace

ByteArray<20> hmac_sha1(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data) {
  return hmac<20>(EVP_sha1(), key, data);
}

ByteArray<32> hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data) {
  return hmac<32>(EVP_sha256(), key, data);
}

Bytes kdf_sha256(std::span<const std::uint8_t> key, std::string_view label,
                 std::span<const std::uint8_t> context, unsigned bits) {
  if (bits == 0 || bits % 8 != 0) throw std::invalid_argument("kdf_sha256: bits % 8 != 0");
  const std::size_t want = bits / 8;
  Bytes out;
  out.reserve(want + 32);
  Bytes msg;
  for (std::uint16_t i = 1; out.size() < want; ++i) {
    msg.clear();
    msg.push_back(static_cast<std::uint8_t>(i & 0xff));
    msg.push_back(static_cast<std::uint8_t>(i >> 8));
    msg.insert(msg.end(), label.begin(), label.end());
    msg.insert(msg.end(), context.begin(), context.end());
    msg.push_back(static_cast<std::uint8_t>(bits & 0xff));
    msg.push_back(static_cast<std::uint8_t>((bits >> 8) & 0xff));
    const auto block = hmac_sha256(key, msg);
    out.insert(out.end(), block.begin(), block.end());
  }
  out.resize(want);
  return out;
}

bool equal_ct(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  return a.size() == b.size() && CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace wsim::crypto

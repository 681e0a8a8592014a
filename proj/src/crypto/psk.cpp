// The low-level SHA1 interface lets PBKDF2 reuse the precomputed HMAC pad
// states and run one compression per HMAC half, which roughly halves the
// cost of each passphrase candidate compared with PKCS5_PBKDF2_HMAC.
#define OPENSSL_SUPPRESS_DEPRECATED

#include "wsim/crypto/psk.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cstring>

#include "wsim/crypto/primitives.hpp"

namespace wsim::crypto {

const char* to_string(CryptoErrc code) {
  switch (code) {
    case CryptoErrc::kPassphraseLength: return "passphrase length outside [8, 63]";
    case CryptoErrc::kSsidLength: return "ssid length outside [1, 32]";
    case CryptoErrc::kUnsupportedMicVersion: return "unsupported MIC version";
    case CryptoErrc::kInvalidGroupElement: return "invalid group element";
    case CryptoErrc::kInvalidScalar: return "scalar out of range";
    case CryptoErrc::kNoPasswordElement: return "no password element found";
    case CryptoErrc::kInvalidPeerElement: return "invalid peer element";
    case CryptoErrc::kInvalidPeerScalar: return "invalid peer scalar";
    case CryptoErrc::kReflectionDetected: return "reflection detected";
  }
  return "unknown crypto error";
}

Passphrase::Passphrase(std::string text) : text_(std::move(text)) {
  if (!valid_length(text_)) {
    throw CryptoError(CryptoErrc::kPassphraseLength,
                      "passphrase must be 8..63 bytes, got " + std::to_string(text_.size()));
  }
}

ByteArray<48> Ptk::concat() const {
  ByteArray<48> out{};
  std::copy(kck.begin(), kck.end(), out.begin());
  std::copy(kek.begin(), kek.end(), out.begin() + 16);
  std::copy(tk.begin(), tk.end(), out.begin() + 32);
  return out;
}

namespace {

// One SHA-1 compression over a 20-byte message that follows a 64-byte pad
// block: the padded tail is fixed, so only the digest words change.
void hmac_half(const SHA_CTX& pad_state, std::uint8_t (&block)[64], std::uint8_t (&digest)[20]) {
  SHA_CTX ctx = pad_state;
  std::memcpy(block, digest, 20);
  SHA1_Transform(&ctx, block);
  const unsigned int words[5] = {ctx.h0, ctx.h1, ctx.h2, ctx.h3, ctx.h4};
  for (int i = 0; i < 5; ++i) {
    digest[4 * i] = static_cast<std::uint8_t>(words[i] >> 24);
    digest[4 * i + 1] = static_cast<std::uint8_t>(words[i] >> 16);
    digest[4 * i + 2] = static_cast<std::uint8_t>(words[i] >> 8);
    digest[4 * i + 3] = static_cast<std::uint8_t>(words[i]);
  }
}

}  // namespace

Pmk derive_pmk_psk(const Passphrase& passphrase, std::span<const std::uint8_t> ssid) {
  if (ssid.empty() || ssid.size() > kSsidMax) {
    throw CryptoError(CryptoErrc::kSsidLength,
                      "ssid must be 1..32 bytes, got " + std::to_string(ssid.size()));
  }
  const std::string& key = passphrase.text();

  std::uint8_t ipad[64];
  std::uint8_t opad[64];
  std::memset(ipad, 0x36, sizeof ipad);
  std::memset(opad, 0x5c, sizeof opad);
  for (std::size_t i = 0; i < key.size(); ++i) {
    ipad[i] ^= static_cast<std::uint8_t>(key[i]);
    opad[i] ^= static_cast<std::uint8_t>(key[i]);
  }
  SHA_CTX inner;
  SHA_CTX outer;
  SHA1_Init(&inner);
  SHA1_Update(&inner, ipad, sizeof ipad);
  SHA1_Init(&outer);
  SHA1_Update(&outer, opad, sizeof opad);

  // 20-byte message after a 64-byte block: 0x80 pad, bit length 672.
  std::uint8_t block[64] = {};
  block[20] = 0x80;
  block[62] = 0x02;
  block[63] = 0xa0;

  Pmk pmk;
  for (std::uint8_t index = 1; index <= 2; ++index) {
    std::uint8_t u[20];
    SHA_CTX first = inner;
    SHA1_Update(&first, ssid.data(), ssid.size());
    const std::uint8_t be_index[4] = {0, 0, 0, index};
    SHA1_Update(&first, be_index, sizeof be_index);
    SHA1_Final(u, &first);
    hmac_half(outer, block, u);

    std::uint8_t t[20];
    std::memcpy(t, u, sizeof t);
    for (unsigned iter = 1; iter < kPbkdf2Iterations; ++iter) {
      hmac_half(inner, block, u);
      hmac_half(outer, block, u);
      for (int j = 0; j < 20; ++j) t[j] ^= u[j];
    }
    const std::size_t offset = (index - 1) * 20u;
    const std::size_t take = std::min<std::size_t>(20, pmk.bytes.size() - offset);
    std::memcpy(pmk.bytes.data() + offset, t, take);
  }
  return pmk;
}

Pmk derive_pmk_psk(const Passphrase& passphrase, std::string_view ssid) {
  return derive_pmk_psk(passphrase, as_bytes(ssid));
}

Ptk derive_ptk(const Pmk& pmk, const MacAddr& aa, const MacAddr& sa, const Nonce& anonce,
               const Nonce& snonce) {
  static constexpr std::string_view kLabel = "Pairwise key expansion";
  Bytes data;
  data.reserve(kLabel.size() + 1 + 12 + 64 + 1);
  data.insert(data.end(), kLabel.begin(), kLabel.end());
  data.push_back(0);
  const auto& lo_mac = std::min(aa, sa).bytes();
  const auto& hi_mac = std::max(aa, sa).bytes();
  data.insert(data.end(), lo_mac.begin(), lo_mac.end());
  data.insert(data.end(), hi_mac.begin(), hi_mac.end());
  const auto& lo_nonce = std::min(anonce, snonce);
  const auto& hi_nonce = std::max(anonce, snonce);
  data.insert(data.end(), lo_nonce.begin(), lo_nonce.end());
  data.insert(data.end(), hi_nonce.begin(), hi_nonce.end());
  data.push_back(0);  // counter

  ByteArray<60> stream{};
  for (std::uint8_t i = 0; i < 3; ++i) {
    data.back() = i;
    const auto block = hmac_sha1(pmk.bytes, data);
    std::copy(block.begin(), block.end(), stream.begin() + 20 * i);
  }
  Ptk ptk;
  std::copy_n(stream.begin(), 16, ptk.kck.begin());
  std::copy_n(stream.begin() + 16, 16, ptk.kek.begin());
  std::copy_n(stream.begin() + 32, 16, ptk.tk.begin());
  return ptk;
}

Mic compute_mic(const Kck& kck, std::span<const std::uint8_t> eapol_body, MicVersion version) {
  if (version != MicVersion::kHmacSha1) {
    throw CryptoError(CryptoErrc::kUnsupportedMicVersion,
                      "MIC version " + std::to_string(static_cast<int>(version)) +
                          " is not supported");
  }
  const auto full = hmac_sha1(kck, eapol_body);
  Mic mic{};
  std::copy_n(full.begin(), mic.size(), mic.begin());
  return mic;
}

}  // namespace wsim::crypto

#pragma once

// WPA2-PSK key hierarchy: passphrase -> PMK -> PTK -> EAPOL-Key MIC.

#include <span>
#include <string>
#include <string_view>

#include "wsim/common/bytes.hpp"
#include "wsim/common/mac_addr.hpp"
#include "wsim/crypto/error.hpp"

namespace wsim::crypto {

inline constexpr std::size_t kPassphraseMin = 8;
inline constexpr std::size_t kPassphraseMax = 63;
inline constexpr std::size_t kSsidMax = 32;
inline constexpr unsigned kPbkdf2Iterations = 4096;

/// WPA passphrase, 8..63 bytes.
class Passphrase {
 public:
  /// Throws CryptoError(kPassphraseLength) outside [8, 63] bytes.
  explicit Passphrase(std::string text);

  static bool valid_length(std::string_view text) {
    return text.size() >= kPassphraseMin && text.size() <= kPassphraseMax;
  }

  const std::string& text() const { return text_; }

  bool operator==(const Passphrase&) const = default;

 private:
  std::string text_;
};

struct Pmk {
  ByteArray<32> bytes{};
  bool operator==(const Pmk&) const = default;
};

using Nonce = ByteArray<32>;
using Mic = ByteArray<16>;
using Kck = ByteArray<16>;

struct Ptk {
  Kck kck{};
  ByteArray<16> kek{};
  ByteArray<16> tk{};

  ByteArray<48> concat() const;
  bool operator==(const Ptk&) const = default;
};

/// Key descriptor versions. Only HMAC-SHA1 is implemented.
enum class MicVersion : std::uint8_t {
  kHmacMd5 = 1,
  kHmacSha1 = 2,
};

/// PBKDF2-HMAC-SHA1(passphrase, ssid, 4096, 32). ssid must be 1..32 bytes.
Pmk derive_pmk_psk(const Passphrase& passphrase, std::span<const std::uint8_t> ssid);
Pmk derive_pmk_psk(const Passphrase& passphrase, std::string_view ssid);

/// Pairwise key expansion. Addresses and nonces are ordered by min/max, so
/// swapping (aa, anonce) with (sa, snonce) yields the same PTK.
Ptk derive_ptk(const Pmk& pmk, const MacAddr& aa, const MacAddr& sa, const Nonce& anonce,
               const Nonce& snonce);

/// HMAC-SHA1 over the EAPOL body (MIC field zeroed), truncated to 16 bytes.
Mic compute_mic(const Kck& kck, std::span<const std::uint8_t> eapol_body, MicVersion version);

}  // namespace wsim::crypto

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "wsim/common/bytes.hpp"
#include "wsim/common/mac_addr.hpp"
#include "wsim/crypto/psk.hpp"
#include "wsim/crypto/sae.hpp"

namespace wsim::frames {

/// Raised when a frame value would violate a structural invariant.
class FrameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Network name, at most 32 bytes. Empty is allowed (wildcard probe).
class Ssid {
 public:
  static constexpr std::size_t kMaxLength = 32;

  Ssid() = default;
  /// Throws FrameError if longer than 32 bytes.
  explicit Ssid(std::string name);

  const std::string& str() const { return name_; }
  bool empty() const { return name_.empty(); }

  auto operator<=>(const Ssid&) const = default;

 private:
  std::string name_;
};

enum class Akm : std::uint8_t { kPsk = 1, kSae = 2 };

/// Advertised AKM suites. An empty set is an open network.
class AkmSet {
 public:
  constexpr AkmSet() = default;
  constexpr AkmSet(std::initializer_list<Akm> akms) {
    for (Akm a : akms) bits_ |= static_cast<std::uint8_t>(a);
  }

  static AkmSet from_bits(std::uint8_t bits);

  bool contains(Akm a) const { return (bits_ & static_cast<std::uint8_t>(a)) != 0; }
  bool empty() const { return bits_ == 0; }
  bool is_transition() const { return contains(Akm::kPsk) && contains(Akm::kSae); }
  std::uint8_t bits() const { return bits_; }

  /// "OPEN", "WPA2", "WPA3" or "WPA2 WPA3".
  std::string label() const;

  bool operator==(const AkmSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

enum class PmfPolicy : std::uint8_t { kDisabled = 0, kOptional = 1, kRequired = 2 };

std::string_view to_string(PmfPolicy p);
std::optional<PmfPolicy> pmf_from_string(std::string_view s);
std::string_view to_string(Akm a);

/// Status codes on the wire are plain 16-bit values; these are the ones the
/// simulator produces.
enum class StatusCode : std::uint16_t {
  kSuccess = 0,
  kUnspecifiedFailure = 0x0001,
  kInvalidAkmp = 43,
  kAntiCloggingTokenRequired = 76,
};

std::string status_name(StatusCode s);

enum class ReasonCode : std::uint16_t {
  kUnspecified = 1,
  kPrevAuthNotValid = 2,
  kDeauthLeaving = 3,
  kClass3FromNonassoc = 7,
};

struct Beacon {
  Ssid ssid;
  AkmSet akms;
  PmfPolicy pmf = PmfPolicy::kDisabled;
  bool operator==(const Beacon&) const = default;
};

struct ProbeReq {
  Ssid ssid;
  bool operator==(const ProbeReq&) const = default;
};

struct ProbeResp {
  Ssid ssid;
  AkmSet akms;
  PmfPolicy pmf = PmfPolicy::kDisabled;
  bool operator==(const ProbeResp&) const = default;
};

struct SaeCommitFrame {
  crypto::SaeCommit commit;
  bool operator==(const SaeCommitFrame&) const = default;
};

struct SaeConfirmFrame {
  crypto::SaeConfirm confirm;
  bool operator==(const SaeConfirmFrame&) const = default;
};

struct SaeReject {
  StatusCode status = StatusCode::kUnspecifiedFailure;
  std::optional<crypto::AnticlogToken> token;
  bool operator==(const SaeReject&) const = default;
};

/// `akm` is empty when joining an open network.
struct AssocReq {
  std::optional<Akm> akm;
  bool mfp_capable = false;
  bool operator==(const AssocReq&) const = default;
};

struct AssocResp {
  StatusCode status = StatusCode::kSuccess;
  bool operator==(const AssocResp&) const = default;
};

struct Deauth {
  std::uint16_t reason = static_cast<std::uint16_t>(ReasonCode::kClass3FromNonassoc);
  bool operator==(const Deauth&) const = default;
};

struct EapolKey {
  std::uint8_t msg_no = 1;
  crypto::Nonce nonce{};
  crypto::Mic mic{};
  std::uint64_t replay_counter = 0;
  Bytes key_data;
  bool operator==(const EapolKey&) const = default;
};

using FrameBody = std::variant<Beacon, ProbeReq, ProbeResp, SaeCommitFrame, SaeConfirmFrame,
                               SaeReject, AssocReq, AssocResp, Deauth, EapolKey>;

/// Short lower-case body name used in logs ("beacon", "eapol_key", ...).
std::string_view body_name(const FrameBody& body);

class Frame {
 public:
  /// Throws FrameError when channel is outside 1..14, `protected_frame` is
  /// set on a non-deauth body, or an EAPOL-Key body is inconsistent.
  Frame(MacAddr src, MacAddr dst, MacAddr bssid, std::uint8_t channel, FrameBody body,
        bool protected_frame = false);

  const MacAddr& src() const { return src_; }
  const MacAddr& dst() const { return dst_; }
  const MacAddr& bssid() const { return bssid_; }
  std::uint8_t channel() const { return channel_; }
  bool is_protected() const { return protected_; }
  const FrameBody& body() const { return body_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&body_);
  }

  bool operator==(const Frame&) const = default;

 private:
  MacAddr src_;
  MacAddr dst_;
  MacAddr bssid_;
  std::uint8_t channel_;
  FrameBody body_;
  bool protected_;
};

/// Empty string when valid, otherwise the violated rule.
std::string check_eapol(const EapolKey& key);

}  // namespace wsim::frames

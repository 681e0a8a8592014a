#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wsim/crypto/psk.hpp"
#include "wsim/frames/capture.hpp"
#include "wsim/frames/frame.hpp"
#include "wsim/medium/medium.hpp"

namespace wsim::attacks {

/// EAPOL messages 1 and 2 of one four-way handshake.
struct HandshakeCapture {
  MacAddr aa;
  MacAddr sa;
  std::string ssid;
  crypto::Nonce anonce{};
  crypto::Nonce snonce{};
  /// Encoded msg2 body with the MIC field zeroed.
  Bytes msg2_body;
  crypto::Mic mic{};
  std::uint64_t replay_counter = 0;
  Tick t1 = 0;
  Tick t2 = 0;

  bool operator==(const HandshakeCapture&) const = default;
};

using TimedFrames = std::vector<std::pair<Tick, frames::Frame>>;

/// Latest msg1 -> msg2 pair with the same AA/SA and replay counter. An AA
/// that beacons a different SSID is skipped; an AA never seen beaconing is
/// accepted.
std::optional<HandshakeCapture> extract_handshake(const TimedFrames& capture,
                                                  std::string_view ssid);
std::optional<HandshakeCapture> extract_handshake(const std::vector<medium::SniffedRecord>& records,
                                                  std::string_view ssid);
std::optional<HandshakeCapture> extract_handshake(const frames::CaptureFile& capture,
                                                  std::string_view ssid);

struct VerificationResult {
  enum class Outcome { kVerified, kRejected, kIndeterminate };

  Outcome outcome = Outcome::kRejected;
  /// Set when verified.
  std::string passphrase;
  /// Set when indeterminate.
  std::string reason;

  bool verified() const { return outcome == Outcome::kVerified; }
};

std::string_view to_string(VerificationResult::Outcome o);

VerificationResult verify_candidate(const HandshakeCapture& hs, std::string_view candidate);

/// Verification with a PMK computed elsewhere (the cracker reuses this).
bool mic_matches(const HandshakeCapture& hs, const crypto::Pmk& pmk);

struct CrackResult {
  std::optional<std::string> passphrase;
  std::size_t candidates_tried = 0;
  std::chrono::duration<double> elapsed{0};
};

/// First verified candidate in list order. Every entry counts as tried,
/// including ones with an invalid length.
CrackResult crack_dictionary(const HandshakeCapture& hs, const std::vector<std::string>& wordlist);

/// One entry per line; trailing CR is stripped, blank lines kept out.
std::vector<std::string> read_wordlist(const std::filesystem::path& path);

// Handshake file layout (big-endian):
//   "WSHS1" aa(6) sa(6) ssid(u8 len + bytes) anonce(32) snonce(32) mic(16)
//   replay(u64) t1(u64) t2(u64) msg2_body(u32 len + bytes)
inline constexpr std::string_view kHandshakeMagic = "WSHS1";

Bytes serialize_handshake(const HandshakeCapture& hs);
/// Throws std::runtime_error on bad magic or truncation.
HandshakeCapture parse_handshake(std::span<const std::uint8_t> data);
void save_handshake(const std::filesystem::path& path, const HandshakeCapture& hs);
HandshakeCapture load_handshake(const std::filesystem::path& path);

}  // namespace wsim::attacks

#pragma once

// Wire format:
//   src(6) dst(6) bssid(6) channel(u8) flags(u8) tag(u8) body
// Integers are big-endian, strings carry a u8 length, EAPOL key data a u16
// length. Trailing bytes are rejected, so the encoding is injective.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "wsim/frames/frame.hpp"

namespace wsim::frames {

enum class BodyTag : std::uint8_t {
  kBeacon = 0x01,
  kProbeReq = 0x02,
  kProbeResp = 0x03,
  kSaeCommit = 0x10,
  kSaeConfirm = 0x11,
  kSaeReject = 0x12,
  kAssocReq = 0x20,
  kAssocResp = 0x21,
  kDeauth = 0x30,
  kEapolKey = 0x40,
};

/// Bytes before the body tag.
inline constexpr std::size_t kHeaderSize = 20;

class MalformedFrame : public std::runtime_error {
 public:
  MalformedFrame(std::size_t offset, std::string description);

  std::size_t offset() const { return offset_; }
  const std::string& description() const { return description_; }

 private:
  std::size_t offset_;
  std::string description_;
};

Bytes encode_frame(const Frame& frame);

/// Throws MalformedFrame.
Frame decode_frame(std::span<const std::uint8_t> bytes);

std::optional<Frame> try_decode_frame(std::span<const std::uint8_t> bytes);

/// Body encoding of an EAPOL-Key message with the MIC field zeroed; this is
/// what the MIC is computed over.
Bytes eapol_mic_input(const EapolKey& key);

}  // namespace wsim::frames

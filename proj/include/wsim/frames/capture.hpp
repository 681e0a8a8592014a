#pragma once

// Capture file layout (all integers big-endian):
//   "WSIM1" seed(u64) created(u64)
//   repeated: tick(u64) channel(u8) length(u32) frame bytes

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "wsim/common/bytes.hpp"
#include "wsim/frames/frame.hpp"

namespace wsim::frames {

inline constexpr std::string_view kCaptureMagic = "WSIM1";

struct CaptureRecord {
  Tick tick = 0;
  std::uint8_t channel = 0;
  Bytes frame_bytes;

  bool operator==(const CaptureRecord&) const = default;
};

struct CaptureFile {
  std::uint64_t seed = 0;
  std::uint64_t created = 0;
  std::vector<CaptureRecord> records;

  bool operator==(const CaptureFile&) const = default;
};

struct CaptureReadResult {
  CaptureFile capture;
  /// Records dropped because their bytes did not decode, or because the
  /// file ended inside a record.
  std::size_t skipped = 0;
};

class CaptureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument if records are not sorted by tick, and
/// CaptureError on I/O failure.
void write_capture(const std::filesystem::path& path, const CaptureFile& capture);
Bytes serialize_capture(const CaptureFile& capture);

/// Throws CaptureError on I/O failure or bad magic.
CaptureReadResult read_capture(const std::filesystem::path& path);
CaptureReadResult parse_capture(std::span<const std::uint8_t> data);

/// Decodes every record of a capture that was read back.
std::vector<std::pair<Tick, Frame>> decoded_frames(const CaptureFile& capture);

}  // namespace wsim::frames

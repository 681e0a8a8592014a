#include "wsim/frames/capture.hpp"

#include <fstream>
#include <iterator>

#include "wsim/common/wire.hpp"
#include "wsim/frames/codec.hpp"

namespace wsim::frames {

Bytes serialize_capture(const CaptureFile& capture) {
  for (std::size_t i = 1; i < capture.records.size(); ++i) {
    if (capture.records[i].tick < capture.records[i - 1].tick) {
      throw std::invalid_argument("capture records must be sorted by tick (record " +
                                  std::to_string(i) + ")");
    }
  }
  ByteWriter w;
  w.raw(as_bytes(kCaptureMagic));
  w.u64(capture.seed);
  w.u64(capture.created);
  for (const auto& rec : capture.records) {
    w.u64(rec.tick);
    w.u8(rec.channel);
    w.u32(static_cast<std::uint32_t>(rec.frame_bytes.size()));
    w.raw(rec.frame_bytes);
  }
  return w.take();
}

void write_capture(const std::filesystem::path& path, const CaptureFile& capture) {
  const Bytes data = serialize_capture(capture);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CaptureError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw CaptureError("write to " + path.string() + " failed");
}

CaptureReadResult parse_capture(std::span<const std::uint8_t> data) {
  ByteReader r(data);
  CaptureReadResult result;
  try {
    auto magic = r.raw(kCaptureMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kCaptureMagic.begin())) {
      throw CaptureError("bad capture magic");
    }
    result.capture.seed = r.u64();
    result.capture.created = r.u64();
  } catch (const TruncatedInput&) {
    throw CaptureError("capture header truncated");
  }
  while (!r.done()) {
    try {
      CaptureRecord rec;
      rec.tick = r.u64();
      rec.channel = r.u8();
      const std::uint32_t len = r.u32();
      auto body = r.raw(len);
      rec.frame_bytes.assign(body.begin(), body.end());
      if (try_decode_frame(rec.frame_bytes)) {
        result.capture.records.push_back(std::move(rec));
      } else {
        ++result.skipped;
      }
    } catch (const TruncatedInput&) {
      ++result.skipped;
      break;
    }
  }
  return result;
}

CaptureReadResult read_capture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CaptureError("cannot open " + path.string());
  const Bytes data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_capture(data);
}

std::vector<std::pair<Tick, Frame>> decoded_frames(const CaptureFile& capture) {
  std::vector<std::pair<Tick, Frame>> out;
  for (const auto& rec : capture.records) {
    if (auto f = try_decode_frame(rec.frame_bytes)) out.emplace_back(rec.tick, std::move(*f));
  }
  return out;
}

}  // namespace wsim::frames

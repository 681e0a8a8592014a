#pragma once

// Big-endian writer/reader for the simulator's binary formats.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wsim/common/bytes.hpp"

namespace wsim {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { put_be(v, 2); }
  void u32(std::uint32_t v) { put_be(v, 4); }
  void u64(std::uint64_t v) { put_be(v, 8); }
  void raw(std::span<const std::uint8_t> data) { out_.insert(out_.end(), data.begin(), data.end()); }

  /// Length-prefixed with a u8 length. Caller guarantees size <= 255.
  void str8(std::string_view s) {
    u8(static_cast<std::uint8_t>(s.size()));
    raw(as_bytes(s));
  }

  const Bytes& bytes() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  void put_be(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  Bytes out_;
};

/// Thrown by ByteReader when the input ends early.
class TruncatedInput : public std::runtime_error {
 public:
  TruncatedInput(std::size_t offset, std::size_t wanted)
      : std::runtime_error("truncated input at offset " + std::to_string(offset) + " (need " +
                           std::to_string(wanted) + " more bytes)"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get_be(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get_be(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get_be(4)); }
  std::uint64_t u64() { return get_be(8); }

  std::span<const std::uint8_t> raw(std::size_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  template <std::size_t N>
  ByteArray<N> array() {
    ByteArray<N> out{};
    auto src = raw(N);
    std::copy(src.begin(), src.end(), out.begin());
    return out;
  }

  std::string str8() {
    const std::size_t n = u8();
    auto src = raw(n);
    return std::string(src.begin(), src.end());
  }

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw TruncatedInput(pos_, n - remaining());
  }

  std::uint64_t get_be(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 8) | data_[pos_ + i];
    pos_ += width;
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace wsim

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/random_frames.hpp"
#include "wsim/frames/capture.hpp"
#include "wsim/frames/codec.hpp"

namespace wsim::frames {
namespace {

const MacAddr kAp = MacAddr::parse("B8:27:EB:6C:61:7A");
const MacAddr kSta = MacAddr::parse("02:00:00:00:00:01");

Frame beacon() {
  return Frame(kAp, MacAddr::broadcast(), kAp, 11,
               Beacon{Ssid("WPA3OpenWrt"), AkmSet{Akm::kPsk, Akm::kSae}, PmfPolicy::kDisabled});
}

TEST(FrameCodec, RandomRoundTripAllVariants) {
  Rng rng(1000);
  const std::size_t variants = std::variant_size_v<FrameBody>;
  for (int i = 0; i < 2000; ++i) {
    const Frame f = test::random_frame(rng, i % variants);
    const Bytes b = encode_frame(f);
    const Frame back = decode_frame(b);
    ASSERT_EQ(back, f) << "variant " << i % variants;
    ASSERT_EQ(encode_frame(back), b);
  }
}

TEST(FrameCodec, StructuralEqualityMatchesByteEquality) {
  Rng rng(77);
  const std::size_t variants = std::variant_size_v<FrameBody>;
  for (int i = 0; i < 500; ++i) {
    Rng a_rng(rng.next_u64());
    Rng b_rng = (i % 2 == 0) ? a_rng : Rng(rng.next_u64());
    const Frame a = test::random_frame(a_rng, i % variants);
    const Frame b = test::random_frame(b_rng, i % variants);
    ASSERT_EQ(a == b, encode_frame(a) == encode_frame(b));
  }
}

TEST(FrameCodec, BeaconLayout) {
  const Bytes b = encode_frame(beacon());
  ASSERT_EQ(b.size(), kHeaderSize + 1 + 1 + 11 + 2);
  EXPECT_EQ(b[18], 11);
  EXPECT_EQ(b[19], 0);
  EXPECT_EQ(b[20], static_cast<std::uint8_t>(BodyTag::kBeacon));
  EXPECT_EQ(b[21], 11);
  EXPECT_EQ(b[33], 0x03);
}

TEST(FrameCodec, TruncationIsMalformed) {
  const Bytes full = encode_frame(beacon());
  for (std::size_t n = 0; n < full.size(); ++n) {
    EXPECT_THROW(decode_frame(std::span(full).first(n)), MalformedFrame) << n;
  }
}

TEST(FrameCodec, UnknownTagIsNamed) {
  Bytes b = encode_frame(beacon());
  b[20] = 0xFF;
  try {
    decode_frame(b);
    FAIL();
  } catch (const MalformedFrame& e) {
    EXPECT_EQ(e.offset(), 20u);
    EXPECT_NE(e.description().find("0xFF"), std::string::npos);
  }
}

TEST(FrameCodec, TrailingBytesRejected) {
  Bytes b = encode_frame(beacon());
  b.push_back(0);
  EXPECT_THROW(decode_frame(b), MalformedFrame);
}

TEST(FrameCodec, InvariantViolationsRejectedOnDecode) {
  Bytes b = encode_frame(beacon());
  b[18] = 15;
  EXPECT_THROW(decode_frame(b), MalformedFrame);

  b = encode_frame(beacon());
  b[19] = 1;
  EXPECT_THROW(decode_frame(b), MalformedFrame);

  EapolKey k;
  k.msg_no = 2;
  k.mic.fill(1);
  Bytes e = encode_frame(Frame(kSta, kAp, kAp, 11, k));
  std::fill(e.begin() + kHeaderSize + 2 + 32, e.begin() + kHeaderSize + 2 + 48, 0);
  EXPECT_THROW(decode_frame(e), MalformedFrame);

  Rng rng(3);
  Bytes c = encode_frame(Frame(kSta, kAp, kAp, 11,
                               SaeCommitFrame{crypto::SaeCommit(crypto::random_scalar(rng),
                                                                crypto::random_group_element(rng))}));
  c[kHeaderSize + 3 + 32 + 40] ^= 1;
  EXPECT_THROW(decode_frame(c), MalformedFrame);
}

TEST(FrameConstruction, EnforcesInvariants) {
  EXPECT_THROW(Ssid(std::string(33, 'a')), FrameError);
  EXPECT_NO_THROW(Ssid(std::string(32, 'a')));
  const Beacon b{Ssid("x"), {}, PmfPolicy::kDisabled};
  EXPECT_THROW(Frame(kAp, kSta, kAp, 0, b), FrameError);
  EXPECT_THROW(Frame(kAp, kSta, kAp, 15, b), FrameError);
  EXPECT_THROW(Frame(kAp, kSta, kAp, 11, b, true), FrameError);
  EXPECT_NO_THROW(Frame(kAp, kSta, kAp, 11, Deauth{}, true));

  EapolKey m1;
  m1.msg_no = 1;
  EXPECT_NO_THROW(Frame(kAp, kSta, kAp, 11, m1));
  m1.mic[0] = 1;
  EXPECT_THROW(Frame(kAp, kSta, kAp, 11, m1), FrameError);
  EapolKey m2;
  m2.msg_no = 2;
  EXPECT_THROW(Frame(kSta, kAp, kAp, 11, m2), FrameError);
  m2.msg_no = 5;
  m2.mic[0] = 1;
  EXPECT_THROW(Frame(kSta, kAp, kAp, 11, m2), FrameError);
}

TEST(FrameCodec, MicInputZeroesMic) {
  EapolKey k;
  k.msg_no = 2;
  k.mic.fill(0xAB);
  k.key_data = {1, 2, 3};
  EapolKey z = k;
  z.mic.fill(0x11);
  EXPECT_EQ(eapol_mic_input(k), eapol_mic_input(z));
  const Bytes in = eapol_mic_input(k);
  EXPECT_TRUE(std::all_of(in.begin() + 34, in.begin() + 50, [](auto v) { return v == 0; }));
}

TEST(AkmSetTest, Labels) {
  EXPECT_EQ(AkmSet{}.label(), "OPEN");
  EXPECT_EQ((AkmSet{Akm::kPsk}.label()), "WPA2");
  EXPECT_EQ((AkmSet{Akm::kSae}.label()), "WPA3");
  EXPECT_EQ((AkmSet{Akm::kPsk, Akm::kSae}.label()), "WPA2 WPA3");
  EXPECT_THROW(AkmSet::from_bits(4), FrameError);
}

class CaptureTest : public ::testing::Test {
 protected:
  std::filesystem::path path_ = std::filesystem::temp_directory_path() /
                                ("wsim_capture_" + std::to_string(::getpid()) + ".wsim");
  void TearDown() override { std::filesystem::remove(path_); }
};

TEST_F(CaptureTest, EmptyRoundTrip) {
  CaptureFile c{42, 1700000000, {}};
  write_capture(path_, c);
  const auto r = read_capture(path_);
  EXPECT_EQ(r.capture, c);
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_EQ(std::filesystem::file_size(path_), 5u + 16u);
}

TEST_F(CaptureTest, ThreeFramesBitExact) {
  Rng rng(5);
  CaptureFile c{7, 123, {}};
  for (int i = 0; i < 3; ++i) {
    const Frame f = test::random_frame(rng, static_cast<std::size_t>(i * 3));
    c.records.push_back({static_cast<Tick>(i * 10), f.channel(), encode_frame(f)});
  }
  write_capture(path_, c);
  EXPECT_EQ(read_capture(path_).capture, c);
  std::ifstream in(path_, std::ios::binary);
  const Bytes disk{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  EXPECT_EQ(disk, serialize_capture(c));
  EXPECT_EQ(decoded_frames(c).size(), 3u);
}

TEST_F(CaptureTest, CorruptRecordSkipped) {
  Rng rng(6);
  CaptureFile c{1, 2, {}};
  for (int i = 0; i < 3; ++i) {
    const Frame f = test::random_frame(rng, 9);
    c.records.push_back({static_cast<Tick>(i), f.channel(), encode_frame(f)});
  }
  c.records[1].frame_bytes[20] = 0xEE;
  write_capture(path_, c);
  const auto r = read_capture(path_);
  EXPECT_EQ(r.skipped, 1u);
  ASSERT_EQ(r.capture.records.size(), 2u);
  EXPECT_EQ(r.capture.records[0], c.records[0]);
  EXPECT_EQ(r.capture.records[1], c.records[2]);
}

TEST_F(CaptureTest, TruncatedTailCountsAsSkipped) {
  CaptureFile c{1, 2, {{0, 11, encode_frame(beacon())}, {5, 11, encode_frame(beacon())}}};
  Bytes data = serialize_capture(c);
  data.resize(data.size() - 4);
  const auto r = parse_capture(data);
  EXPECT_EQ(r.capture.records.size(), 1u);
  EXPECT_EQ(r.skipped, 1u);
}

TEST_F(CaptureTest, Errors) {
  CaptureFile unsorted{0, 0, {{5, 11, {}}, {4, 11, {}}}};
  EXPECT_THROW(write_capture(path_, unsorted), std::invalid_argument);
  const Bytes bad = {'W', 'S', 'I', 'M', '2', 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_THROW(parse_capture(bad), CaptureError);
  EXPECT_THROW(read_capture("/nonexistent/dir/x.wsim"), CaptureError);
}

}  // namespace
}  // namespace wsim::frames

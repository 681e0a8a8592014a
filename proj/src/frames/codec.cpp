#include "wsim/frames/codec.hpp"

#include <cstdio>

#include "wsim/common/wire.hpp"

namespace wsim::frames {
namespace {

constexpr std::uint8_t kFlagProtected = 0x01;

void put_token(ByteWriter& w, const std::optional<crypto::AnticlogToken>& token) {
  w.u8(token ? 1 : 0);
  if (!token) return;
  w.raw(token->mac.bytes());
  w.raw(token->tag);
  w.u64(token->issued_at);
}

void put_network(ByteWriter& w, const Ssid& ssid, AkmSet akms, PmfPolicy pmf) {
  w.str8(ssid.str());
  w.u8(akms.bits());
  w.u8(static_cast<std::uint8_t>(pmf));
}

struct BodyEncoder {
  ByteWriter& w;

  void operator()(const Beacon& b) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kBeacon));
    put_network(w, b.ssid, b.akms, b.pmf);
  }
  void operator()(const ProbeReq& p) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kProbeReq));
    w.str8(p.ssid.str());
  }
  void operator()(const ProbeResp& p) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kProbeResp));
    put_network(w, p.ssid, p.akms, p.pmf);
  }
  void operator()(const SaeCommitFrame& c) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kSaeCommit));
    w.u16(crypto::kSaeGroup);
    w.raw(c.commit.scalar());
    w.raw(c.commit.element().x());
    w.raw(c.commit.element().y());
    put_token(w, c.commit.token());
  }
  void operator()(const SaeConfirmFrame& c) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kSaeConfirm));
    w.u16(c.confirm.send_confirm);
    w.raw(c.confirm.confirm_hash);
  }
  void operator()(const SaeReject& r) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kSaeReject));
    w.u16(static_cast<std::uint16_t>(r.status));
    put_token(w, r.token);
  }
  void operator()(const AssocReq& a) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kAssocReq));
    w.u8(a.akm ? static_cast<std::uint8_t>(*a.akm) : 0);
    w.u8(a.mfp_capable ? 1 : 0);
  }
  void operator()(const AssocResp& a) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kAssocResp));
    w.u16(static_cast<std::uint16_t>(a.status));
  }
  void operator()(const Deauth& d) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kDeauth));
    w.u16(d.reason);
  }
  void operator()(const EapolKey& k) {
    w.u8(static_cast<std::uint8_t>(BodyTag::kEapolKey));
    w.u8(k.msg_no);
    w.raw(k.nonce);
    w.raw(k.mic);
    w.u64(k.replay_counter);
    w.u16(static_cast<std::uint16_t>(k.key_data.size()));
    w.raw(k.key_data);
  }
};

[[noreturn]] void malformed(std::size_t offset, std::string what) {
  throw MalformedFrame(offset, std::move(what));
}

std::uint8_t read_flag(ByteReader& r, const char* field) {
  const std::size_t at = r.offset();
  const std::uint8_t v = r.u8();
  if (v > 1) malformed(at, std::string(field) + " flag must be 0 or 1");
  return v;
}

std::optional<crypto::AnticlogToken> read_token(ByteReader& r) {
  if (!read_flag(r, "token")) return std::nullopt;
  crypto::AnticlogToken t;
  t.mac = MacAddr(r.array<6>());
  t.tag = r.array<32>();
  t.issued_at = r.u64();
  return t;
}

Ssid read_ssid(ByteReader& r) {
  const std::size_t at = r.offset();
  std::string name = r.str8();
  if (name.size() > Ssid::kMaxLength) malformed(at, "ssid longer than 32 bytes");
  return Ssid(std::move(name));
}

AkmSet read_akms(ByteReader& r) {
  const std::size_t at = r.offset();
  const std::uint8_t bits = r.u8();
  if (bits & ~0x03u) malformed(at, "unknown AKM bits");
  return AkmSet::from_bits(bits);
}

PmfPolicy read_pmf(ByteReader& r) {
  const std::size_t at = r.offset();
  const std::uint8_t v = r.u8();
  if (v > 2) malformed(at, "unknown PMF policy " + std::to_string(v));
  return static_cast<PmfPolicy>(v);
}

FrameBody read_body(ByteReader& r) {
  const std::size_t tag_at = r.offset();
  const std::uint8_t tag = r.u8();
  switch (static_cast<BodyTag>(tag)) {
    case BodyTag::kBeacon: {
      Beacon b;
      b.ssid = read_ssid(r);
      b.akms = read_akms(r);
      b.pmf = read_pmf(r);
      return b;
    }
    case BodyTag::kProbeReq:
      return ProbeReq{read_ssid(r)};
    case BodyTag::kProbeResp: {
      ProbeResp p;
      p.ssid = read_ssid(r);
      p.akms = read_akms(r);
      p.pmf = read_pmf(r);
      return p;
    }
    case BodyTag::kSaeCommit: {
      const std::size_t group_at = r.offset();
      if (r.u16() != crypto::kSaeGroup) malformed(group_at, "unsupported SAE group");
      const std::size_t scalar_at = r.offset();
      const auto scalar = r.array<32>();
      const std::size_t elem_at = r.offset();
      const auto x = r.array<32>();
      const auto y = r.array<32>();
      auto token = read_token(r);
      if (!crypto::scalar_in_range(scalar)) malformed(scalar_at, "SAE scalar out of range");
      try {
        auto elem = crypto::SaeGroupElement::from_coordinates(x, y);
        return SaeCommitFrame{crypto::SaeCommit(scalar, elem, std::move(token))};
      } catch (const crypto::CryptoError&) {
        malformed(elem_at, "SAE element not on curve");
      }
    }
    case BodyTag::kSaeConfirm: {
      SaeConfirmFrame c;
      c.confirm.send_confirm = r.u16();
      c.confirm.confirm_hash = r.array<32>();
      return c;
    }
    case BodyTag::kSaeReject: {
      SaeReject rej;
      rej.status = static_cast<StatusCode>(r.u16());
      rej.token = read_token(r);
      return rej;
    }
    case BodyTag::kAssocReq: {
      AssocReq a;
      const std::size_t at = r.offset();
      const std::uint8_t akm = r.u8();
      if (akm > 2) malformed(at, "unknown AKM " + std::to_string(akm));
      if (akm != 0) a.akm = static_cast<Akm>(akm);
      a.mfp_capable = read_flag(r, "mfp") != 0;
      return a;
    }
    case BodyTag::kAssocResp:
      return AssocResp{static_cast<StatusCode>(r.u16())};
    case BodyTag::kDeauth:
      return Deauth{r.u16()};
    case BodyTag::kEapolKey: {
      const std::size_t at = r.offset();
      EapolKey k;
      k.msg_no = r.u8();
      k.nonce = r.array<32>();
      k.mic = r.array<16>();
      k.replay_counter = r.u64();
      const std::size_t len = r.u16();
      auto data = r.raw(len);
      k.key_data.assign(data.begin(), data.end());
      if (auto err = check_eapol(k); !err.empty()) malformed(at, err);
      return k;
    }
  }
  char hex[8];
  std::snprintf(hex, sizeof hex, "0x%02X", tag);
  malformed(tag_at, std::string("unknown body tag ") + hex);
}

}  // namespace

MalformedFrame::MalformedFrame(std::size_t offset, std::string description)
    : std::runtime_error("malformed frame at offset " + std::to_string(offset) + ": " +
                         description),
      offset_(offset),
      description_(std::move(description)) {}

Bytes encode_frame(const Frame& frame) {
  ByteWriter w;
  w.raw(frame.src().bytes());
  w.raw(frame.dst().bytes());
  w.raw(frame.bssid().bytes());
  w.u8(frame.channel());
  w.u8(frame.is_protected() ? kFlagProtected : 0);
  std::visit(BodyEncoder{w}, frame.body());
  return w.take();
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  try {
    const MacAddr src(r.array<6>());
    const MacAddr dst(r.array<6>());
    const MacAddr bssid(r.array<6>());
    const std::size_t channel_at = r.offset();
    const std::uint8_t channel = r.u8();
    if (channel < 1 || channel > 14) {
      malformed(channel_at, "channel " + std::to_string(channel) + " outside 1..14");
    }
    const std::size_t flags_at = r.offset();
    const std::uint8_t flags = r.u8();
    if (flags & ~kFlagProtected) malformed(flags_at, "reserved flag bits set");
    FrameBody body = read_body(r);
    if (!r.done()) malformed(r.offset(), std::to_string(r.remaining()) + " trailing bytes");
    if ((flags & kFlagProtected) && !std::holds_alternative<Deauth>(body)) {
      malformed(flags_at, "protected flag on a non-deauthentication frame");
    }
    return Frame(src, dst, bssid, channel, std::move(body), (flags & kFlagProtected) != 0);
  } catch (const TruncatedInput& e) {
    throw MalformedFrame(e.offset(), "truncated");
  }
}

std::optional<Frame> try_decode_frame(std::span<const std::uint8_t> bytes) {
  try {
    return decode_frame(bytes);
  } catch (const MalformedFrame&) {
    return std::nullopt;
  }
}

Bytes eapol_mic_input(const EapolKey& key) {
  EapolKey zeroed = key;
  zeroed.mic = {};
  ByteWriter w;
  BodyEncoder{w}(zeroed);
  return w.take();
}

}  // namespace wsim::frames

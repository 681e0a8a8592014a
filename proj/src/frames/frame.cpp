#include "wsim/frames/frame.hpp"

namespace wsim::frames {

Ssid::Ssid(std::string name) : name_(std::move(name)) {
  if (name_.size() > kMaxLength) {
    throw FrameError("ssid is " + std::to_string(name_.size()) + " bytes, limit is 32");
  }
}

AkmSet AkmSet::from_bits(std::uint8_t bits) {
  if (bits & ~0x03u) throw FrameError("unknown AKM bits " + std::to_string(bits));
  AkmSet s;
  s.bits_ = bits;
  return s;
}

std::string AkmSet::label() const {
  if (empty()) return "OPEN";
  if (is_transition()) return "WPA2 WPA3";
  return contains(Akm::kSae) ? "WPA3" : "WPA2";
}

std::string_view to_string(PmfPolicy p) {
  switch (p) {
    case PmfPolicy::kDisabled:
      return "disabled";
    case PmfPolicy::kOptional:
      return "optional";
    case PmfPolicy::kRequired:
      return "required";
  }
  return "?";
}

std::optional<PmfPolicy> pmf_from_string(std::string_view s) {
  if (s == "disabled") return PmfPolicy::kDisabled;
  if (s == "optional") return PmfPolicy::kOptional;
  if (s == "required") return PmfPolicy::kRequired;
  return std::nullopt;
}

std::string_view to_string(Akm a) { return a == Akm::kPsk ? "psk" : "sae"; }

std::string status_name(StatusCode s) {
  switch (s) {
    case StatusCode::kSuccess:
      return "success";
    case StatusCode::kUnspecifiedFailure:
      return "unspecified_failure";
    case StatusCode::kInvalidAkmp:
      return "invalid_akmp";
    case StatusCode::kAntiCloggingTokenRequired:
      return "anti_clogging_token_required";
  }
  return "status_" + std::to_string(static_cast<unsigned>(s));
}

std::string_view body_name(const FrameBody& body) {
  static constexpr std::string_view kNames[] = {
      "beacon",  "probe_req",  "probe_resp", "sae_commit", "sae_confirm",
      "sae_reject", "assoc_req", "assoc_resp", "deauth",     "eapol_key"};
  static_assert(std::size(kNames) == std::variant_size_v<FrameBody>);
  return kNames[body.index()];
}

std::string check_eapol(const EapolKey& key) {
  if (key.msg_no < 1 || key.msg_no > 4) return "EAPOL-Key message number must be 1..4";
  const bool zero_mic = key.mic == crypto::Mic{};
  if (key.msg_no == 1 && !zero_mic) return "EAPOL-Key message 1 must carry a zero MIC";
  if (key.msg_no != 1 && zero_mic) return "EAPOL-Key message 2-4 must carry a MIC";
  if (key.key_data.size() > 0xffff) return "EAPOL-Key data too long";
  return {};
}

Frame::Frame(MacAddr src, MacAddr dst, MacAddr bssid, std::uint8_t channel, FrameBody body,
             bool protected_frame)
    : src_(src),
      dst_(dst),
      bssid_(bssid),
      channel_(channel),
      body_(std::move(body)),
      protected_(protected_frame) {
  if (channel_ < 1 || channel_ > 14) {
    throw FrameError("channel " + std::to_string(channel_) + " outside 1..14");
  }
  if (protected_ && !std::holds_alternative<Deauth>(body_)) {
    throw FrameError("only deauthentication frames can be protected");
  }
  if (const auto* key = std::get_if<EapolKey>(&body_)) {
    if (auto err = check_eapol(*key); !err.empty()) throw FrameError(err);
  }
}

}  // namespace wsim::frames

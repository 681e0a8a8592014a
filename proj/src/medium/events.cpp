#include "wsim/medium/events.hpp"

#include <array>
#include <istream>
#include <stdexcept>
#include <utility>

namespace wsim::medium {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<EventKind, std::string_view>, 33> kKindNames{{
    {EventKind::kBeaconStarted, "beacon_started"},
    {EventKind::kOverloaded, "overloaded"},
    {EventKind::kAntiCloggingDemanded, "anticlogging_demanded"},
    {EventKind::kSaeAuthenticated, "sae_authenticated"},
    {EventKind::kSaeConfirmFailed, "sae_confirm_failed"},
    {EventKind::kPeerAssociated, "peer_associated"},
    {EventKind::kPeerConnected, "peer_connected"},
    {EventKind::kPeerDisconnected, "peer_disconnected"},
    {EventKind::kDeauthIgnored, "deauth_ignored"},
    {EventKind::kAssocRefused, "assoc_refused"},
    {EventKind::kMicFailure, "mic_failure"},
    {EventKind::kFrameIgnored, "frame_ignored"},
    {EventKind::kMalformedFrame, "malformed_frame"},
    {EventKind::kScanStarted, "scan_started"},
    {EventKind::kNetworkSelected, "network_selected"},
    {EventKind::kAttemptStarted, "attempt_started"},
    {EventKind::kAttemptSucceeded, "attempt_succeeded"},
    {EventKind::kAttemptFailed, "attempt_failed"},
    {EventKind::kSaeRejected, "sae_rejected"},
    {EventKind::kConnected, "connected"},
    {EventKind::kDisconnected, "disconnected"},
    {EventKind::kAttackStarted, "attack_started"},
    {EventKind::kAttackStopped, "attack_stopped"},
    {EventKind::kHandshakeCaptured, "handshake_captured"},
    {EventKind::kEvilTwinSpawned, "evil_twin_spawned"},
    {EventKind::kEvilTwinRemoved, "evil_twin_removed"},
    {EventKind::kAttackClosed, "attack_closed"},
    {EventKind::kCrackFinished, "crack_finished"},
    {EventKind::kPageServed, "page_served"},
    {EventKind::kSubmitted, "submitted"},
    {EventKind::kVerified, "verified"},
    {EventKind::kRejected, "rejected"},
    {EventKind::kFakeSuccessShown, "fake_success_shown"},
}};

void add_body_summary(json& rec, const frames::Frame& f) {
  using namespace frames;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Beacon> || std::is_same_v<T, ProbeResp>) {
          rec["ssid"] = b.ssid.str();
          rec["akms"] = b.akms.label();
          rec["pmf"] = std::string(to_string(b.pmf));
        } else if constexpr (std::is_same_v<T, ProbeReq>) {
          rec["ssid"] = b.ssid.str();
        } else if constexpr (std::is_same_v<T, SaeCommitFrame>) {
          rec["scalar"] = to_hex(b.commit.scalar()).substr(0, 16);
          rec["token"] = b.commit.token().has_value();
        } else if constexpr (std::is_same_v<T, SaeConfirmFrame>) {
          rec["send_confirm"] = b.confirm.send_confirm;
        } else if constexpr (std::is_same_v<T, SaeReject>) {
          rec["status"] = static_cast<unsigned>(b.status);
          rec["token"] = b.token.has_value();
        } else if constexpr (std::is_same_v<T, AssocReq>) {
          rec["akm"] = b.akm ? std::string(to_string(*b.akm)) : std::string("none");
          rec["mfp"] = b.mfp_capable;
        } else if constexpr (std::is_same_v<T, AssocResp>) {
          rec["status"] = static_cast<unsigned>(b.status);
        } else if constexpr (std::is_same_v<T, Deauth>) {
          rec["reason"] = b.reason;
        } else if constexpr (std::is_same_v<T, EapolKey>) {
          rec["msg"] = b.msg_no;
          rec["replay"] = b.replay_counter;
        }
      },
      f.body());
}

}  // namespace

std::string_view to_string(EventKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

json event_record(const ProtocolEvent& ev) {
  json rec = {{"v", kLogVersion},
              {"type", "event"},
              {"tick", ev.tick},
              {"actor", ev.actor},
              {"kind", std::string(to_string(ev.kind))}};
  if (ev.peer) rec["peer"] = ev.peer->to_string();
  if (ev.bssid) rec["bssid"] = ev.bssid->to_string();
  if (ev.value != 0) rec["value"] = ev.value;
  if (!ev.detail.empty()) rec["detail"] = ev.detail;
  return rec;
}

json delivery_record(const DeliveryEvent& ev, const std::function<std::string(EndpointId)>& name_of,
                     const std::function<std::string(EndpointId)>& role_of) {
  json rec = {{"v", kLogVersion},       {"type", "delivery"},
              {"tick", ev.tick},        {"seq", ev.seq},
              {"channel", ev.channel},  {"sender", name_of(ev.sender)},
              {"role", role_of(ev.sender)}};
  if (ev.frame) {
    rec["src"] = ev.frame->src().to_string();
    rec["dst"] = ev.frame->dst().to_string();
    rec["bssid"] = ev.frame->bssid().to_string();
    rec["body"] = std::string(frames::body_name(ev.frame->body()));
    if (ev.frame->is_protected()) rec["protected"] = true;
    add_body_summary(rec, *ev.frame);
  } else {
    rec["body"] = "raw";
    rec["len"] = ev.bytes.size();
  }
  json to = json::array();
  for (auto id : ev.delivered) to.push_back(name_of(id));
  rec["to"] = std::move(to);
  if (!ev.dropped.empty()) {
    json lost = json::array();
    for (auto id : ev.dropped) lost.push_back(name_of(id));
    rec["lost"] = std::move(lost);
  }
  return rec;
}

std::vector<json> read_jsonl(std::istream& in) {
  std::vector<json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.is_object() || rec.value("v", 0) != kLogVersion) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": unsupported record version");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace wsim::medium

#pragma once

// Protocol events and the JSONL record schema (version 1).
//
// Every record is a JSON object with "v":1 and a "type" of "delivery" or
// "event". Reports are computed from this record stream only, so replaying
// a log file gives the same report as the live run.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "wsim/common/bytes.hpp"
#include "wsim/common/mac_addr.hpp"
#include "wsim/medium/medium.hpp"

namespace wsim::medium {

inline constexpr int kLogVersion = 1;

enum class EventKind {
  // AP side
  kBeaconStarted,
  kOverloaded,
  kAntiCloggingDemanded,
  kSaeAuthenticated,
  kSaeConfirmFailed,
  kPeerAssociated,
  kPeerConnected,
  kPeerDisconnected,
  kDeauthIgnored,
  kAssocRefused,
  kMicFailure,
  kFrameIgnored,
  kMalformedFrame,
  // client side
  kScanStarted,
  kNetworkSelected,
  kAttemptStarted,
  kAttemptSucceeded,
  kAttemptFailed,
  kSaeRejected,
  kConnected,
  kDisconnected,
  // attacker side
  kAttackStarted,
  kAttackStopped,
  kHandshakeCaptured,
  kEvilTwinSpawned,
  kEvilTwinRemoved,
  kAttackClosed,
  kCrackFinished,
  // portal
  kPageServed,
  kSubmitted,
  kVerified,
  kRejected,
  kFakeSuccessShown,
};

std::string_view to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(std::string_view s);

struct ProtocolEvent {
  Tick tick = 0;
  std::string actor;
  EventKind kind = EventKind::kFrameIgnored;
  std::optional<MacAddr> peer;
  std::optional<MacAddr> bssid;
  std::int64_t value = 0;
  std::string detail;
};

nlohmann::json event_record(const ProtocolEvent& ev);

/// `names` maps endpoint ids to actor names, `roles` to actor roles.
nlohmann::json delivery_record(const DeliveryEvent& ev,
                               const std::function<std::string(EndpointId)>& name_of,
                               const std::function<std::string(EndpointId)>& role_of);

using RecordSink = std::function<void(const nlohmann::json&)>;

/// Writes one compact JSON object per line.
class JsonlWriter {
 public:
  explicit JsonlWriter(std::ostream& out) : out_(out) {}
  void operator()(const nlohmann::json& rec) { out_ << rec.dump() << '\n'; }

 private:
  std::ostream& out_;
};

/// Reads a JSONL log. Throws std::runtime_error with the line number on a
/// bad line or an unsupported version.
std::vector<nlohmann::json> read_jsonl(std::istream& in);

}  // namespace wsim::medium

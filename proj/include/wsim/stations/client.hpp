#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wsim/common/rng.hpp"
#include "wsim/crypto/psk.hpp"
#include "wsim/crypto/sae.hpp"
#include "wsim/frames/frame.hpp"
#include "wsim/stations/output.hpp"

namespace wsim::stations {

enum class ClientCapability { kWpa2Only, kWpa3Capable, kTransitionIncompatible };

std::string_view to_string(ClientCapability c);
std::optional<ClientCapability> capability_from_string(std::string_view s);

struct KnownNetwork {
  frames::Ssid ssid;
  std::optional<crypto::Passphrase> passphrase;
};

struct ClientConfig {
  MacAddr mac;
  ClientCapability capability = ClientCapability::kWpa2Only;
  KnownNetwork known_network;
  bool auto_reconnect = true;
  Tick reconnect_backoff = 500;
  /// Extra uniform delay in [0, backoff_jitter] added to every backoff.
  Tick backoff_jitter = 100;
  bool mfp_capable = true;
  Tick start_tick = 0;
  Tick scan_duration = 120;
  Tick attempt_timeout = 1000;
  unsigned max_failures = 3;
  Tick stable_after = 2000;
  Tick beacon_loss_timeout = 1000;
  unsigned max_token_retries = 3;
  std::uint8_t channel = 11;
};

/// A network is identified by BSSID and advertised security, so a rogue
/// that clones the BSSID is still a different network.
struct NetworkKey {
  MacAddr bssid;
  frames::AkmSet akms;

  auto operator<=>(const NetworkKey& o) const {
    if (auto c = bssid <=> o.bssid; c != 0) return c;
    return akms.bits() <=> o.akms.bits();
  }
  bool operator==(const NetworkKey&) const = default;
};

struct ScanEntry {
  NetworkKey key;
  frames::Ssid ssid;
  frames::PmfPolicy pmf = frames::PmfPolicy::kDisabled;
  Tick last_seen = 0;
};

struct Selection {
  NetworkKey key;
  /// Empty for an open network.
  std::optional<frames::Akm> akm;
  frames::PmfPolicy pmf = frames::PmfPolicy::kDisabled;

  bool operator==(const Selection&) const = default;
};

using FailureTable = std::map<NetworkKey, unsigned>;

bool can_join(const ClientConfig& config, frames::AkmSet akms);

/// Chooses among scanned networks with the known SSID that the client can
/// join. Networks with max_failures consecutive failures are skipped unless
/// every candidate is exhausted. Secured beats open, SAE beats PSK for
/// WPA3-capable clients, and ties go to the lowest BSSID.
std::optional<Selection> select_network(const ClientConfig& config,
                                        const std::vector<ScanEntry>& scan,
                                        const FailureTable& failures);

enum class ClientPhase {
  kIdle,
  kScanning,
  kSaeCommitted,
  kSaeConfirmSent,
  kAssociating,
  kFourWayInProgress,
  kConnected,
  kBackoff,
};

std::string_view to_string(ClientPhase p);

class Client {
 public:
  Client(ClientConfig config, Rng rng);

  const ClientConfig& config() const { return config_; }
  ClientPhase phase() const { return phase_; }
  bool connected() const { return phase_ == ClientPhase::kConnected; }
  /// Network of the current attempt or connection.
  const std::optional<Selection>& current() const { return current_; }
  Tick connected_since() const { return connected_since_; }
  bool pmf_negotiated() const { return pmf_negotiated_; }
  const FailureTable& failures() const { return failures_; }
  std::uint64_t attempts() const { return attempt_id_; }

  StationOutput on_frame(const frames::Frame& frame, Tick now);
  StationOutput on_tick(Tick now);

  /// Drops the current connection or attempt as if the link had failed.
  StationOutput disconnect(Tick now, const std::string& reason);

 private:
  frames::Frame to_ap(frames::FrameBody body) const;
  void start_scan(Tick now, StationOutput& out);
  void finish_scan(Tick now, StationOutput& out);
  void start_attempt(const Selection& sel, Tick now, StationOutput& out);
  void send_commit(StationOutput& out, std::optional<crypto::AnticlogToken> token);
  void fail_attempt(Tick now, const std::string& reason, StationOutput& out);
  void succeed(Tick now, StationOutput& out);
  void enter_backoff(Tick now);
  void record_beacon(const frames::Frame& f, const frames::Ssid& ssid, frames::AkmSet akms,
                     frames::PmfPolicy pmf, Tick now);
  bool in_attempt() const;

  ClientConfig config_;
  Rng rng_;
  std::optional<crypto::Pmk> pmk_;
  ClientPhase phase_ = ClientPhase::kIdle;
  bool started_ = false;
  Tick phase_until_ = 0;
  Tick attempt_deadline_ = 0;
  std::uint64_t attempt_id_ = 0;
  std::optional<Selection> current_;
  std::map<NetworkKey, ScanEntry> scan_;
  FailureTable failures_;
  bool pmf_negotiated_ = false;
  Tick connected_since_ = 0;
  bool stable_ = false;
  unsigned token_retries_ = 0;

  std::optional<crypto::SaeGroupElement> pwe_;
  std::optional<crypto::SaeCommit> own_commit_;
  crypto::SaeSecret secret_;
  crypto::SaeKeys sae_keys_;
  std::optional<crypto::SaeCommit> peer_commit_;

  crypto::Nonce anonce_{};
  crypto::Nonce snonce_{};
  crypto::Ptk ptk_;
};

}  // namespace wsim::stations

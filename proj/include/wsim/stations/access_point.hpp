#pragma once

#include <map>
#include <optional>

#include "wsim/common/rng.hpp"
#include "wsim/crypto/psk.hpp"
#include "wsim/crypto/sae.hpp"
#include "wsim/frames/frame.hpp"
#include "wsim/stations/output.hpp"

namespace wsim::stations {

/// kOpen is only used for rogue access points.
enum class ApMode { kWpa2Only, kSaeOnly, kTransition, kOpen };

std::string_view to_string(ApMode m);
std::optional<ApMode> ap_mode_from_string(std::string_view s);
frames::AkmSet advertised_akms(ApMode m);

struct ApConfig {
  frames::Ssid ssid;
  MacAddr bssid;
  std::uint8_t channel = 11;
  ApMode mode = ApMode::kTransition;
  frames::PmfPolicy pmf = frames::PmfPolicy::kDisabled;
  /// Required unless mode is kOpen.
  std::optional<crypto::Passphrase> passphrase;
  unsigned work_budget_per_second = 15;
  unsigned commit_cost = 1;
  unsigned anticlog_threshold = 5;
  Tick beacon_interval = 100;
  Tick sae_session_timeout = 2000;
  Tick token_ttl = 5000;
  Tick handshake_timeout = 1000;
  /// Display only.
  unsigned signal_percent = 58;
};

struct Association {
  enum class State { kFourWay, kConnected };

  State state = State::kFourWay;
  std::optional<frames::Akm> akm;
  bool pmf_negotiated = false;
  Tick since = 0;
  crypto::Nonce anonce{};
  std::uint64_t replay = 0;
  crypto::Ptk ptk;
  std::optional<crypto::Pmk> sae_pmk;
};

class AccessPoint {
 public:
  /// Throws std::invalid_argument if a secured mode has no passphrase or
  /// the budget is smaller than one commit.
  AccessPoint(ApConfig config, Rng rng);

  const ApConfig& config() const { return config_; }
  frames::AkmSet akms() const { return advertised_akms(config_.mode); }

  StationOutput on_frame(const frames::Frame& frame, Tick now);
  StationOutput on_tick(Tick now);

  /// Beacon for the current configuration; used by scans and tests.
  frames::Frame beacon() const;

  unsigned work_spent_this_second() const { return work_spent_; }
  std::size_t pending_sae() const { return sessions_.size(); }
  const Association* association(const MacAddr& peer) const;
  bool connected(const MacAddr& peer) const;
  std::size_t connected_count() const;

 private:
  struct SaeSession {
    crypto::SaeGroupElement pwe;
    crypto::SaeCommit own;
    crypto::SaeSecret secret;
    crypto::SaeCommit peer;
    crypto::SaeKeys keys;
    Tick created;
  };

  frames::Frame reply(const MacAddr& to, frames::FrameBody body) const;
  void handle_commit(const frames::Frame& f, const frames::SaeCommitFrame& c, Tick now,
                     StationOutput& out);
  void handle_confirm(const frames::Frame& f, const frames::SaeConfirmFrame& c, Tick now,
                      StationOutput& out);
  void handle_assoc(const frames::Frame& f, const frames::AssocReq& a, Tick now,
                    StationOutput& out);
  void handle_eapol(const frames::Frame& f, const frames::EapolKey& k, Tick now,
                    StationOutput& out);
  void handle_deauth(const frames::Frame& f, Tick now, StationOutput& out);
  void expire(Tick now, StationOutput& out);
  void charge_budget_reset(Tick now);

  ApConfig config_;
  Rng rng_;
  std::optional<crypto::Pmk> pmk_;
  ByteArray<32> token_secret_{};
  unsigned work_spent_ = 0;
  Tick budget_second_ = 0;
  Tick next_beacon_ = 0;
  bool started_ = false;
  std::map<MacAddr, SaeSession> sessions_;
  std::map<MacAddr, crypto::Pmk> sae_authenticated_;
  std::map<MacAddr, Association> associations_;
};

}  // namespace wsim::stations

#include "wsim/stations/access_point.hpp"

#include <stdexcept>

#include "wsim/crypto/primitives.hpp"
#include "wsim/frames/codec.hpp"

namespace wsim::stations {

using namespace frames;

namespace {

Association new_association(Association::State state, std::optional<Akm> akm, bool pmf, Tick now) {
  Association a;
  a.state = state;
  a.akm = akm;
  a.pmf_negotiated = pmf;
  a.since = now;
  return a;
}

}  // namespace

std::string_view to_string(ApMode m) {
  switch (m) {
    case ApMode::kWpa2Only:
      return "wpa2";
    case ApMode::kSaeOnly:
      return "sae_only";
    case ApMode::kTransition:
      return "transition";
    case ApMode::kOpen:
      return "open";
  }
  return "?";
}

std::optional<ApMode> ap_mode_from_string(std::string_view s) {
  for (ApMode m : {ApMode::kWpa2Only, ApMode::kSaeOnly, ApMode::kTransition, ApMode::kOpen}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

AkmSet advertised_akms(ApMode m) {
  switch (m) {
    case ApMode::kWpa2Only:
      return AkmSet{Akm::kPsk};
    case ApMode::kSaeOnly:
      return AkmSet{Akm::kSae};
    case ApMode::kTransition:
      return AkmSet{Akm::kPsk, Akm::kSae};
    case ApMode::kOpen:
      return AkmSet{};
  }
  return {};
}

AccessPoint::AccessPoint(ApConfig config, Rng rng) : config_(std::move(config)), rng_(std::move(rng)) {
  if (config_.mode != ApMode::kOpen) {
    if (!config_.passphrase) throw std::invalid_argument("secured access point needs a passphrase");
    pmk_ = crypto::derive_pmk_psk(*config_.passphrase, config_.ssid.str());
  }
  if (config_.commit_cost == 0 || config_.work_budget_per_second < config_.commit_cost) {
    throw std::invalid_argument("work budget must cover at least one commit");
  }
  token_secret_ = rng_.bytes<32>();
}

Frame AccessPoint::reply(const MacAddr& to, FrameBody body) const {
  return Frame(config_.bssid, to, config_.bssid, config_.channel, std::move(body));
}

Frame AccessPoint::beacon() const {
  return Frame(config_.bssid, MacAddr::broadcast(), config_.bssid, config_.channel,
               Beacon{config_.ssid, akms(), config_.pmf});
}

const Association* AccessPoint::association(const MacAddr& peer) const {
  auto it = associations_.find(peer);
  return it == associations_.end() ? nullptr : &it->second;
}

bool AccessPoint::connected(const MacAddr& peer) const {
  const auto* a = association(peer);
  return a && a->state == Association::State::kConnected;
}

std::size_t AccessPoint::connected_count() const {
  std::size_t n = 0;
  for (const auto& [mac, a] : associations_) n += a.state == Association::State::kConnected;
  return n;
}

void AccessPoint::charge_budget_reset(Tick now) {
  const Tick second = now / kTicksPerSecond;
  if (second != budget_second_) {
    budget_second_ = second;
    work_spent_ = 0;
  }
}

StationOutput AccessPoint::on_tick(Tick now) {
  StationOutput out;
  charge_budget_reset(now);
  if (!started_) {
    started_ = true;
    next_beacon_ = now;
    out.emit(EventKind::kBeaconStarted, std::nullopt, config_.bssid, 0,
             config_.ssid.str() + " " + akms().label());
  }
  if (now >= next_beacon_) {
    out.send(beacon());
    next_beacon_ = now + config_.beacon_interval;
  }
  expire(now, out);
  return out;
}

void AccessPoint::expire(Tick now, StationOutput& out) {
  std::erase_if(sessions_, [&](const auto& kv) {
    return now - kv.second.created >= config_.sae_session_timeout;
  });
  for (auto it = associations_.begin(); it != associations_.end();) {
    const auto& a = it->second;
    if (a.state == Association::State::kFourWay && now - a.since >= config_.handshake_timeout) {
      out.emit(EventKind::kPeerDisconnected, it->first, config_.bssid, 0, "handshake_timeout");
      it = associations_.erase(it);
    } else {
      ++it;
    }
  }
}

StationOutput AccessPoint::on_frame(const Frame& f, Tick now) {
  StationOutput out;
  charge_budget_reset(now);
  if (f.src() == config_.bssid) return out;
  if (const auto* probe = f.as<ProbeReq>()) {
    if (probe->ssid.empty() || probe->ssid == config_.ssid) {
      out.send(reply(f.src(), ProbeResp{config_.ssid, akms(), config_.pmf}));
    }
    return out;
  }
  if (f.dst() != config_.bssid) return out;

  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, SaeCommitFrame>) {
          handle_commit(f, body, now, out);
        } else if constexpr (std::is_same_v<T, SaeConfirmFrame>) {
          handle_confirm(f, body, now, out);
        } else if constexpr (std::is_same_v<T, AssocReq>) {
          handle_assoc(f, body, now, out);
        } else if constexpr (std::is_same_v<T, EapolKey>) {
          handle_eapol(f, body, now, out);
        } else if constexpr (std::is_same_v<T, Deauth>) {
          handle_deauth(f, now, out);
        }
      },
      f.body());
  return out;
}

void AccessPoint::handle_commit(const Frame& f, const SaeCommitFrame& c, Tick now,
                                StationOutput& out) {
  const MacAddr peer = f.src();
  if (!akms().contains(Akm::kSae)) {
    out.emit(EventKind::kFrameIgnored, peer, config_.bssid, 0, "sae_not_offered");
    return;
  }
  if (work_spent_ + config_.commit_cost > config_.work_budget_per_second) {
    out.emit(EventKind::kOverloaded, peer, config_.bssid, work_spent_);
    return;
  }
  work_spent_ += config_.commit_cost;
  expire(now, out);

  const bool has_valid_token =
      c.commit.token() &&
      crypto::verify_anticlog_token(token_secret_, *c.commit.token(), peer, now, config_.token_ttl);
  if (sessions_.size() >= config_.anticlog_threshold && !has_valid_token) {
    out.send(reply(peer, SaeReject{StatusCode::kAntiCloggingTokenRequired,
                                   crypto::make_anticlog_token(token_secret_, peer, now)}));
    out.emit(EventKind::kAntiCloggingDemanded, peer, config_.bssid,
             static_cast<std::int64_t>(sessions_.size()));
    return;
  }

  sessions_.erase(peer);
  try {
    auto pwe = crypto::sae_derive_pwe(*config_.passphrase, config_.bssid, peer);
    auto [own, secret] = crypto::sae_make_commit(pwe, rng_);
    auto keys = crypto::sae_process_commit(secret, own, c.commit, pwe);
    out.send(reply(peer, SaeCommitFrame{own}));
    sessions_.emplace(peer, SaeSession{pwe, own, secret, c.commit, keys, now});
  } catch (const crypto::CryptoError& e) {
    out.emit(EventKind::kFrameIgnored, peer, config_.bssid, 0, e.what());
  }
}

void AccessPoint::handle_confirm(const Frame& f, const SaeConfirmFrame& c, Tick,
                                 StationOutput& out) {
  const MacAddr peer = f.src();
  auto it = sessions_.find(peer);
  if (it == sessions_.end()) {
    out.emit(EventKind::kFrameIgnored, peer, config_.bssid, 0, "confirm_without_session");
    return;
  }
  const SaeSession s = it->second;
  sessions_.erase(it);
  if (!crypto::sae_verify_confirm(s.keys.kck, c.confirm, s.own, s.peer)) {
    out.send(reply(peer, SaeReject{StatusCode::kUnspecifiedFailure, std::nullopt}));
    out.emit(EventKind::kSaeConfirmFailed, peer, config_.bssid,
             static_cast<std::int64_t>(StatusCode::kUnspecifiedFailure));
    return;
  }
  out.send(reply(peer, SaeConfirmFrame{crypto::sae_make_confirm(s.keys.kck, 1, s.own, s.peer)}));
  sae_authenticated_[peer] = s.keys.pmk;
  out.emit(EventKind::kSaeAuthenticated, peer, config_.bssid);
}

void AccessPoint::handle_assoc(const Frame& f, const AssocReq& a, Tick now, StationOutput& out) {
  const MacAddr peer = f.src();
  const AkmSet offered = akms();
  auto refuse = [&](StatusCode status, const char* why) {
    out.send(reply(peer, AssocResp{status}));
    out.emit(EventKind::kAssocRefused, peer, config_.bssid, static_cast<std::int64_t>(status), why);
  };

  if (!a.akm) {
    if (!offered.empty()) {
      out.emit(EventKind::kFrameIgnored, peer, config_.bssid, 0, "open_assoc_on_secured_ap");
      return;
    }
    associations_[peer] = new_association(Association::State::kConnected, std::nullopt, false, now);
    out.send(reply(peer, AssocResp{StatusCode::kSuccess}));
    out.emit(EventKind::kPeerConnected, peer, config_.bssid, 0, "open");
    return;
  }
  if (!offered.contains(*a.akm)) {
    if (*a.akm == Akm::kPsk && config_.mode == ApMode::kSaeOnly) {
      refuse(StatusCode::kInvalidAkmp, "psk_on_sae_only");
    } else {
      out.emit(EventKind::kFrameIgnored, peer, config_.bssid, 0, "akm_not_offered");
    }
    return;
  }
  if (config_.pmf == PmfPolicy::kRequired && !a.mfp_capable) {
    refuse(StatusCode::kUnspecifiedFailure, "pmf_required");
    return;
  }
  const bool pmf = config_.pmf != PmfPolicy::kDisabled && a.mfp_capable;

  if (*a.akm == Akm::kSae) {
    auto it = sae_authenticated_.find(peer);
    if (it == sae_authenticated_.end()) {
      refuse(StatusCode::kUnspecifiedFailure, "not_authenticated");
      return;
    }
    Association assoc = new_association(Association::State::kConnected, Akm::kSae, pmf, now);
    assoc.sae_pmk = it->second;
    sae_authenticated_.erase(it);
    associations_[peer] = assoc;
    out.send(reply(peer, AssocResp{StatusCode::kSuccess}));
    out.emit(EventKind::kPeerConnected, peer, config_.bssid, 0, "sae");
    return;
  }

  Association assoc = new_association(Association::State::kFourWay, Akm::kPsk, pmf, now);
  assoc.anonce = rng_.bytes<32>();
  assoc.replay = 1;
  associations_[peer] = assoc;
  out.send(reply(peer, AssocResp{StatusCode::kSuccess}));
  EapolKey m1;
  m1.msg_no = 1;
  m1.nonce = assoc.anonce;
  m1.replay_counter = assoc.replay;
  out.send(reply(peer, m1));
  out.emit(EventKind::kPeerAssociated, peer, config_.bssid, 0, "psk");
}

void AccessPoint::handle_eapol(const Frame& f, const EapolKey& k, Tick now, StationOutput& out) {
  const MacAddr peer = f.src();
  auto it = associations_.find(peer);
  if (it == associations_.end() || it->second.state != Association::State::kFourWay) {
    out.emit(EventKind::kFrameIgnored, peer, config_.bssid, 0, "eapol_without_handshake");
    return;
  }
  Association& a = it->second;
  if (k.replay_counter != a.replay) {
    out.emit(EventKind::kFrameIgnored, peer, config_.bssid, 0, "replay_mismatch");
    return;
  }
  if (k.msg_no == 2) {
    const crypto::Ptk ptk = crypto::derive_ptk(*pmk_, config_.bssid, peer, a.anonce, k.nonce);
    if (!crypto::equal_ct(crypto::compute_mic(ptk.kck, eapol_mic_input(k), crypto::MicVersion::kHmacSha1),
                           k.mic)) {
      out.emit(EventKind::kMicFailure, peer, config_.bssid, 2);
      return;
    }
    a.ptk = ptk;
    a.replay += 1;
    EapolKey m3;
    m3.msg_no = 3;
    m3.nonce = a.anonce;
    m3.replay_counter = a.replay;
    const auto gtk = rng_.bytes<16>();
    m3.key_data.assign(gtk.begin(), gtk.end());
    m3.mic = crypto::compute_mic(ptk.kck, eapol_mic_input(m3), crypto::MicVersion::kHmacSha1);
    out.send(reply(peer, m3));
  } else if (k.msg_no == 4) {
    if (!crypto::equal_ct(
            crypto::compute_mic(a.ptk.kck, eapol_mic_input(k), crypto::MicVersion::kHmacSha1),
            k.mic)) {
      out.emit(EventKind::kMicFailure, peer, config_.bssid, 4);
      return;
    }
    a.state = Association::State::kConnected;
    a.since = now;
    out.emit(EventKind::kPeerConnected, peer, config_.bssid, 0, "psk");
  } else {
    out.emit(EventKind::kFrameIgnored, peer, config_.bssid, k.msg_no, "unexpected_eapol");
  }
}

void AccessPoint::handle_deauth(const Frame& f, Tick, StationOutput& out) {
  const MacAddr peer = f.src();
  auto it = associations_.find(peer);
  if (it == associations_.end()) return;
  if (it->second.pmf_negotiated && !f.is_protected()) {
    out.emit(EventKind::kDeauthIgnored, peer, config_.bssid);
    return;
  }
  associations_.erase(it);
  out.emit(EventKind::kPeerDisconnected, peer, config_.bssid, f.as<Deauth>()->reason, "deauth");
}

}  // namespace wsim::stations

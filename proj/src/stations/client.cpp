#include "wsim/stations/client.hpp"

#include <algorithm>

#include "wsim/crypto/primitives.hpp"
#include "wsim/frames/codec.hpp"

namespace wsim::stations {

using namespace frames;

std::string_view to_string(ClientCapability c) {
  switch (c) {
    case ClientCapability::kWpa2Only:
      return "wpa2_only";
    case ClientCapability::kWpa3Capable:
      return "wpa3_capable";
    case ClientCapability::kTransitionIncompatible:
      return "transition_incompatible";
  }
  return "?";
}

std::optional<ClientCapability> capability_from_string(std::string_view s) {
  for (auto c : {ClientCapability::kWpa2Only, ClientCapability::kWpa3Capable,
                 ClientCapability::kTransitionIncompatible}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(ClientPhase p) {
  switch (p) {
    case ClientPhase::kIdle:
      return "idle";
    case ClientPhase::kScanning:
      return "scanning";
    case ClientPhase::kSaeCommitted:
      return "sae_committed";
    case ClientPhase::kSaeConfirmSent:
      return "sae_confirm_sent";
    case ClientPhase::kAssociating:
      return "associating";
    case ClientPhase::kFourWayInProgress:
      return "four_way";
    case ClientPhase::kConnected:
      return "connected";
    case ClientPhase::kBackoff:
      return "backoff";
  }
  return "?";
}

bool can_join(const ClientConfig& config, AkmSet akms) {
  if (akms.empty()) return true;
  if (!config.known_network.passphrase) return false;
  switch (config.capability) {
    case ClientCapability::kWpa2Only:
      return akms.contains(Akm::kPsk);
    case ClientCapability::kTransitionIncompatible:
      return akms.contains(Akm::kPsk) && !akms.contains(Akm::kSae);
    case ClientCapability::kWpa3Capable:
      return akms.contains(Akm::kPsk) || akms.contains(Akm::kSae);
  }
  return false;
}

namespace {

std::optional<Akm> chosen_akm(const ClientConfig& config, AkmSet akms) {
  if (akms.empty()) return std::nullopt;
  if (config.capability == ClientCapability::kWpa3Capable && akms.contains(Akm::kSae)) {
    return Akm::kSae;
  }
  return Akm::kPsk;
}

int preference(const ClientConfig& config, AkmSet akms) {
  if (akms.empty()) return 0;
  return chosen_akm(config, akms) == Akm::kSae ? 2 : 1;
}

}  // namespace

std::optional<Selection> select_network(const ClientConfig& config,
                                        const std::vector<ScanEntry>& scan,
                                        const FailureTable& failures) {
  std::vector<const ScanEntry*> candidates;
  for (const auto& e : scan) {
    if (e.ssid == config.known_network.ssid && can_join(config, e.key.akms)) {
      candidates.push_back(&e);
    }
  }
  if (candidates.empty()) return std::nullopt;

  auto exhausted = [&](const ScanEntry* e) {
    auto it = failures.find(e->key);
    return it != failures.end() && it->second >= config.max_failures;
  };
  std::vector<const ScanEntry*> fresh;
  std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(fresh),
               [&](const ScanEntry* e) { return !exhausted(e); });
  const auto& pool = fresh.empty() ? candidates : fresh;

  const ScanEntry* best = *std::min_element(pool.begin(), pool.end(), [&](auto* a, auto* b) {
    const int pa = preference(config, a->key.akms);
    const int pb = preference(config, b->key.akms);
    if (pa != pb) return pa > pb;
    return a->key < b->key;
  });
  return Selection{best->key, chosen_akm(config, best->key.akms), best->pmf};
}

Client::Client(ClientConfig config, Rng rng) : config_(std::move(config)), rng_(std::move(rng)) {
  if (config_.known_network.passphrase) {
    pmk_ = crypto::derive_pmk_psk(*config_.known_network.passphrase,
                                  config_.known_network.ssid.str());
  }
}

Frame Client::to_ap(FrameBody body) const {
  return Frame(config_.mac, current_->key.bssid, current_->key.bssid, config_.channel,
               std::move(body));
}

bool Client::in_attempt() const {
  switch (phase_) {
    case ClientPhase::kSaeCommitted:
    case ClientPhase::kSaeConfirmSent:
    case ClientPhase::kAssociating:
    case ClientPhase::kFourWayInProgress:
      return true;
    default:
      return false;
  }
}

void Client::start_scan(Tick now, StationOutput& out) {
  scan_.clear();
  current_.reset();
  phase_ = ClientPhase::kScanning;
  phase_until_ = now + config_.scan_duration;
  out.send(Frame(config_.mac, MacAddr::broadcast(), MacAddr::broadcast(), config_.channel,
                 ProbeReq{config_.known_network.ssid}));
  out.emit(EventKind::kScanStarted);
}

void Client::finish_scan(Tick now, StationOutput& out) {
  std::vector<ScanEntry> entries;
  for (const auto& [key, e] : scan_) entries.push_back(e);
  auto sel = select_network(config_, entries, failures_);
  if (!sel) {
    enter_backoff(now);
    return;
  }
  out.emit(EventKind::kNetworkSelected, std::nullopt, sel->key.bssid, 0, sel->key.akms.label());
  start_attempt(*sel, now, out);
}

void Client::start_attempt(const Selection& sel, Tick now, StationOutput& out) {
  ++attempt_id_;
  current_ = sel;
  attempt_deadline_ = now + config_.attempt_timeout;
  token_retries_ = 0;
  pmf_negotiated_ = sel.pmf != PmfPolicy::kDisabled && config_.mfp_capable && sel.akm.has_value();
  const std::string akm = sel.akm ? std::string(to_string(*sel.akm)) : "open";
  out.emit(EventKind::kAttemptStarted, std::nullopt, sel.key.bssid,
           static_cast<std::int64_t>(attempt_id_), akm);
  if (sel.akm == Akm::kSae) {
    pwe_ = crypto::sae_derive_pwe(*config_.known_network.passphrase, config_.mac, sel.key.bssid);
    auto [commit, secret] = crypto::sae_make_commit(*pwe_, rng_);
    own_commit_ = commit;
    secret_ = secret;
    send_commit(out, std::nullopt);
    phase_ = ClientPhase::kSaeCommitted;
  } else {
    out.send(to_ap(AssocReq{sel.akm, config_.mfp_capable}));
    phase_ = ClientPhase::kAssociating;
  }
}

void Client::send_commit(StationOutput& out, std::optional<crypto::AnticlogToken> token) {
  out.send(to_ap(SaeCommitFrame{own_commit_->with_token(std::move(token))}));
}

void Client::enter_backoff(Tick now) {
  phase_ = ClientPhase::kBackoff;
  phase_until_ = now + config_.reconnect_backoff + rng_.uniform(config_.backoff_jitter + 1);
}

void Client::fail_attempt(Tick now, const std::string& reason, StationOutput& out) {
  out.emit(EventKind::kAttemptFailed, std::nullopt, current_->key.bssid,
           static_cast<std::int64_t>(attempt_id_), reason);
  ++failures_[current_->key];
  current_.reset();
  enter_backoff(now);
}

void Client::succeed(Tick now, StationOutput& out) {
  phase_ = ClientPhase::kConnected;
  connected_since_ = now;
  stable_ = false;
  if (auto it = scan_.find(current_->key); it != scan_.end()) it->second.last_seen = now;
  const std::string akm = current_->akm ? std::string(to_string(*current_->akm)) : "open";
  out.emit(EventKind::kAttemptSucceeded, std::nullopt, current_->key.bssid,
           static_cast<std::int64_t>(attempt_id_), akm);
  out.emit(EventKind::kConnected, std::nullopt, current_->key.bssid, pmf_negotiated_ ? 1 : 0,
           akm);
}

StationOutput Client::disconnect(Tick now, const std::string& reason) {
  StationOutput out;
  if (phase_ == ClientPhase::kConnected) {
    out.emit(EventKind::kDisconnected, std::nullopt, current_->key.bssid, 0, reason);
    current_.reset();
    if (config_.auto_reconnect) {
      enter_backoff(now);
    } else {
      phase_ = ClientPhase::kIdle;
    }
  } else if (in_attempt()) {
    fail_attempt(now, reason, out);
  }
  return out;
}

void Client::record_beacon(const Frame& f, const Ssid& ssid, AkmSet akms, PmfPolicy pmf,
                           Tick now) {
  if (ssid != config_.known_network.ssid) return;
  const NetworkKey key{f.bssid(), akms};
  auto& e = scan_[key];
  e.key = key;
  e.ssid = ssid;
  e.pmf = pmf;
  e.last_seen = now;
}

StationOutput Client::on_tick(Tick now) {
  StationOutput out;
  switch (phase_) {
    case ClientPhase::kIdle:
      if (!started_ && now >= config_.start_tick) {
        started_ = true;
        start_scan(now, out);
      }
      break;
    case ClientPhase::kScanning:
      if (now >= phase_until_) finish_scan(now, out);
      break;
    case ClientPhase::kBackoff:
      if (now >= phase_until_) start_scan(now, out);
      break;
    case ClientPhase::kConnected: {
      auto it = scan_.find(current_->key);
      if (it == scan_.end() || now - it->second.last_seen > config_.beacon_loss_timeout) {
        out.append(disconnect(now, "beacon_loss"));
        break;
      }
      if (!stable_ && now - connected_since_ >= config_.stable_after) {
        stable_ = true;
        failures_.clear();
      }
      break;
    }
    default:
      if (now >= attempt_deadline_) fail_attempt(now, "timeout", out);
      break;
  }
  return out;
}

StationOutput Client::on_frame(const Frame& f, Tick now) {
  StationOutput out;
  if (f.dst() != config_.mac && !f.dst().is_broadcast()) return out;
  if (const auto* b = f.as<Beacon>()) {
    record_beacon(f, b->ssid, b->akms, b->pmf, now);
    return out;
  }
  if (const auto* p = f.as<ProbeResp>()) {
    record_beacon(f, p->ssid, p->akms, p->pmf, now);
    return out;
  }
  if (!current_ || f.src() != current_->key.bssid) return out;

  if (const auto* d = f.as<Deauth>()) {
    if (phase_ == ClientPhase::kConnected) {
      if (pmf_negotiated_ && !f.is_protected()) {
        out.emit(EventKind::kDeauthIgnored, f.src(), current_->key.bssid, d->reason);
        return out;
      }
      ++failures_[current_->key];
      out.emit(EventKind::kDisconnected, std::nullopt, current_->key.bssid, d->reason, "deauth");
      current_.reset();
      if (config_.auto_reconnect) {
        enter_backoff(now);
      } else {
        phase_ = ClientPhase::kIdle;
      }
    } else if (in_attempt()) {
      fail_attempt(now, "deauth", out);
    }
    return out;
  }

  switch (phase_) {
    case ClientPhase::kSaeCommitted:
      if (const auto* c = f.as<SaeCommitFrame>()) {
        try {
          sae_keys_ = crypto::sae_process_commit(secret_, *own_commit_, c->commit, *pwe_);
        } catch (const crypto::CryptoError& e) {
          fail_attempt(now, e.what(), out);
          break;
        }
        peer_commit_ = c->commit;
        out.send(to_ap(SaeConfirmFrame{
            crypto::sae_make_confirm(sae_keys_.kck, 1, *own_commit_, *peer_commit_)}));
        phase_ = ClientPhase::kSaeConfirmSent;
      } else if (const auto* r = f.as<SaeReject>()) {
        out.emit(EventKind::kSaeRejected, std::nullopt, current_->key.bssid,
                 static_cast<std::int64_t>(r->status));
        if (r->status == StatusCode::kAntiCloggingTokenRequired && r->token &&
            token_retries_ < config_.max_token_retries) {
          ++token_retries_;
          send_commit(out, r->token);
        } else {
          fail_attempt(now, "sae_reject", out);
        }
      }
      break;
    case ClientPhase::kSaeConfirmSent:
      if (const auto* c = f.as<SaeConfirmFrame>()) {
        if (crypto::sae_verify_confirm(sae_keys_.kck, c->confirm, *own_commit_, *peer_commit_)) {
          out.send(to_ap(AssocReq{Akm::kSae, config_.mfp_capable}));
          phase_ = ClientPhase::kAssociating;
        } else {
          fail_attempt(now, "confirm_mismatch", out);
        }
      } else if (const auto* r = f.as<SaeReject>()) {
        out.emit(EventKind::kSaeRejected, std::nullopt, current_->key.bssid,
                 static_cast<std::int64_t>(r->status));
        fail_attempt(now, "sae_reject", out);
      }
      break;
    case ClientPhase::kAssociating:
      if (const auto* a = f.as<AssocResp>()) {
        if (a->status != StatusCode::kSuccess) {
          fail_attempt(now, "assoc_refused", out);
        } else if (current_->akm == Akm::kPsk) {
          phase_ = ClientPhase::kFourWayInProgress;
        } else {
          succeed(now, out);
        }
      }
      break;
    case ClientPhase::kFourWayInProgress:
      if (const auto* k = f.as<EapolKey>()) {
        if (k->msg_no == 1) {
          anonce_ = k->nonce;
          snonce_ = rng_.bytes<32>();
          ptk_ = crypto::derive_ptk(*pmk_, current_->key.bssid, config_.mac, anonce_, snonce_);
          EapolKey m2;
          m2.msg_no = 2;
          m2.nonce = snonce_;
          m2.replay_counter = k->replay_counter;
          m2.mic = crypto::compute_mic(ptk_.kck, eapol_mic_input(m2), crypto::MicVersion::kHmacSha1);
          out.send(to_ap(m2));
        } else if (k->msg_no == 3) {
          const auto mic =
              crypto::compute_mic(ptk_.kck, eapol_mic_input(*k), crypto::MicVersion::kHmacSha1);
          if (k->nonce != anonce_ || !crypto::equal_ct(mic, k->mic)) {
            fail_attempt(now, "msg3_invalid", out);
            break;
          }
          EapolKey m4;
          m4.msg_no = 4;
          m4.replay_counter = k->replay_counter;
          m4.mic = crypto::compute_mic(ptk_.kck, eapol_mic_input(m4), crypto::MicVersion::kHmacSha1);
          out.send(to_ap(m4));
          succeed(now, out);
        }
      }
      break;
    default:
      break;
  }
  return out;
}

}  // namespace wsim::stations

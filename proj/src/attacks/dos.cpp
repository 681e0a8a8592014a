#include "wsim/attacks/dos.hpp"

#include <stdexcept>

namespace wsim::attacks {

using frames::Frame;

std::string_view to_string(DeauthStrategy s) {
  switch (s) {
    case DeauthStrategy::kAireplayDeauth:
      return "aireplay_deauth";
    case DeauthStrategy::kCommitFlood:
      return "commit_flood";
    case DeauthStrategy::kBadTokenRace:
      return "bad_token_race";
  }
  return "?";
}

std::optional<DeauthStrategy> strategy_from_string(std::string_view s) {
  for (auto v : {DeauthStrategy::kAireplayDeauth, DeauthStrategy::kCommitFlood,
                 DeauthStrategy::kBadTokenRace}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::string_view to_string(RogueSecurity s) {
  return s == RogueSecurity::kOpen ? "open" : "wpa2_psk";
}

std::optional<RogueSecurity> rogue_security_from_string(std::string_view s) {
  if (s == "open") return RogueSecurity::kOpen;
  if (s == "wpa2_psk") return RogueSecurity::kWpa2Psk;
  return std::nullopt;
}

void validate(const AttackPlan& plan) {
  if (plan.rate_per_sec < 1) throw std::invalid_argument("rate_per_sec must be at least 1");
  if (plan.rogue_security == RogueSecurity::kWpa2Psk && !plan.decoy_passphrase) {
    throw std::invalid_argument("a wpa2_psk rogue needs a decoy passphrase");
  }
  if (plan.stop_tick < plan.start_tick) throw std::invalid_argument("attack stops before it starts");
  if (plan.channel < 1 || plan.channel > 14) throw std::invalid_argument("channel outside 1..14");
}

std::string default_password_log_name(const frames::Ssid& ssid) {
  return "evil_twin_captive_portal_password-" + ssid.str() + ".txt";
}

DeauthActor::DeauthActor(std::string name, AttackPlan plan)
    : Actor(std::move(name), "attacker"), plan_(std::move(plan)) {}

void DeauthActor::on_start(medium::Context& ctx) { ctx.engine().monitor(*this, plan_.channel); }

void DeauthActor::on_sniffed(medium::Context&, const medium::SniffedRecord& rec) {
  if (!rec.frame) return;
  const Frame& f = *rec.frame;
  if (f.bssid() != plan_.target_bssid || f.src() == plan_.target_bssid) return;
  if (f.dst() != plan_.target_bssid || f.src().is_broadcast()) return;
  if (const auto* a = f.as<frames::AssocReq>()) {
    if (!a->akm) {
      on_rogue_.insert(f.src());
      return;
    }
    on_rogue_.erase(f.src());
  }
  if (f.as<frames::Deauth>()) return;
  targets_.insert(f.src());
}

void DeauthActor::on_tick(medium::Context& ctx) {
  if (!started_) {
    started_ = true;
    next_burst_ = ctx.now();
  }
  if (ctx.now() < next_burst_) return;
  next_burst_ = ctx.now() + std::max<Tick>(1, kTicksPerSecond / plan_.rate_per_sec);
  const MacAddr ap = plan_.target_bssid;
  const frames::Deauth body{static_cast<std::uint16_t>(frames::ReasonCode::kClass3FromNonassoc)};
  bool sent = false;
  for (const MacAddr& sta : targets_) {
    if (on_rogue_.count(sta)) continue;
    ctx.transmit(Frame(ap, sta, ap, plan_.channel, body));
    ctx.transmit(Frame(sta, ap, ap, plan_.channel, body));
    sent = true;
  }
  if (!sent && targets_.empty()) {
    ctx.transmit(Frame(ap, MacAddr::broadcast(), ap, plan_.channel, body));
  }
}

CommitFloodActor::CommitFloodActor(std::string name, AttackPlan plan, Rng rng)
    : Actor(std::move(name), "attacker"), plan_(std::move(plan)), rng_(std::move(rng)) {}

void CommitFloodActor::on_start(medium::Context& ctx) { ctx.engine().monitor(*this, plan_.channel); }

Frame CommitFloodActor::forged(const MacAddr& src, std::optional<crypto::AnticlogToken> token) {
  crypto::SaeCommit commit(crypto::random_scalar(rng_), crypto::random_group_element(rng_),
                           std::move(token));
  return Frame(src, plan_.target_bssid, plan_.target_bssid, plan_.channel,
               frames::SaeCommitFrame{std::move(commit)});
}

void CommitFloodActor::on_sniffed(medium::Context&, const medium::SniffedRecord& rec) {
  if (!rec.frame || rec.frame->src() != plan_.target_bssid) return;
  const auto* rej = rec.frame->as<frames::SaeReject>();
  if (!rej || !rej->token || rej->status != frames::StatusCode::kAntiCloggingTokenRequired) return;
  if (forged_macs_.count(rec.frame->dst())) echoes_.emplace_back(rec.frame->dst(), *rej->token);
}

void CommitFloodActor::on_tick(medium::Context& ctx) {
  if (ctx.now() % kTicksPerSecond != 0) return;
  std::set<MacAddr> still_useful;
  for (unsigned i = 0; i < plan_.rate_per_sec; ++i) {
    if (!echoes_.empty()) {
      auto [mac, token] = echoes_.front();
      echoes_.pop_front();
      ctx.transmit(forged(mac, token));
      still_useful.insert(mac);
    } else {
      MacAddr mac;
      do {
        mac = MacAddr::local_from_bits(rng_.next_u64());
      } while (mac == plan_.target_bssid || forged_macs_.count(mac));
      forged_macs_.insert(mac);
      still_useful.insert(mac);
      ctx.transmit(forged(mac, std::nullopt));
    }
    ++sent_;
  }
  echoes_.clear();
  forged_macs_ = std::move(still_useful);
}

BadTokenRaceActor::BadTokenRaceActor(std::string name, AttackPlan plan, Rng rng)
    : Actor(std::move(name), "attacker"), plan_(std::move(plan)), rng_(std::move(rng)) {}

void BadTokenRaceActor::on_start(medium::Context& ctx) {
  ctx.engine().monitor(*this, plan_.channel);
}

void BadTokenRaceActor::on_sniffed(medium::Context& ctx, const medium::SniffedRecord& rec) {
  if (!rec.frame) return;
  const Frame& f = *rec.frame;
  if (!f.as<frames::SaeCommitFrame>() || f.dst() != plan_.target_bssid) return;
  const crypto::SaeConfirm bogus{1, rng_.bytes<32>()};
  ctx.transmit(Frame(f.src(), plan_.target_bssid, plan_.target_bssid, plan_.channel,
                     frames::SaeConfirmFrame{bogus}),
               kRaceDelay);
  ++races_;
}

}  // namespace wsim::attacks

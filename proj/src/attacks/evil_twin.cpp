#include "wsim/attacks/evil_twin.hpp"

#include <stdexcept>

namespace wsim::attacks {

using medium::EventKind;

namespace {

portal::PortalConfig portal_config(const AttackPlan& plan) {
  portal::PortalConfig c;
  c.language = plan.portal_language;
  c.template_id = plan.portal_template;
  return c;
}

}  // namespace

std::string_view to_string(AttackPhase p) {
  switch (p) {
    case AttackPhase::kWaiting: return "waiting";
    case AttackPhase::kCapturing: return "capturing";
    case AttackPhase::kPortal: return "portal";
    case AttackPhase::kClosed: return "closed";
  }
  return "?";
}

stations::ApConfig rogue_config(const AttackPlan& plan, const HandshakeCapture& hs, Rng& rng) {
  if (hs.ssid != plan.target_ssid.str()) {
    throw std::invalid_argument("handshake is for '" + hs.ssid + "', target is '" +
                                plan.target_ssid.str() + "'");
  }
  stations::ApConfig c;
  c.ssid = plan.target_ssid;
  c.channel = plan.channel;
  c.pmf = frames::PmfPolicy::kDisabled;
  if (plan.spoof_mac) {
    c.bssid = plan.target_bssid;
  } else {
    do {
      c.bssid = MacAddr::local_from_bits(rng.next_u64());
    } while (c.bssid == plan.target_bssid || c.bssid == plan.attacker_mac);
  }
  if (plan.rogue_security == RogueSecurity::kWpa2Psk) {
    c.mode = stations::ApMode::kWpa2Only;
    c.passphrase = plan.decoy_passphrase;
  } else {
    c.mode = stations::ApMode::kOpen;
  }
  return c;
}

stations::ApActor& spawn_evil_twin(medium::Engine& engine, const std::string& name,
                                   const AttackPlan& plan, const HandshakeCapture& hs) {
  Rng rng = engine.make_rng(name + ".bssid");
  auto cfg = rogue_config(plan, hs, rng);
  return engine.emplace<stations::ApActor>(name, std::move(cfg), engine.make_rng(name), "rogue_ap");
}

AttackController::AttackController(std::string name, AttackPlan plan,
                                   std::shared_ptr<portal::PortalDirectory> portals)
    : Actor(std::move(name), "attacker"), plan_(std::move(plan)), portals_(std::move(portals)) {
  validate(plan_);
  if (plan_.evil_twin) {
    // Builds and discards a portal so a bad language or template fails here.
    portal::Portal probe(portal_config(plan_), HandshakeCapture{}, {});
  }
}

std::optional<MacAddr> AttackController::rogue_bssid() const {
  if (!rogue_key_) return std::nullopt;
  return rogue_key_->bssid;
}

void AttackController::start(medium::Context& ctx) {
  phase_ = plan_.evil_twin ? AttackPhase::kCapturing : AttackPhase::kPortal;
  ctx.emit(EventKind::kAttackStarted, std::nullopt, plan_.target_bssid, plan_.rate_per_sec,
           std::string(to_string(plan_.strategy)));
  auto& engine = ctx.engine();
  const std::string dos_name = name() + ".dos";
  switch (plan_.strategy) {
    case DeauthStrategy::kAireplayDeauth:
      dos_ = &engine.emplace<DeauthActor>(dos_name, plan_);
      break;
    case DeauthStrategy::kCommitFlood:
      dos_ = &engine.emplace<CommitFloodActor>(dos_name, plan_, engine.make_rng(dos_name));
      break;
    case DeauthStrategy::kBadTokenRace:
      dos_ = &engine.emplace<BadTokenRaceActor>(dos_name, plan_, engine.make_rng(dos_name));
      break;
  }
  if (plan_.evil_twin) engine.monitor(*this, plan_.channel);
}

void AttackController::on_sniffed(medium::Context& ctx, const medium::SniffedRecord& rec) {
  if (phase_ != AttackPhase::kCapturing) return;
  sniffed_.push_back(rec);
  if (!rec.frame) return;
  const auto* k = rec.frame->as<frames::EapolKey>();
  if (!k || k->msg_no != 2 || rec.frame->dst() != plan_.target_bssid) return;
  auto hs = extract_handshake(sniffed_, plan_.target_ssid.str());
  if (!hs || hs->aa != plan_.target_bssid) return;
  hs_ = std::move(hs);
  sniffed_.clear();
  ctx.emit(EventKind::kHandshakeCaptured, hs_->sa, hs_->aa, static_cast<std::int64_t>(hs_->t2));
  open_portal(ctx);
}

void AttackController::open_portal(medium::Context& ctx) {
  auto& engine = ctx.engine();
  engine.unmonitor(*this);
  rogue_ = &spawn_evil_twin(engine, name() + ".rogue", plan_, *hs_);
  const auto& cfg = rogue_->ap().config();
  rogue_key_ = stations::NetworkKey{cfg.bssid, stations::advertised_akms(cfg.mode)};
  portal_ = std::make_shared<portal::Portal>(portal_config(plan_), *hs_, plan_.password_log_path,
                                             ctx.now());
  portals_->add(*rogue_key_, portal_);
  phase_ = AttackPhase::kPortal;
  ctx.emit(EventKind::kEvilTwinSpawned, std::nullopt, cfg.bssid, plan_.spoof_mac ? 1 : 0,
           std::string(to_string(plan_.rogue_security)));
}

void AttackController::close(medium::Context& ctx, bool recovered) {
  auto& engine = ctx.engine();
  if (recovered) ctx.emit(EventKind::kAttackClosed, std::nullopt, plan_.target_bssid);
  if (rogue_) {
    ctx.emit(EventKind::kEvilTwinRemoved, std::nullopt, rogue_key_->bssid);
    portals_->remove(*rogue_key_);
    engine.remove(*rogue_);
    rogue_ = nullptr;
  }
  if (dos_) {
    engine.remove(*dos_);
    dos_ = nullptr;
  }
  engine.unmonitor(*this);
  sniffed_.clear();
  phase_ = AttackPhase::kClosed;
  ctx.emit(EventKind::kAttackStopped, std::nullopt, plan_.target_bssid, 0,
           recovered ? "recovered" : "stop_tick");
}

void AttackController::on_tick(medium::Context& ctx) {
  switch (phase_) {
    case AttackPhase::kWaiting:
      if (ctx.now() >= plan_.start_tick && ctx.now() < plan_.stop_tick) start(ctx);
      break;
    case AttackPhase::kCapturing:
    case AttackPhase::kPortal:
      if (portal_ && portal_->state() == portal::PortalState::kRecovered) {
        close(ctx, true);
      } else if (ctx.now() >= plan_.stop_tick) {
        close(ctx, false);
      }
      break;
    case AttackPhase::kClosed:
      break;
  }
}

}  // namespace wsim::attacks

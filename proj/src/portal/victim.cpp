#include "wsim/portal/victim.hpp"

#include <stdexcept>

namespace wsim::portal {

std::string_view to_string(Engagement e) {
  switch (e) {
    case Engagement::kVeryActive: return "very_active";
    case Engagement::kMildActive: return "mild_active";
    case Engagement::kNotActive: return "not_active";
  }
  return "?";
}

std::optional<Engagement> engagement_from_string(std::string_view s) {
  for (auto e : {Engagement::kVeryActive, Engagement::kMildActive, Engagement::kNotActive}) {
    if (to_string(e) == s) return e;
  }
  return std::nullopt;
}

VictimProfile default_profile(Engagement e) {
  switch (e) {
    case Engagement::kVeryActive: return {e, 1.0, 0.0, 3000, 8000, 15000};
    case Engagement::kMildActive: return {e, 0.5, 0.1, 10000, 30000, 15000};
    case Engagement::kNotActive: return {e, 0.0, 0.0, 0, 0, 15000};
  }
  return {};
}

void validate(const VictimProfile& p) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(p.submit_probability) || !in_unit(p.typo_probability)) {
    throw std::invalid_argument("victim probabilities must be in [0,1]");
  }
  if (p.engagement == Engagement::kNotActive && p.submit_probability != 0.0) {
    throw std::invalid_argument("not_active victims never submit");
  }
  if (p.think_min > p.think_max) throw std::invalid_argument("think_min exceeds think_max");
  if (p.prompt_interval == 0) throw std::invalid_argument("prompt_interval must be positive");
}

std::string with_typo(std::string_view s, Rng& rng) {
  std::string out(s);
  if (out.empty()) return "x";
  const std::size_t i = rng.uniform(out.size());
  char c = out[i];
  while (c == out[i]) c = static_cast<char>('!' + rng.uniform(94));
  out[i] = c;
  return out;
}

std::optional<VictimAction> step_victim(const VictimProfile& profile, VictimState& state, Rng& rng,
                                        Tick now) {
  if (state.done || now < state.next_prompt) return std::nullopt;
  if (profile.engagement == Engagement::kNotActive || !rng.bernoulli(profile.submit_probability)) {
    state.next_prompt = now + profile.prompt_interval;
    return std::nullopt;
  }
  VictimAction a;
  a.at = now + rng.uniform_range(profile.think_min, profile.think_max);
  a.typo = rng.bernoulli(profile.typo_probability);
  a.candidate = a.typo ? with_typo(state.passphrase, rng) : state.passphrase;
  state.next_prompt = a.at + profile.prompt_interval;
  return a;
}

VictimActor::VictimActor(std::string name, std::string station, VictimProfile profile,
                         std::string passphrase, std::shared_ptr<PortalDirectory> portals, Rng rng)
    : Actor(std::move(name), "victim"),
      station_(std::move(station)),
      profile_(profile),
      portals_(std::move(portals)),
      rng_(std::move(rng)) {
  validate(profile_);
  state_.passphrase = std::move(passphrase);
}

void VictimActor::on_tick(medium::Context& ctx) {
  if (state_.done) return;
  auto* actor = dynamic_cast<stations::ClientActor*>(ctx.engine().find(station_));
  if (actor == nullptr) return;
  const auto& client = actor->client();
  std::shared_ptr<Portal> portal;
  if (client.connected() && client.current()) portal = portals_->find(client.current()->key);
  if (!portal) {
    shown_on_.reset();
    pending_.reset();
    return;
  }

  const MacAddr mac = client.config().mac;
  const MacAddr bssid = client.current()->key.bssid;
  if (shown_on_ != client.current()->key) {
    shown_on_ = client.current()->key;
    pending_.reset();
    state_.next_prompt = ctx.now();
    ctx.emit(medium::EventKind::kPageServed, mac, bssid);
  }

  if (!pending_) pending_ = step_victim(profile_, state_, rng_, ctx.now());
  if (!pending_ || ctx.now() < pending_->at) return;

  const VictimAction action = *std::move(pending_);
  pending_.reset();
  ++submissions_;
  ctx.emit(medium::EventKind::kSubmitted, mac, bssid,
           static_cast<std::int64_t>(action.candidate.size()), action.typo ? "typo" : "");
  const SubmitOutcome out = portal->handle_submit(action.candidate, ctx.now());
  if (out.accepted) {
    state_.done = true;
    ctx.emit(medium::EventKind::kVerified, mac, bssid);
    ctx.emit(medium::EventKind::kFakeSuccessShown, mac, bssid);
  } else {
    ctx.emit(medium::EventKind::kRejected, mac, bssid, 0,
             std::string(attacks::to_string(out.verification.outcome)));
  }
}

}  // namespace wsim::portal

#include "wsim/medium/engine.hpp"

#include <algorithm>

namespace wsim::medium {

Tick Context::now() const { return engine_.now(); }

void Context::transmit(const frames::Frame& frame, Tick delay) {
  engine_.transmit_from(actor_, frame, delay);
}

void Context::transmit_raw(std::uint8_t channel, Bytes bytes, Tick delay) {
  engine_.transmit_raw_from(actor_, channel, std::move(bytes), delay);
}

void Context::emit(EventKind kind, std::optional<MacAddr> peer, std::optional<MacAddr> bssid,
                   std::int64_t value, std::string detail) {
  engine_.emit(ProtocolEvent{engine_.now(), actor_.name(), kind, peer, bssid, value,
                             std::move(detail)});
}

Engine::Engine(std::uint64_t seed, double loss_rate) : seed_(seed), medium_(seed, loss_rate) {}

Engine::~Engine() = default;

Actor& Engine::add(std::unique_ptr<Actor> actor) {
  Actor& ref = *actor;
  if (in_tick_) {
    pending_add_.push_back(std::move(actor));
  } else {
    if (ref.channel() != 0) ref.endpoint_ = medium_.attach(ref.name(), ref.channel());
    actors_.push_back(std::move(actor));
    Context ctx(*this, ref);
    ref.on_start(ctx);
  }
  return ref;
}

void Engine::remove(Actor& actor) {
  if (in_tick_) {
    pending_remove_.push_back(&actor);
    return;
  }
  unmonitor(actor);
  if (actor.endpoint_ != 0) medium_.detach(actor.endpoint_);
  std::erase_if(actors_, [&](const auto& a) { return a.get() == &actor; });
}

void Engine::monitor(Actor& actor, std::uint8_t channel) {
  monitors_.push_back({&actor, medium_.attach_sniffer(channel)});
}

void Engine::unmonitor(Actor& actor) {
  for (const auto& m : monitors_) {
    if (m.actor == &actor) medium_.detach_sniffer(m.sniffer);
  }
  std::erase_if(monitors_, [&](const Monitor& m) { return m.actor == &actor; });
}

void Engine::emit(ProtocolEvent ev) {
  if (!sinks_.empty()) {
    const auto rec = event_record(ev);
    for (auto& sink : sinks_) sink(rec);
  }
  if (keep_events_) events_.push_back(std::move(ev));
}

void Engine::post(std::function<void(Engine&)> message) {
  std::lock_guard lock(inbox_mutex_);
  inbox_.push_back(std::move(message));
}

Actor* Engine::find(std::string_view name) const {
  for (const auto& a : actors_) {
    if (a->name() == name) return a.get();
  }
  for (const auto& a : pending_add_) {
    if (a->name() == name) return a.get();
  }
  return nullptr;
}

void Engine::transmit_from(Actor& actor, const frames::Frame& frame, Tick delay) {
  medium_.transmit(actor.endpoint_, frame, now_ + delay);
}

void Engine::transmit_raw_from(Actor& actor, std::uint8_t channel, Bytes bytes, Tick delay) {
  medium_.transmit_raw(actor.endpoint_, channel, std::move(bytes), now_ + delay);
}

std::string Engine::name_of(EndpointId id) const {
  for (const auto& a : actors_) {
    if (a->endpoint_ == id) return a->name();
  }
  return medium_.endpoint_name(id);
}

std::string Engine::role_of(EndpointId id) const {
  for (const auto& a : actors_) {
    if (a->endpoint_ == id) return a->role();
  }
  return "unknown";
}

void Engine::deliver(const DeliveryEvent& ev) {
  if (!sinks_.empty()) {
    const auto rec = delivery_record(
        ev, [this](EndpointId id) { return name_of(id); },
        [this](EndpointId id) { return role_of(id); });
    for (auto& sink : sinks_) sink(rec);
  }
  if (ev.frame) {
    for (EndpointId id : ev.delivered) {
      for (const auto& a : actors_) {
        if (a->endpoint_ == id) {
          Context ctx(*this, *a);
          a->on_frame(ctx, *ev.frame);
          break;
        }
      }
    }
  }
  const std::vector<Monitor> snapshot = monitors_;
  for (const Monitor& m : snapshot) {
    const bool live = std::any_of(monitors_.begin(), monitors_.end(),
                                  [&](const Monitor& x) { return x.sniffer == m.sniffer; });
    if (!live) continue;
    for (auto& rec : medium_.drain_sniffer(m.sniffer)) {
      Context ctx(*this, *m.actor);
      m.actor->on_sniffed(ctx, rec);
    }
  }
}

void Engine::apply_pending() {
  for (auto& a : pending_add_) {
    Actor& ref = *a;
    if (ref.channel() != 0) ref.endpoint_ = medium_.attach(ref.name(), ref.channel());
    actors_.push_back(std::move(a));
    Context ctx(*this, ref);
    ref.on_start(ctx);
  }
  pending_add_.clear();
  auto removals = std::exchange(pending_remove_, {});
  for (Actor* a : removals) remove(*a);
}

void Engine::run_tick() {
  in_tick_ = true;
  std::deque<std::function<void(Engine&)>> inbox;
  {
    std::lock_guard lock(inbox_mutex_);
    inbox.swap(inbox_);
  }
  for (auto& msg : inbox) msg(*this);

  const std::size_t count = actors_.size();
  for (std::size_t i = 0; i < count; ++i) {
    Context ctx(*this, *actors_[i]);
    actors_[i]->on_tick(ctx);
  }
  while (medium_.next_event_tick() == now_) {
    for (const auto& ev : medium_.step()) deliver(ev);
  }
  in_tick_ = false;
  apply_pending();
}

void Engine::run_until(Tick end) {
  stopped_ = false;
  while (next_ <= end && !stopped_) {
    now_ = next_++;
    medium_.advance_to(now_);
    run_tick();
  }
}

}  // namespace wsim::medium

#pragma once

// Single-threaded tick loop. Each tick: drain externally posted messages,
// call on_tick on every actor in registration order, then deliver every
// frame scheduled for the tick. Actor additions and removals requested
// during a tick take effect at the end of it.

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wsim/common/rng.hpp"
#include "wsim/frames/frame.hpp"
#include "wsim/medium/events.hpp"
#include "wsim/medium/medium.hpp"

namespace wsim::medium {

class Engine;
class Actor;

/// Handle given to actors during callbacks.
class Context {
 public:
  Context(Engine& engine, Actor& actor) : engine_(engine), actor_(actor) {}

  Tick now() const;
  Engine& engine() { return engine_; }

  /// Sends on the actor's endpoint `delay` ticks from now.
  void transmit(const frames::Frame& frame, Tick delay = 1);
  void transmit_raw(std::uint8_t channel, Bytes bytes, Tick delay = 1);

  void emit(EventKind kind, std::optional<MacAddr> peer = std::nullopt,
            std::optional<MacAddr> bssid = std::nullopt, std::int64_t value = 0,
            std::string detail = {});

 private:
  Engine& engine_;
  Actor& actor_;
};

class Actor {
 public:
  Actor(std::string name, std::string role) : name_(std::move(name)), role_(std::move(role)) {}
  virtual ~Actor() = default;

  const std::string& name() const { return name_; }
  const std::string& role() const { return role_; }

  /// Radio channel for the actor's endpoint, or 0 for actors without a
  /// radio (pure controllers).
  virtual std::uint8_t channel() const { return 0; }

  virtual void on_start(Context&) {}
  virtual void on_tick(Context&) {}
  virtual void on_frame(Context&, const frames::Frame&) {}
  virtual void on_sniffed(Context&, const SniffedRecord&) {}

  EndpointId endpoint() const { return endpoint_; }

 private:
  friend class Engine;
  std::string name_;
  std::string role_;
  EndpointId endpoint_ = 0;
};

class Engine {
 public:
  explicit Engine(std::uint64_t seed, double loss_rate = 0.0);
  ~Engine();

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  std::uint64_t seed() const { return seed_; }
  Tick now() const { return now_; }
  /// First tick the next run_until call will execute.
  Tick next_tick() const { return next_; }
  Medium& medium() { return medium_; }

  /// Independent generator for a named consumer.
  Rng make_rng(std::string_view label) const { return Rng(derive_seed(seed_, label)); }

  /// Registers an actor. Inside a callback the actor starts receiving
  /// ticks and frames from the next tick on.
  Actor& add(std::unique_ptr<Actor> actor);

  template <typename T, typename... Args>
  T& emplace(Args&&... args) {
    return static_cast<T&>(add(std::make_unique<T>(std::forward<Args>(args)...)));
  }

  /// Deferred to the end of the current tick when called from a callback.
  void remove(Actor& actor);

  /// Delivers every frame on `channel` to `actor.on_sniffed`, lossless.
  void monitor(Actor& actor, std::uint8_t channel);
  void unmonitor(Actor& actor);

  void add_sink(RecordSink sink) { sinks_.push_back(std::move(sink)); }

  /// Emits an event not tied to an actor callback.
  void emit(ProtocolEvent ev);

  /// Thread-safe. The message runs on the loop thread at the start of the
  /// next tick.
  void post(std::function<void(Engine&)> message);

  /// Runs every not-yet-run tick up to `end` inclusive, or until stop().
  void run_until(Tick end);
  void stop() { stopped_ = true; }
  bool stopped() const { return stopped_; }

  const std::vector<ProtocolEvent>& events() const { return events_; }
  void keep_events(bool keep) { keep_events_ = keep; }

  Actor* find(std::string_view name) const;

  void transmit_from(Actor& actor, const frames::Frame& frame, Tick delay);
  void transmit_raw_from(Actor& actor, std::uint8_t channel, Bytes bytes, Tick delay);

 private:
  struct Monitor {
    Actor* actor;
    SnifferId sniffer;
  };

  void run_tick();
  void deliver(const DeliveryEvent& ev);
  void apply_pending();
  std::string name_of(EndpointId id) const;
  std::string role_of(EndpointId id) const;

  std::uint64_t seed_;
  Medium medium_;
  Tick now_ = 0;
  Tick next_ = 0;
  bool in_tick_ = false;
  bool stopped_ = false;
  bool keep_events_ = true;
  std::vector<std::unique_ptr<Actor>> actors_;
  std::vector<std::unique_ptr<Actor>> pending_add_;
  std::vector<Actor*> pending_remove_;
  std::vector<Monitor> monitors_;
  std::vector<RecordSink> sinks_;
  std::vector<ProtocolEvent> events_;
  std::mutex inbox_mutex_;
  std::deque<std::function<void(Engine&)>> inbox_;
};

}  // namespace wsim::medium

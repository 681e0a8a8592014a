#pragma once

// Engine adapters for the station state machines.

#include "wsim/medium/engine.hpp"
#include "wsim/stations/access_point.hpp"
#include "wsim/stations/client.hpp"

namespace wsim::stations {

void flush(medium::Context& ctx, StationOutput&& out);

class ApActor : public medium::Actor {
 public:
  ApActor(std::string name, ApConfig config, Rng rng, std::string role = "ap")
      : Actor(std::move(name), std::move(role)), ap_(std::move(config), std::move(rng)) {}

  std::uint8_t channel() const override { return ap_.config().channel; }
  void on_tick(medium::Context& ctx) override { flush(ctx, ap_.on_tick(ctx.now())); }
  void on_frame(medium::Context& ctx, const frames::Frame& f) override {
    flush(ctx, ap_.on_frame(f, ctx.now()));
  }

  AccessPoint& ap() { return ap_; }
  const AccessPoint& ap() const { return ap_; }

 private:
  AccessPoint ap_;
};

class ClientActor : public medium::Actor {
 public:
  ClientActor(std::string name, ClientConfig config, Rng rng)
      : Actor(std::move(name), "client"), client_(std::move(config), std::move(rng)) {}

  std::uint8_t channel() const override { return client_.config().channel; }
  void on_tick(medium::Context& ctx) override { flush(ctx, client_.on_tick(ctx.now())); }
  void on_frame(medium::Context& ctx, const frames::Frame& f) override {
    flush(ctx, client_.on_frame(f, ctx.now()));
  }

  Client& client() { return client_; }
  const Client& client() const { return client_; }

 private:
  Client client_;
};

}  // namespace wsim::stations

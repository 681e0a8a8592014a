#pragma once

// Small helpers for building simulated networks in tests.

#include <algorithm>

#include "wsim/medium/engine.hpp"
#include "wsim/stations/actors.hpp"

namespace wsim::test {

inline const MacAddr kApMac = MacAddr::parse("B8:27:EB:6C:61:7A");
inline const char* const kSsid = "WPA3OpenWrt";
inline const char* const kPass = "12345678";

inline stations::ApConfig ap_config(stations::ApMode mode,
                                    frames::PmfPolicy pmf = frames::PmfPolicy::kDisabled,
                                    const std::string& pass = kPass) {
  stations::ApConfig c;
  c.ssid = frames::Ssid(kSsid);
  c.bssid = kApMac;
  c.channel = 11;
  c.mode = mode;
  c.pmf = pmf;
  if (mode != stations::ApMode::kOpen) c.passphrase = crypto::Passphrase(pass);
  return c;
}

inline stations::ClientConfig client_config(stations::ClientCapability cap, std::uint64_t n = 1,
                                            const std::string& pass = kPass) {
  stations::ClientConfig c;
  c.mac = MacAddr::local_from_bits(n);
  c.capability = cap;
  c.known_network = {frames::Ssid(kSsid), crypto::Passphrase(pass)};
  c.channel = 11;
  return c;
}

/// Records every frame on a channel.
class Recorder : public medium::Actor {
 public:
  explicit Recorder(std::uint8_t channel = 11) : Actor("recorder", "observer"), ch_(channel) {}
  void on_start(medium::Context& ctx) override { ctx.engine().monitor(*this, ch_); }
  void on_sniffed(medium::Context&, const medium::SniffedRecord& r) override {
    records.push_back(r);
  }

  template <typename T>
  std::vector<std::pair<Tick, frames::Frame>> of() const {
    std::vector<std::pair<Tick, frames::Frame>> out;
    for (const auto& r : records) {
      if (r.frame && r.frame->as<T>()) out.emplace_back(r.tick, *r.frame);
    }
    return out;
  }

  std::vector<medium::SniffedRecord> records;

 private:
  std::uint8_t ch_;
};

inline std::size_t count_events(const medium::Engine& e, medium::EventKind kind,
                                const std::string& actor = {}) {
  return static_cast<std::size_t>(
      std::count_if(e.events().begin(), e.events().end(), [&](const medium::ProtocolEvent& ev) {
        return ev.kind == kind && (actor.empty() || ev.actor == actor);
      }));
}

inline std::optional<medium::ProtocolEvent> first_event(const medium::Engine& e,
                                                        medium::EventKind kind,
                                                        const std::string& actor = {}) {
  for (const auto& ev : e.events()) {
    if (ev.kind == kind && (actor.empty() || ev.actor == actor)) return ev;
  }
  return std::nullopt;
}

}  // namespace wsim::test

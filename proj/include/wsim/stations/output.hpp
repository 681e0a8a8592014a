#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wsim/frames/frame.hpp"
#include "wsim/medium/events.hpp"

namespace wsim::stations {

using medium::EventKind;

struct Emitted {
  EventKind kind;
  std::optional<MacAddr> peer;
  std::optional<MacAddr> bssid;
  std::int64_t value = 0;
  std::string detail;
};

/// Frames to send (one tick later) and events produced by one transition.
struct StationOutput {
  std::vector<frames::Frame> frames;
  std::vector<Emitted> events;

  void send(frames::Frame f) { frames.push_back(std::move(f)); }
  void emit(EventKind kind, std::optional<MacAddr> peer = std::nullopt,
            std::optional<MacAddr> bssid = std::nullopt, std::int64_t value = 0,
            std::string detail = {}) {
    events.push_back({kind, peer, bssid, value, std::move(detail)});
  }
  void append(StationOutput&& other) {
    for (auto& f : other.frames) frames.push_back(std::move(f));
    for (auto& e : other.events) events.push_back(std::move(e));
  }
};

}  // namespace wsim::stations

#pragma once

// Deterministic shared radio. Deliveries are ordered by (tick, sequence);
// the sequence number is assigned at enqueue time.

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "wsim/common/bytes.hpp"
#include "wsim/common/rng.hpp"
#include "wsim/frames/frame.hpp"

namespace wsim::medium {

using EndpointId = std::uint32_t;
using SnifferId = std::uint32_t;

struct SniffedRecord {
  Tick tick = 0;
  std::uint8_t channel = 0;
  Bytes bytes;
  /// Empty when the bytes do not decode.
  std::optional<frames::Frame> frame;
};

struct DeliveryEvent {
  Tick tick = 0;
  std::uint64_t seq = 0;
  std::uint8_t channel = 0;
  EndpointId sender = 0;
  Bytes bytes;
  std::optional<frames::Frame> frame;
  std::vector<EndpointId> delivered;
  std::vector<EndpointId> dropped;
};

class Medium {
 public:
  explicit Medium(std::uint64_t seed, double loss_rate = 0.0);

  Tick clock() const { return clock_; }
  double loss_rate() const { return loss_rate_; }

  EndpointId attach(std::string name, std::uint8_t channel);
  void detach(EndpointId id);
  void retune(EndpointId id, std::uint8_t channel);
  const std::string& endpoint_name(EndpointId id) const;
  bool attached(EndpointId id) const { return endpoints_.count(id) != 0; }

  SnifferId attach_sniffer(std::uint8_t channel);
  void detach_sniffer(SnifferId id);
  std::vector<SniffedRecord> drain_sniffer(SnifferId id);

  /// Throws std::invalid_argument if `at` is before the current clock.
  void transmit(EndpointId sender, const frames::Frame& frame, Tick at);

  /// Enqueues arbitrary bytes, e.g. a corrupted frame for fault injection.
  void transmit_raw(EndpointId sender, std::uint8_t channel, Bytes bytes, Tick at);

  /// Advances the clock to the earliest pending tick and delivers every
  /// event scheduled for it, in sequence order. Returns nothing and leaves
  /// the clock alone when the queue is empty.
  std::vector<DeliveryEvent> step();

  std::optional<Tick> next_event_tick() const;
  bool idle() const { return queue_.empty(); }

  /// Moves the clock forward without delivering. Throws std::logic_error if
  /// an event earlier than `t` is still pending or if `t` is in the past.
  void advance_to(Tick t);

 private:
  struct Pending {
    Tick tick;
    std::uint64_t seq;
    std::uint8_t channel;
    EndpointId sender;
    Bytes bytes;

    bool operator>(const Pending& o) const {
      return tick != o.tick ? tick > o.tick : seq > o.seq;
    }
  };

  struct Endpoint {
    std::string name;
    std::uint8_t channel;
  };

  struct Sniffer {
    std::uint8_t channel;
    std::vector<SniffedRecord> buffer;
  };

  void enqueue(EndpointId sender, std::uint8_t channel, Bytes bytes, Tick at);

  Tick clock_ = 0;
  std::uint64_t next_seq_ = 0;
  double loss_rate_;
  Rng rng_;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::map<EndpointId, Endpoint> endpoints_;
  std::map<SnifferId, Sniffer> sniffers_;
  EndpointId next_endpoint_ = 1;
  SnifferId next_sniffer_ = 1;
};

}  // namespace wsim::medium

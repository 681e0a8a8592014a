#include "wsim/medium/medium.hpp"

#include <stdexcept>

#include "wsim/frames/codec.hpp"

namespace wsim::medium {

Medium::Medium(std::uint64_t seed, double loss_rate)
    : loss_rate_(loss_rate), rng_(derive_seed(seed, "medium")) {
  if (loss_rate < 0.0 || loss_rate > 1.0) throw std::invalid_argument("loss_rate outside [0,1]");
}

EndpointId Medium::attach(std::string name, std::uint8_t channel) {
  const EndpointId id = next_endpoint_++;
  endpoints_.emplace(id, Endpoint{std::move(name), channel});
  return id;
}

void Medium::detach(EndpointId id) { endpoints_.erase(id); }

void Medium::retune(EndpointId id, std::uint8_t channel) { endpoints_.at(id).channel = channel; }

const std::string& Medium::endpoint_name(EndpointId id) const {
  static const std::string kUnknown = "?";
  auto it = endpoints_.find(id);
  return it == endpoints_.end() ? kUnknown : it->second.name;
}

SnifferId Medium::attach_sniffer(std::uint8_t channel) {
  const SnifferId id = next_sniffer_++;
  sniffers_.emplace(id, Sniffer{channel, {}});
  return id;
}

void Medium::detach_sniffer(SnifferId id) { sniffers_.erase(id); }

std::vector<SniffedRecord> Medium::drain_sniffer(SnifferId id) {
  auto it = sniffers_.find(id);
  if (it == sniffers_.end()) return {};
  return std::exchange(it->second.buffer, {});
}

void Medium::enqueue(EndpointId sender, std::uint8_t channel, Bytes bytes, Tick at) {
  if (at < clock_) {
    throw std::invalid_argument("cannot schedule at tick " + std::to_string(at) +
                                ", clock is " + std::to_string(clock_));
  }
  queue_.push(Pending{at, next_seq_++, channel, sender, std::move(bytes)});
}

void Medium::transmit(EndpointId sender, const frames::Frame& frame, Tick at) {
  enqueue(sender, frame.channel(), frames::encode_frame(frame), at);
}

void Medium::transmit_raw(EndpointId sender, std::uint8_t channel, Bytes bytes, Tick at) {
  enqueue(sender, channel, std::move(bytes), at);
}

std::optional<Tick> Medium::next_event_tick() const {
  if (queue_.empty()) return std::nullopt;
  return queue_.top().tick;
}

void Medium::advance_to(Tick t) {
  if (t < clock_) throw std::logic_error("clock cannot move backwards");
  if (!queue_.empty() && queue_.top().tick < t) {
    throw std::logic_error("advance_to would skip pending deliveries");
  }
  clock_ = t;
}

std::vector<DeliveryEvent> Medium::step() {
  std::vector<DeliveryEvent> out;
  if (queue_.empty()) return out;
  clock_ = queue_.top().tick;
  while (!queue_.empty() && queue_.top().tick == clock_) {
    Pending p = queue_.top();
    queue_.pop();
    DeliveryEvent ev;
    ev.tick = p.tick;
    ev.seq = p.seq;
    ev.channel = p.channel;
    ev.sender = p.sender;
    ev.frame = frames::try_decode_frame(p.bytes);
    for (const auto& [id, ep] : endpoints_) {
      if (id == p.sender || ep.channel != p.channel) continue;
      if (loss_rate_ > 0.0 && rng_.bernoulli(loss_rate_)) {
        ev.dropped.push_back(id);
      } else {
        ev.delivered.push_back(id);
      }
    }
    for (auto& [id, sn] : sniffers_) {
      if (sn.channel == p.channel) sn.buffer.push_back({p.tick, p.channel, p.bytes, ev.frame});
    }
    ev.bytes = std::move(p.bytes);
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace wsim::medium

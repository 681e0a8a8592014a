#include "wsim/stations/actors.hpp"

namespace wsim::stations {

void flush(medium::Context& ctx, StationOutput&& out) {
  for (auto& e : out.events) {
    ctx.emit(e.kind, e.peer, e.bssid, e.value, std::move(e.detail));
  }
  for (const auto& f : out.frames) ctx.transmit(f);
}

}  // namespace wsim::stations

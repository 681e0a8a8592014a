#pragma once

// Simulated users behind rogue-network clients. A victim is shown the
// portal once its station associates to a rogue network listed in the
// PortalDirectory, and is prompted again every `prompt_interval` ticks
// until a submission is accepted.

#include <memory>

#include "wsim/medium/engine.hpp"
#include "wsim/portal/portal.hpp"
#include "wsim/stations/actors.hpp"

namespace wsim::portal {

enum class Engagement { kVeryActive, kMildActive, kNotActive };

std::string_view to_string(Engagement e);
std::optional<Engagement> engagement_from_string(std::string_view s);

struct VictimProfile {
  Engagement engagement = Engagement::kVeryActive;
  double submit_probability = 1.0;
  double typo_probability = 0.0;
  Tick think_min = 3000;
  Tick think_max = 8000;
  Tick prompt_interval = 15000;
};

VictimProfile default_profile(Engagement e);

/// Throws std::invalid_argument on probabilities outside [0,1], a
/// NotActive profile that submits, or think_min > think_max.
void validate(const VictimProfile& p);

struct VictimAction {
  Tick at = 0;
  std::string candidate;
  bool typo = false;
};

struct VictimState {
  std::string passphrase;
  /// Next tick the victim looks at the portal.
  Tick next_prompt = 0;
  bool done = false;
};

/// Called when the victim looks at the portal (now >= next_prompt). Either
/// schedules a submission after a think delay or reschedules the next
/// prompt.
std::optional<VictimAction> step_victim(const VictimProfile& profile, VictimState& state, Rng& rng,
                                        Tick now);

/// Replaces one character of `s` with a different printable character.
std::string with_typo(std::string_view s, Rng& rng);

class VictimActor : public medium::Actor {
 public:
  VictimActor(std::string name, std::string station, VictimProfile profile,
              std::string passphrase, std::shared_ptr<PortalDirectory> portals, Rng rng);

  void on_tick(medium::Context& ctx) override;

  const VictimState& state() const { return state_; }
  std::uint64_t submissions() const { return submissions_; }

 private:
  std::string station_;
  VictimProfile profile_;
  std::shared_ptr<PortalDirectory> portals_;
  Rng rng_;
  VictimState state_;
  std::optional<stations::NetworkKey> shown_on_;
  std::optional<VictimAction> pending_;
  std::uint64_t submissions_ = 0;
};

}  // namespace wsim::portal

#pragma once

// Denial-of-service actors. Each runs on its own radio endpoint with the
// "attacker" role, so injected frames can be counted from the log.

#include <deque>
#include <map>
#include <set>

#include "wsim/attacks/plan.hpp"
#include "wsim/crypto/sae.hpp"
#include "wsim/medium/engine.hpp"

namespace wsim::attacks {

/// Forged unprotected deauthentication in both directions, `rate_per_sec`
/// bursts per second. Clients are learned from sniffed traffic; until one
/// is known the burst is a broadcast deauth from the AP. Clients seen
/// joining the rogue network are left alone.
class DeauthActor : public medium::Actor {
 public:
  DeauthActor(std::string name, AttackPlan plan);

  std::uint8_t channel() const override { return plan_.channel; }
  void on_start(medium::Context& ctx) override;
  void on_tick(medium::Context& ctx) override;
  void on_sniffed(medium::Context& ctx, const medium::SniffedRecord& rec) override;

  const std::set<MacAddr>& targets() const { return targets_; }

 private:
  AttackPlan plan_;
  Tick next_burst_ = 0;
  bool started_ = false;
  std::set<MacAddr> targets_;
  std::set<MacAddr> on_rogue_;
};

/// Bursts of `rate_per_sec` forged SAE commits at the start of every
/// second, from rotating random addresses. Anti-clogging tokens sent to a
/// forged address are echoed from that address in the next burst.
class CommitFloodActor : public medium::Actor {
 public:
  CommitFloodActor(std::string name, AttackPlan plan, Rng rng);

  std::uint8_t channel() const override { return plan_.channel; }
  void on_start(medium::Context& ctx) override;
  void on_tick(medium::Context& ctx) override;
  void on_sniffed(medium::Context& ctx, const medium::SniffedRecord& rec) override;

  std::uint64_t commits_sent() const { return sent_; }

 private:
  frames::Frame forged(const MacAddr& src, std::optional<crypto::AnticlogToken> token);

  AttackPlan plan_;
  Rng rng_;
  std::set<MacAddr> forged_macs_;
  std::deque<std::pair<MacAddr, crypto::AnticlogToken>> echoes_;
  std::uint64_t sent_ = 0;
};

/// Watches for a legitimate SAE commit to the target and answers for the
/// victim with a bogus confirm that reaches the AP before the victim's own
/// confirm. The AP aborts the session and rejects the victim.
class BadTokenRaceActor : public medium::Actor {
 public:
  BadTokenRaceActor(std::string name, AttackPlan plan, Rng rng);

  std::uint8_t channel() const override { return plan_.channel; }
  void on_start(medium::Context& ctx) override;
  void on_sniffed(medium::Context& ctx, const medium::SniffedRecord& rec) override;

  std::uint64_t races() const { return races_; }

 private:
  AttackPlan plan_;
  Rng rng_;
  std::uint64_t races_ = 0;
};

/// Delay of the forged confirm after the sniffed commit. It lands on the
/// same tick as the victim's confirm and is enqueued first.
inline constexpr Tick kRaceDelay = 2;

}  // namespace wsim::attacks

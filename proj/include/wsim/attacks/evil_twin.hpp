#pragma once

// Drives one attack plan: from start_tick it runs the DoS strategy and, with
// evil_twin set, sniffs for a handshake, then raises a rogue copy of the
// target network with a captive portal behind it. The attack closes once
// the portal verifies a passphrase, or at stop_tick.

#include <memory>

#include "wsim/attacks/dos.hpp"
#include "wsim/attacks/handshake.hpp"
#include "wsim/portal/portal.hpp"
#include "wsim/stations/actors.hpp"

namespace wsim::attacks {

enum class AttackPhase { kWaiting, kCapturing, kPortal, kClosed };

std::string_view to_string(AttackPhase p);

/// Rogue AP configuration for a plan. Throws std::invalid_argument when the
/// handshake belongs to another SSID.
stations::ApConfig rogue_config(const AttackPlan& plan, const HandshakeCapture& hs, Rng& rng);

/// Starts a rogue AP with role "rogue_ap".
stations::ApActor& spawn_evil_twin(medium::Engine& engine, const std::string& name,
                                   const AttackPlan& plan, const HandshakeCapture& hs);

class AttackController : public medium::Actor {
 public:
  /// Throws std::invalid_argument for an invalid plan and
  /// portal::PortalError for an unknown portal language or template.
  AttackController(std::string name, AttackPlan plan,
                   std::shared_ptr<portal::PortalDirectory> portals);

  void on_tick(medium::Context& ctx) override;
  void on_sniffed(medium::Context& ctx, const medium::SniffedRecord& rec) override;

  AttackPhase phase() const { return phase_; }
  const AttackPlan& plan() const { return plan_; }
  const std::optional<HandshakeCapture>& handshake() const { return hs_; }
  std::optional<MacAddr> rogue_bssid() const;
  std::shared_ptr<portal::Portal> portal() const { return portal_; }

 private:
  void start(medium::Context& ctx);
  void open_portal(medium::Context& ctx);
  void close(medium::Context& ctx, bool recovered);

  AttackPlan plan_;
  std::shared_ptr<portal::PortalDirectory> portals_;
  AttackPhase phase_ = AttackPhase::kWaiting;
  std::vector<medium::SniffedRecord> sniffed_;
  std::optional<HandshakeCapture> hs_;
  medium::Actor* dos_ = nullptr;
  stations::ApActor* rogue_ = nullptr;
  std::optional<stations::NetworkKey> rogue_key_;
  std::shared_ptr<portal::Portal> portal_;
};

}  // namespace wsim::attacks

#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>

#include "wsim/common/mac_addr.hpp"
#include "wsim/crypto/psk.hpp"
#include "wsim/frames/frame.hpp"

namespace wsim::attacks {

enum class DeauthStrategy { kAireplayDeauth, kCommitFlood, kBadTokenRace };
enum class RogueSecurity { kOpen, kWpa2Psk };

std::string_view to_string(DeauthStrategy s);
std::optional<DeauthStrategy> strategy_from_string(std::string_view s);
std::string_view to_string(RogueSecurity s);
std::optional<RogueSecurity> rogue_security_from_string(std::string_view s);

struct AttackPlan {
  MacAddr target_bssid;
  frames::Ssid target_ssid;
  std::uint8_t channel = 11;
  /// Address used for the attacker's own frames and, without spoofing,
  /// as the base for the rogue BSSID.
  MacAddr attacker_mac = MacAddr::parse("02:A7:7A:C0:00:01");
  DeauthStrategy strategy = DeauthStrategy::kAireplayDeauth;
  /// Deauth bursts or forged commits per second. Must be at least 1.
  unsigned rate_per_sec = 10;
  bool spoof_mac = true;
  RogueSecurity rogue_security = RogueSecurity::kOpen;
  std::optional<crypto::Passphrase> decoy_passphrase;
  std::string portal_language = "english";
  std::string portal_template = "generic";
  std::filesystem::path password_log_path;
  Tick start_tick = 0;
  Tick stop_tick = std::numeric_limits<Tick>::max();
  /// Capture, evil twin and portal. When false only the DoS strategy runs.
  bool evil_twin = true;
};

/// Throws std::invalid_argument on a rate of zero, a PSK rogue without a
/// decoy passphrase, or a window that ends before it starts.
void validate(const AttackPlan& plan);

std::string default_password_log_name(const frames::Ssid& ssid);

}  // namespace wsim::attacks

#pragma once

// Scenario files. The text format is a sequence of sections:
//
//   [scenario]          seed, duration, loss_rate, sniffer_channels, ...
//   [ap <name>]         one per access point
//   [client <name>]     one per client (or group, with `count`)
//   [attack]            optional
//   [crack]             optional offline dictionary run after the simulation
//   [outputs]           optional file paths
//
// with `key = value` lines and `#` comments. A JSON document with the same
// keys ({"scenario": {...}, "aps": [{"name": ..}], "clients": [..],
// "attack": {..}, "crack": {..}, "outputs": {..}}) is accepted as well.
// See docs/scenario-format.md for every key.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsim/attacks/plan.hpp"
#include "wsim/portal/victim.hpp"
#include "wsim/stations/access_point.hpp"
#include "wsim/stations/client.hpp"

namespace wsim::scenario {

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct ApSpec {
  std::string name;
  stations::ApConfig config;
};

struct ClientSpec {
  std::string name;
  stations::ClientConfig config;
  std::optional<portal::VictimProfile> victim;
};

struct CrackSpec {
  std::filesystem::path wordlist;
};

struct Outputs {
  std::filesystem::path event_log;
  std::filesystem::path capture;
  std::filesystem::path report;
  std::filesystem::path report_text;
  std::filesystem::path password_log;
  std::filesystem::path handshake;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 0;
  Tick duration = 0;
  double loss_rate = 0.0;
  std::vector<std::uint8_t> sniffer_channels;
  /// Every capable client should connect before this tick when no attack
  /// runs. Checked by tests, reported per client.
  std::optional<Tick> connect_bound;
  std::vector<ApSpec> aps;
  std::vector<ClientSpec> clients;
  std::optional<attacks::AttackPlan> attack;
  std::optional<CrackSpec> crack;
  Outputs outputs;
};

/// Parses either format (JSON when the first non-blank character is `{`).
/// A relative wordlist path resolves against `base_dir`; output paths are
/// taken as given.
/// Throws ScenarioError listing every problem found.
ScenarioConfig parse_scenario_text(std::string_view text,
                                   const std::filesystem::path& base_dir = {});

/// Reads a file and applies the WSIM_SEED environment override.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Overrides the seed when WSIM_SEED holds an unsigned integer. Throws
/// ScenarioError when it is set to anything else.
void apply_env_overrides(ScenarioConfig& cfg);

}  // namespace wsim::scenario

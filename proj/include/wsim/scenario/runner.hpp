#pragma once

#include <optional>

#include "wsim/attacks/handshake.hpp"
#include "wsim/frames/capture.hpp"
#include "wsim/scenario/report.hpp"
#include "wsim/scenario/scenario.hpp"

namespace wsim::scenario {

struct RunResult {
  RunReport report;
  /// Every log record, header first, as written to the event log.
  std::vector<nlohmann::json> records;
  /// Frames seen by the scenario's sniffers.
  frames::CaptureFile capture;
  std::optional<attacks::HandshakeCapture> handshake;
  std::optional<attacks::CrackResult> crack;
  /// Lines the portal appended to the password log during this run.
  std::vector<std::string> recovered;
};

/// Runs the simulation to `duration`, then the optional dictionary crack
/// against the captured handshake, and writes every configured output.
/// The handshake comes from the attacker when one ran, otherwise from the
/// sniffer capture. Throws std::runtime_error on I/O failures.
RunResult run_scenario(const ScenarioConfig& cfg);

/// Serialized event log, byte for byte what run_scenario writes.
std::string serialize_log(const std::vector<nlohmann::json>& records);

}  // namespace wsim::scenario

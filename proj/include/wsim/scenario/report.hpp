#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsim/attacks/report.hpp"

namespace wsim::scenario {

struct ClientSummary {
  std::string name;
  std::optional<Tick> first_connected;
  std::size_t connections = 0;

  bool operator==(const ClientSummary&) const = default;
};

struct PortalTotals {
  std::size_t page_served = 0;
  std::size_t submitted = 0;
  std::size_t verified = 0;
  std::size_t rejected = 0;
  std::size_t fake_success_shown = 0;

  bool operator==(const PortalTotals&) const = default;
};

struct CrackSummary {
  bool found = false;
  std::size_t candidates_tried = 0;
  /// Wall-clock seconds. Known only to the run that did the work; a report
  /// rebuilt from the log leaves it empty.
  std::optional<double> elapsed_seconds;

  bool operator==(const CrackSummary&) const = default;
};

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  Tick duration = 0;
  /// Ticks from attack start to capture, and to the first verified portal
  /// submission.
  std::optional<Tick> time_to_handshake;
  std::optional<Tick> time_to_password;
  bool deauth_effective = false;
  std::optional<double> legit_sae_success_rate_during_attack;
  attacks::AttackReport attack;
  PortalTotals portal;
  std::optional<CrackSummary> crack;
  std::vector<ClientSummary> clients;

  bool operator==(const RunReport&) const = default;
};

/// Header record written first in every run log.
nlohmann::json run_header(const std::string& scenario, std::uint64_t seed, Tick duration,
                          const std::vector<std::string>& clients);

/// Throws std::runtime_error when the records lack a run header.
RunReport build_run_report(const std::vector<nlohmann::json>& records);

nlohmann::json to_json(const RunReport& r);
std::string to_text(const RunReport& r);

}  // namespace wsim::scenario

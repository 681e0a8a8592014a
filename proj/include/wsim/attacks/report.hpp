#pragma once

// Attack metrics computed from log records alone, so a report rebuilt from
// a JSONL file matches the one computed during the run.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsim/common/bytes.hpp"

namespace wsim::attacks {

struct AttemptStats {
  std::size_t started = 0;
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  /// Attempts that saw an SaeReject with status 0x0001.
  std::size_t unspecified_failure = 0;

  /// succeeded / (succeeded + failed); none when nothing resolved.
  std::optional<double> success_rate() const;
  bool operator==(const AttemptStats&) const = default;
};

struct AttackReport {
  /// "none" when the run had no attack; the window is then the whole run.
  std::string strategy = "none";
  Tick window_start = 0;
  Tick window_end = 0;
  std::uint64_t frames_injected = 0;
  std::uint64_t deauth_disconnections = 0;
  std::uint64_t deauth_ignored = 0;
  std::uint64_t overloaded = 0;
  std::uint64_t anticlog_demands = 0;
  /// SAE attempts by clients that started inside the window.
  AttemptStats sae;

  bool operator==(const AttackReport&) const = default;
};

AttackReport build_attack_report(const std::vector<nlohmann::json>& records, Tick run_end);

nlohmann::json to_json(const AttackReport& r);

}  // namespace wsim::attacks

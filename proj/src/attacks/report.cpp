#include "wsim/attacks/report.hpp"

#include <map>

namespace wsim::attacks {

using nlohmann::json;

std::optional<double> AttemptStats::success_rate() const {
  const std::size_t resolved = succeeded + failed;
  if (resolved == 0) return std::nullopt;
  return static_cast<double>(succeeded) / static_cast<double>(resolved);
}

namespace {

struct Attempt {
  bool sae = false;
  bool in_window = false;
  bool unspecified = false;
};

bool is_event(const json& r, std::string_view kind) {
  return r.value("type", "") == "event" && r.value("kind", "") == kind;
}

}  // namespace

AttackReport build_attack_report(const std::vector<json>& records, Tick run_end) {
  AttackReport rep;
  rep.window_end = run_end;
  for (const auto& r : records) {
    if (is_event(r, "attack_started")) {
      rep.strategy = r.value("detail", "");
      rep.window_start = r["tick"].get<Tick>();
      break;
    }
  }
  if (rep.strategy != "none") {
    for (const auto& r : records) {
      if (is_event(r, "attack_stopped")) {
        rep.window_end = r["tick"].get<Tick>();
        break;
      }
    }
  }
  auto in_window = [&](const json& r) {
    const Tick t = r["tick"].get<Tick>();
    return t >= rep.window_start && t <= rep.window_end;
  };

  std::map<std::string, Attempt> open;
  for (const auto& r : records) {
    const std::string type = r.value("type", "");
    if (type != "delivery" && type != "event") continue;
    if (type == "delivery") {
      if (r.value("role", "") == "attacker" && in_window(r)) ++rep.frames_injected;
      continue;
    }
    const std::string kind = r.value("kind", "");
    const std::string actor = r.value("actor", "");
    if (kind == "attempt_started") {
      Attempt a;
      a.sae = r.value("detail", "") == "sae";
      a.in_window = in_window(r);
      open[actor] = a;
      if (a.sae && a.in_window) ++rep.sae.started;
    } else if (kind == "sae_rejected") {
      if (auto it = open.find(actor); it != open.end() && r.value("value", 0) == 1) {
        it->second.unspecified = true;
      }
    } else if (kind == "attempt_succeeded" || kind == "attempt_failed") {
      const auto it = open.find(actor);
      if (it == open.end()) continue;
      const Attempt a = it->second;
      open.erase(it);
      if (!a.sae || !a.in_window) continue;
      (kind == "attempt_succeeded" ? rep.sae.succeeded : rep.sae.failed)++;
      if (a.unspecified) ++rep.sae.unspecified_failure;
    } else if (!in_window(r)) {
      continue;
    } else if (kind == "disconnected" && r.value("detail", "") == "deauth") {
      ++rep.deauth_disconnections;
    } else if (kind == "deauth_ignored") {
      ++rep.deauth_ignored;
    } else if (kind == "overloaded") {
      ++rep.overloaded;
    } else if (kind == "anticlogging_demanded") {
      ++rep.anticlog_demands;
    }
  }
  return rep;
}

json to_json(const AttackReport& r) {
  const auto rate = r.sae.success_rate();
  return {{"strategy", r.strategy},
          {"window", {r.window_start, r.window_end}},
          {"frames_injected", r.frames_injected},
          {"deauth_disconnections", r.deauth_disconnections},
          {"deauth_ignored", r.deauth_ignored},
          {"overloaded", r.overloaded},
          {"anticlog_demands", r.anticlog_demands},
          {"sae_attempts",
           {{"started", r.sae.started},
            {"succeeded", r.sae.succeeded},
            {"failed", r.sae.failed},
            {"unspecified_failure", r.sae.unspecified_failure},
            {"success_rate", rate ? json(*rate) : json(nullptr)}}}};
}

}  // namespace wsim::attacks

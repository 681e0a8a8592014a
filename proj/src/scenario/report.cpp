#include "wsim/scenario/report.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

namespace wsim::scenario {

using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string seconds(Tick t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", static_cast<double>(t) / kTicksPerSecond);
  return buf;
}

std::string ticks(const std::optional<Tick>& t) {
  if (!t) return "none";
  return std::to_string(*t) + " ticks (" + seconds(*t) + ")";
}

}  // namespace

json run_header(const std::string& scenario, std::uint64_t seed, Tick duration,
                const std::vector<std::string>& clients) {
  return {{"v", 1},         {"type", "run"},         {"scenario", scenario},
          {"seed", seed},   {"duration", duration}, {"clients", clients}};
}

RunReport build_run_report(const std::vector<json>& records) {
  RunReport rep;
  const auto header = std::find_if(records.begin(), records.end(),
                                   [](const json& r) { return r.value("type", "") == "run"; });
  if (header == records.end()) throw std::runtime_error("log has no run header record");
  rep.scenario = header->value("scenario", "");
  rep.seed = header->value("seed", std::uint64_t{0});
  rep.duration = header->value("duration", Tick{0});

  std::map<std::string, ClientSummary> clients;
  for (const auto& n : header->value("clients", std::vector<std::string>{})) {
    rep.clients.push_back({n, std::nullopt, 0});
  }
  rep.attack = attacks::build_attack_report(records, rep.duration);

  std::optional<Tick> attack_start;
  for (const auto& r : records) {
    if (r.value("type", "") != "event") continue;
    const std::string kind = r.value("kind", "");
    const Tick t = r["tick"].get<Tick>();
    if (kind == "attack_started" && !attack_start) {
      attack_start = t;
    } else if (kind == "handshake_captured" && !rep.time_to_handshake) {
      rep.time_to_handshake = t - attack_start.value_or(0);
    } else if (kind == "verified") {
      ++rep.portal.verified;
      if (!rep.time_to_password) rep.time_to_password = t - attack_start.value_or(0);
    } else if (kind == "page_served") {
      ++rep.portal.page_served;
    } else if (kind == "submitted") {
      ++rep.portal.submitted;
    } else if (kind == "rejected") {
      ++rep.portal.rejected;
    } else if (kind == "fake_success_shown") {
      ++rep.portal.fake_success_shown;
    } else if (kind == "crack_finished") {
      rep.crack = CrackSummary{r.value("detail", "") == "found",
                               r.value("value", std::size_t{0}), std::nullopt};
    } else if (kind == "connected") {
      const std::string actor = r.value("actor", "");
      for (auto& c : rep.clients) {
        if (c.name != actor) continue;
        if (!c.first_connected) c.first_connected = t;
        ++c.connections;
      }
    }
  }
  rep.deauth_effective = rep.attack.deauth_disconnections > 0;
  rep.legit_sae_success_rate_during_attack = rep.attack.sae.success_rate();
  return rep;
}

json to_json(const RunReport& r) {
  json clients = json::array();
  for (const auto& c : r.clients) {
    clients.push_back({{"name", c.name},
                       {"first_connected", opt(c.first_connected)},
                       {"connections", c.connections}});
  }
  json crack = nullptr;
  if (r.crack) {
    crack = {{"found", r.crack->found},
             {"candidates_tried", r.crack->candidates_tried},
             {"elapsed_seconds", opt(r.crack->elapsed_seconds)}};
  }
  return {{"v", 1},
          {"scenario", r.scenario},
          {"seed", r.seed},
          {"duration", r.duration},
          {"time_to_handshake", opt(r.time_to_handshake)},
          {"time_to_password", opt(r.time_to_password)},
          {"deauth_effective", r.deauth_effective},
          {"legit_sae_success_rate_during_attack", opt(r.legit_sae_success_rate_during_attack)},
          {"attack", attacks::to_json(r.attack)},
          {"portal",
           {{"page_served", r.portal.page_served},
            {"submitted", r.portal.submitted},
            {"verified", r.portal.verified},
            {"rejected", r.portal.rejected},
            {"fake_success_shown", r.portal.fake_success_shown}}},
          {"crack", crack},
          {"clients", clients}};
}

std::string to_text(const RunReport& r) {
  std::string out;
  auto line = [&](std::string_view label, const std::string& value) {
    std::string l(label);
    l.resize(std::max<std::size_t>(l.size() + 1, 22), ' ');
    out += l + value + "\n";
  };
  line("scenario", r.scenario + " (seed " + std::to_string(r.seed) + ", " +
                       std::to_string(r.duration) + " ticks)");
  const auto& a = r.attack;
  line("attack", a.strategy + ", window " + std::to_string(a.window_start) + ".." +
                     std::to_string(a.window_end));
  line("time to handshake", ticks(r.time_to_handshake));
  line("time to password", ticks(r.time_to_password));
  line("deauth effective", r.deauth_effective ? "yes" : "no");
  line("deauth disconnects", std::to_string(a.deauth_disconnections) + " (" +
                                 std::to_string(a.deauth_ignored) + " deauths ignored)");
  std::string rate = "n/a";
  if (r.legit_sae_success_rate_during_attack) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * *r.legit_sae_success_rate_during_attack);
    rate = buf;
  }
  line("SAE success rate", rate + " of " + std::to_string(a.sae.succeeded + a.sae.failed) +
                               " resolved attempts (" + std::to_string(a.sae.unspecified_failure) +
                               " rejected with 0x0001)");
  line("frames injected", std::to_string(a.frames_injected));
  line("AP overloaded", std::to_string(a.overloaded) + " events, " +
                            std::to_string(a.anticlog_demands) + " token demands");
  line("portal", "served " + std::to_string(r.portal.page_served) + ", submitted " +
                     std::to_string(r.portal.submitted) + ", verified " +
                     std::to_string(r.portal.verified) + ", rejected " +
                     std::to_string(r.portal.rejected) + ", fake success " +
                     std::to_string(r.portal.fake_success_shown));
  if (r.crack) {
    std::string c = std::string(r.crack->found ? "found" : "not found") + " after " +
                    std::to_string(r.crack->candidates_tried) + " candidates";
    if (r.crack->elapsed_seconds) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " in %.3f s", *r.crack->elapsed_seconds);
      c += buf;
    }
    line("dictionary crack", c);
  }
  out += "clients\n";
  for (const auto& c : r.clients) {
    std::string v = c.first_connected ? "first connected at tick " + std::to_string(*c.first_connected)
                                      : std::string("never connected");
    v += ", " + std::to_string(c.connections) + " connections";
    std::string name = "  " + c.name;
    name.resize(std::max<std::size_t>(name.size() + 1, 22), ' ');
    out += name + v + "\n";
  }
  return out;
}

}  // namespace wsim::scenario

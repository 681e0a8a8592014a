#include "wsim/scenario/runner.hpp"

#include <fstream>

#include "wsim/attacks/evil_twin.hpp"
#include "wsim/portal/victim.hpp"

namespace wsim::scenario {

namespace {

class CaptureActor : public medium::Actor {
 public:
  CaptureActor(std::vector<std::uint8_t> channels, frames::CaptureFile& out)
      : Actor("sniffer", "observer"), channels_(std::move(channels)), out_(out) {}

  void on_start(medium::Context& ctx) override {
    for (auto c : channels_) ctx.engine().monitor(*this, c);
  }
  void on_sniffed(medium::Context&, const medium::SniffedRecord& r) override {
    out_.records.push_back({r.tick, r.channel, r.bytes});
  }

 private:
  std::vector<std::uint8_t> channels_;
  frames::CaptureFile& out_;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) return;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::string serialize_log(const std::vector<nlohmann::json>& records) {
  std::string out;
  for (const auto& r : records) out += r.dump() + "\n";
  return out;
}

RunResult run_scenario(const ScenarioConfig& cfg) {
  RunResult res;
  res.capture.seed = cfg.seed;
  res.capture.created = 0;

  std::vector<std::string> client_names;
  for (const auto& c : cfg.clients) client_names.push_back(c.name);
  res.records.push_back(run_header(cfg.name, cfg.seed, cfg.duration, client_names));

  medium::Engine engine(cfg.seed, cfg.loss_rate);
  engine.keep_events(false);
  engine.add_sink([&](const nlohmann::json& rec) { res.records.push_back(rec); });

  if (!cfg.sniffer_channels.empty()) {
    engine.emplace<CaptureActor>(cfg.sniffer_channels, res.capture);
  }
  for (const auto& ap : cfg.aps) {
    engine.emplace<stations::ApActor>(ap.name, ap.config, engine.make_rng(ap.name));
  }
  auto portals = std::make_shared<portal::PortalDirectory>();
  for (const auto& c : cfg.clients) {
    engine.emplace<stations::ClientActor>(c.name, c.config, engine.make_rng(c.name));
    if (c.victim) {
      const std::string name = c.name + ".victim";
      engine.emplace<portal::VictimActor>(name, c.name, *c.victim,
                                          c.config.known_network.passphrase->text(), portals,
                                          engine.make_rng(name));
    }
  }
  attacks::AttackController* attacker = nullptr;
  if (cfg.attack) {
    if (cfg.attack->password_log_path.has_parent_path()) {
      std::filesystem::create_directories(cfg.attack->password_log_path.parent_path());
    }
    attacker = &engine.emplace<attacks::AttackController>("attacker", *cfg.attack, portals);
  }

  engine.run_until(cfg.duration);

  if (attacker) {
    res.handshake = attacker->handshake();
    if (auto p = attacker->portal()) res.recovered = p->log_lines();
  } else if (!res.capture.records.empty()) {
    res.handshake = attacks::extract_handshake(res.capture, cfg.aps.front().config.ssid.str());
  }

  if (cfg.crack && res.handshake) {
    res.crack = attacks::crack_dictionary(*res.handshake, attacks::read_wordlist(cfg.crack->wordlist));
    medium::ProtocolEvent ev;
    ev.tick = engine.now();
    ev.actor = "cracker";
    ev.kind = medium::EventKind::kCrackFinished;
    ev.value = static_cast<std::int64_t>(res.crack->candidates_tried);
    ev.detail = res.crack->passphrase ? "found" : "not_found";
    engine.emit(ev);
  }

  res.report = build_run_report(res.records);
  if (res.crack && res.report.crack) res.report.crack->elapsed_seconds = res.crack->elapsed.count();

  const auto& out = cfg.outputs;
  write_text(out.event_log, serialize_log(res.records));
  if (!out.capture.empty()) {
    if (out.capture.has_parent_path()) std::filesystem::create_directories(out.capture.parent_path());
    frames::write_capture(out.capture, res.capture);
  }
  if (!out.handshake.empty() && res.handshake) {
    if (out.handshake.has_parent_path()) {
      std::filesystem::create_directories(out.handshake.parent_path());
    }
    attacks::save_handshake(out.handshake, *res.handshake);
  }
  write_text(out.report, to_json(res.report).dump(2) + "\n");
  write_text(out.report_text, to_text(res.report));
  return res;
}

}  // namespace wsim::scenario

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "wsim/attacks/handshake.hpp"
#include "wsim/frames/capture.hpp"
#include "wsim/medium/events.hpp"
#include "wsim/portal/http_service.hpp"
#include "wsim/scenario/runner.hpp"

namespace {

using namespace wsim;

volatile std::sig_atomic_t g_signal = 0;

void on_signal(int sig) { g_signal = sig; }

void print_handshake(const attacks::HandshakeCapture& hs) {
  std::cout << "ssid    " << hs.ssid << "\n"
            << "aa      " << hs.aa.to_string() << "\n"
            << "sa      " << hs.sa.to_string() << "\n"
            << "anonce  " << to_hex(hs.anonce) << "\n"
            << "snonce  " << to_hex(hs.snonce) << "\n"
            << "mic     " << to_hex(hs.mic) << "\n"
            << "ticks   " << hs.t1 << " -> " << hs.t2 << "\n";
}

int cmd_run(const std::string& path, const std::string& out_dir, std::optional<std::uint64_t> seed,
            bool json) {
  auto cfg = scenario::load_scenario(path);
  if (seed) cfg.seed = *seed;
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    auto fill = [&](std::filesystem::path& p, const std::string& name) {
      if (p.empty()) p = dir / name;
    };
    fill(cfg.outputs.event_log, "events.jsonl");
    fill(cfg.outputs.capture, "capture.wsim");
    fill(cfg.outputs.handshake, "handshake.wshs");
    fill(cfg.outputs.report, "report.json");
    fill(cfg.outputs.report_text, "report.txt");
    if (cfg.attack && cfg.attack->password_log_path.empty()) {
      cfg.attack->password_log_path = dir / attacks::default_password_log_name(cfg.attack->target_ssid);
    }
  }
  const auto res = scenario::run_scenario(cfg);
  if (json) {
    std::cout << scenario::to_json(res.report).dump(2) << "\n";
  } else {
    std::cout << scenario::to_text(res.report);
  }
  return 0;
}

int cmd_extract(const std::string& capture, const std::string& ssid, const std::string& out) {
  const auto read = frames::read_capture(capture);
  if (read.skipped > 0) std::cerr << "skipped " << read.skipped << " undecodable records\n";
  const auto hs = attacks::extract_handshake(read.capture, ssid);
  if (!hs) {
    std::cout << "no handshake for '" << ssid << "' in " << read.capture.records.size()
              << " records\n";
    return 1;
  }
  print_handshake(*hs);
  attacks::save_handshake(out, *hs);
  std::cout << "written " << out << "\n";
  return 0;
}

int cmd_verify(const std::string& hs_path, const std::string& candidate) {
  const auto r = attacks::verify_candidate(attacks::load_handshake(hs_path), candidate);
  std::cout << attacks::to_string(r.outcome);
  if (!r.reason.empty()) std::cout << " (" << r.reason << ")";
  std::cout << "\n";
  switch (r.outcome) {
    case attacks::VerificationResult::Outcome::kVerified: return 0;
    case attacks::VerificationResult::Outcome::kRejected: return 1;
    case attacks::VerificationResult::Outcome::kIndeterminate: return 2;
  }
  return 2;
}

int cmd_crack(const std::string& hs_path, const std::string& wordlist) {
  const auto hs = attacks::load_handshake(hs_path);
  const auto r = attacks::crack_dictionary(hs, attacks::read_wordlist(wordlist));
  if (r.passphrase) {
    std::cout << "found " << *r.passphrase << "\n";
  } else {
    std::cout << "not found\n";
  }
  std::cout << "tried=" << r.candidates_tried << " elapsed=" << r.elapsed.count() << "s\n";
  return r.passphrase ? 0 : 1;
}

int cmd_serve(const std::string& hs_path, const std::string& bind, const std::string& lang,
              const std::string& tmpl, const std::string& log, bool exit_on_recovery) {
  portal::PortalConfig pc;
  pc.language = lang;
  pc.template_id = tmpl;
  pc.bind_address = bind;
  const auto hs = attacks::load_handshake(hs_path);
  std::filesystem::path log_path =
      log.empty() ? std::filesystem::path(attacks::default_password_log_name(frames::Ssid(hs.ssid)))
                  : std::filesystem::path(log);
  auto portal = std::make_shared<portal::Portal>(pc, hs, log_path);

  medium::Engine engine(0);
  engine.keep_events(false);
  medium::JsonlWriter writer(std::cerr);
  engine.add_sink([&](const nlohmann::json& r) { writer(r); });
  portal::EngineDriver driver(engine);
  portal::PortalService service(portal, engine);
  const int port = service.start(portal::parse_bind_address(bind));
  driver.start();
  std::cout << "portal for '" << hs.ssid << "' on http://"
            << portal::parse_bind_address(bind).host << ":" << port << "/ (" << lang << ")\n"
            << std::flush;

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (g_signal == 0) {
    if (exit_on_recovery && portal->state() == portal::PortalState::kRecovered) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  service.stop();
  driver.stop();
  if (auto pw = portal->recovered()) std::cout << "recovered " << *pw << "\n";
  return 0;
}

int cmd_report(const std::string& log_path, bool json) {
  std::ifstream in(log_path);
  if (!in) throw std::runtime_error("cannot open " + log_path);
  const auto report = scenario::build_run_report(medium::read_jsonl(in));
  if (json) {
    std::cout << scenario::to_json(report).dump(2) << "\n";
  } else {
    std::cout << scenario::to_text(report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator of attacks on WPA2/WPA3 transition networks"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  std::optional<std::uint64_t> seed;
  bool run_json = false;
  auto* run = app.add_subcommand("run", "Run a scenario and write its outputs");
  run->add_option("scenario", scenario_path, "Scenario file (.conf or .json)")->required();
  run->add_option("--out", out_dir, "Directory for every output not set in the scenario");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_flag("--json", run_json, "Print the report as JSON");

  std::string capture_path, ssid, hs_out = "handshake.wshs";
  auto* extract = app.add_subcommand("extract", "Pull an EAPOL msg1/msg2 pair from a capture");
  extract->add_option("capture", capture_path)->required();
  extract->add_option("--ssid", ssid, "Network name")->required();
  extract->add_option("-o,--output", hs_out, "Handshake file to write");

  std::string hs_path, candidate;
  auto* verify = app.add_subcommand("verify", "Check one passphrase against a handshake");
  verify->add_option("handshake", hs_path)->required();
  verify->add_option("candidate", candidate)->required();

  std::string wordlist;
  auto* crack = app.add_subcommand("crack", "Dictionary attack on a handshake");
  crack->add_option("handshake", hs_path)->required();
  crack->add_option("wordlist", wordlist)->required();

  std::string bind = "127.0.0.1:8080", lang = "english", tmpl = "generic", pw_log;
  bool exit_on_recovery = false;
  auto* serve = app.add_subcommand("serve-portal", "Serve the captive portal over HTTP");
  serve->add_option("handshake", hs_path)->required();
  serve->add_option("--bind", bind, "host:port")->capture_default_str();
  serve->add_option("--lang", lang, "Portal language")->capture_default_str();
  serve->add_option("--template", tmpl, "Portal template")->capture_default_str();
  serve->add_option("--password-log", pw_log, "Password log path");
  serve->add_flag("--exit-on-recovery", exit_on_recovery, "Stop once a passphrase verifies");

  std::string log_path;
  bool report_json = false;
  auto* report = app.add_subcommand("report", "Rebuild the run report from an event log");
  report->add_option("event_log", log_path)->required();
  report->add_flag("--json", report_json, "Print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(scenario_path, out_dir, seed, run_json);
    if (*extract) return cmd_extract(capture_path, ssid, hs_out);
    if (*verify) return cmd_verify(hs_path, candidate);
    if (*crack) return cmd_crack(hs_path, wordlist);
    if (*serve) return cmd_serve(hs_path, bind, lang, tmpl, pw_log, exit_on_recovery);
    if (*report) return cmd_report(log_path, report_json);
  } catch (const wsim::scenario::ScenarioError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

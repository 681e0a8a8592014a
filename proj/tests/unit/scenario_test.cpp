#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wsim/medium/events.hpp"
#include "wsim/scenario/runner.hpp"

namespace wsim::scenario {
namespace {

const std::filesystem::path kScenarios = WSIM_SCENARIO_DIR;

ScenarioConfig bundled(const std::string& name) { return load_scenario(kScenarios / name); }

std::vector<std::string> errors_of(std::string_view text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.errors();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& errs, std::string_view needle) {
  return std::any_of(errs.begin(), errs.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

const char* const kMinimal = R"(
[scenario]
seed = 1
duration = 3000

[ap a]
ssid = Net
bssid = 02:00:00:00:AA:01
mode = transition
passphrase = 12345678

[client c]
mac = 02:00:00:00:00:01
capability = wpa2_only
ssid = Net
passphrase = 12345678
)";

TEST(ScenarioParse, LabSetupMatchesParameters) {
  const auto cfg = bundled("paper_experiment.conf");
  ASSERT_EQ(cfg.aps.size(), 1u);
  const auto& ap = cfg.aps[0].config;
  EXPECT_EQ(ap.ssid.str(), "WPA3OpenWrt");
  EXPECT_EQ(ap.bssid, MacAddr::parse("B8:27:EB:6C:61:7A"));
  EXPECT_EQ(ap.channel, 11);
  EXPECT_EQ(ap.mode, stations::ApMode::kTransition);
  EXPECT_EQ(ap.passphrase->text(), "12345678");
  ASSERT_TRUE(cfg.attack);
  EXPECT_EQ(cfg.attack->target_bssid, ap.bssid);
  EXPECT_EQ(cfg.attack->target_ssid, ap.ssid);
  ASSERT_EQ(cfg.clients.size(), 1u);
  ASSERT_TRUE(cfg.clients[0].victim);
  EXPECT_EQ(cfg.clients[0].victim->engagement, portal::Engagement::kVeryActive);
}

TEST(ScenarioParse, JsonMirrorIsEquivalent) {
  const auto a = bundled("paper_experiment.conf");
  const auto b = bundled("paper_experiment.json");
  EXPECT_EQ(serialize_log(run_scenario(a).records), serialize_log(run_scenario(b).records));
}

TEST(ScenarioParse, AllBundledScenariosParse) {
  for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
    EXPECT_NO_THROW(load_scenario(entry.path())) << entry.path();
  }
}

TEST(ScenarioParse, ClientGroupsExpand) {
  const auto cfg = bundled("commit_flood.conf");
  ASSERT_EQ(cfg.clients.size(), 24u);
  EXPECT_EQ(cfg.clients[0].name, "phone.1");
  EXPECT_EQ(cfg.clients[23].config.mac, MacAddr::parse("02:00:00:00:01:18"));
  EXPECT_EQ(cfg.clients[1].config.start_tick, 2700u);
}

TEST(ScenarioParse, EmptyFileIsAnError) {
  EXPECT_THROW(parse_scenario_text(""), ScenarioError);
  EXPECT_THROW(parse_scenario_text("  \n# only a comment\n"), ScenarioError);
}

TEST(ScenarioParse, DuplicateMacsAllReported) {
  std::string text = kMinimal;
  text += "\n[client d]\nmac = 02:00:00:00:00:01\ncapability = wpa2_only\nssid = Net\n";
  text += "\n[client e]\nmac = 02:00:00:00:AA:01\ncapability = wpa2_only\nssid = Net\n";
  const auto errs = errors_of(text);
  EXPECT_TRUE(any_contains(errs, "client d: MAC 02:00:00:00:00:01"));
  EXPECT_TRUE(any_contains(errs, "client e: MAC 02:00:00:00:AA:01"));
}

TEST(ScenarioParse, EveryErrorCollectedWithLines) {
  const auto errs = errors_of(R"([scenario]
seed = x
duration = 10
[ap a]
ssid = Net
bssid = nope
channel = 15
mode = transition
passphrase = short
colour = blue
garbage line
)");
  EXPECT_TRUE(any_contains(errs, "line 2: [scenario] seed"));
  EXPECT_TRUE(any_contains(errs, "line 6: [ap a] bssid"));
  EXPECT_TRUE(any_contains(errs, "line 7: [ap a] channel: channel 15 outside 1..14"));
  EXPECT_TRUE(any_contains(errs, "line 9: [ap a] passphrase"));
  EXPECT_TRUE(any_contains(errs, "line 10: [ap a] colour: unknown key"));
  EXPECT_TRUE(any_contains(errs, "line 11: expected key = value"));
  EXPECT_GE(errs.size(), 6u);
}

TEST(ScenarioParse, AttackValidation) {
  std::string text = kMinimal;
  text += "\n[attack]\nrate = 0\nlanguage = klingon\nstrategy = jam\n";
  const auto errs = errors_of(text);
  EXPECT_TRUE(any_contains(errs, "language"));
  EXPECT_TRUE(any_contains(errs, "strategy: unknown value 'jam'"));
  EXPECT_TRUE(any_contains(errs, "rate_per_sec must be at least 1"));
}

TEST(ScenarioParse, SeedEnvironmentOverride) {
  auto cfg = parse_scenario_text(kMinimal);
  ::setenv("WSIM_SEED", "424242", 1);
  apply_env_overrides(cfg);
  EXPECT_EQ(cfg.seed, 424242u);
  ::setenv("WSIM_SEED", "abc", 1);
  EXPECT_THROW(apply_env_overrides(cfg), ScenarioError);
  ::unsetenv("WSIM_SEED");
  apply_env_overrides(cfg);
  EXPECT_EQ(cfg.seed, 424242u);
}

TEST(ScenarioRun, LogRebuildsTheOnlineReport) {
  for (const char* name : {"paper_experiment.conf", "commit_flood.conf", "bad_token_race.conf"}) {
    const auto res = run_scenario(bundled(name));
    std::istringstream in(serialize_log(res.records));
    EXPECT_EQ(build_run_report(medium::read_jsonl(in)), res.report) << name;
  }
}

TEST(ScenarioRun, CrackElapsedIsTheOnlyOnlineOnlyField) {
  auto cfg = bundled("paper_experiment.conf");
  cfg.crack = CrackSpec{std::filesystem::path(WSIM_FIXTURE_DIR) / "tiny_wordlist.txt"};
  const auto res = run_scenario(cfg);
  ASSERT_TRUE(res.report.crack);
  EXPECT_TRUE(res.report.crack->found);
  EXPECT_EQ(res.report.crack->candidates_tried, 2u);
  ASSERT_TRUE(res.report.crack->elapsed_seconds);
  std::istringstream in(serialize_log(res.records));
  auto rebuilt = build_run_report(medium::read_jsonl(in));
  EXPECT_FALSE(rebuilt.crack->elapsed_seconds);
  rebuilt.crack->elapsed_seconds = res.report.crack->elapsed_seconds;
  EXPECT_EQ(rebuilt, res.report);
}

TEST(ScenarioRun, NotActiveVictimsYieldNoPassword) {
  auto cfg = bundled("paper_experiment.conf");
  cfg.clients[0].victim = portal::default_profile(portal::Engagement::kNotActive);
  const auto res = run_scenario(cfg);
  EXPECT_TRUE(res.report.time_to_handshake);
  EXPECT_FALSE(res.report.time_to_password);
  EXPECT_TRUE(res.recovered.empty());
}

TEST(ScenarioRun, OutputsWritten) {
  auto cfg = bundled("paper_experiment.conf");
  const auto dir = std::filesystem::temp_directory_path() /
                   ("wsim_run_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  cfg.outputs.event_log = dir / "events.jsonl";
  cfg.outputs.capture = dir / "capture.wsim";
  cfg.outputs.report = dir / "report.json";
  cfg.outputs.report_text = dir / "report.txt";
  cfg.outputs.handshake = dir / "hs.wshs";
  cfg.attack->password_log_path = dir / "pw.txt";
  const auto res = run_scenario(cfg);
  for (const auto& p : {cfg.outputs.event_log, cfg.outputs.capture, cfg.outputs.report,
                        cfg.outputs.report_text, cfg.outputs.handshake}) {
    EXPECT_TRUE(std::filesystem::exists(p)) << p;
  }
  EXPECT_EQ(attacks::load_handshake(cfg.outputs.handshake), *res.handshake);
  const auto reread = frames::read_capture(cfg.outputs.capture);
  EXPECT_EQ(reread.capture, res.capture);
  EXPECT_EQ(attacks::extract_handshake(reread.capture, "WPA3OpenWrt"),
            attacks::extract_handshake(frames::read_capture(cfg.outputs.capture).capture,
                                       "WPA3OpenWrt"));
  std::ifstream pw(dir / "pw.txt");
  std::string line;
  std::getline(pw, line);
  EXPECT_NE(line.find("\tWPA3OpenWrt\t12345678"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(ScenarioRun, CapableClientsConnectWithinBound) {
  auto cfg = parse_scenario_text(kMinimal);
  cfg.connect_bound = 2000;
  for (int i = 0; i < 6; ++i) {
    ClientSpec c = cfg.clients[0];
    c.name = "extra" + std::to_string(i);
    c.config.mac = MacAddr::parse("02:00:00:00:10:00").offset(i);
    c.config.capability =
        i % 2 ? stations::ClientCapability::kWpa3Capable : stations::ClientCapability::kWpa2Only;
    cfg.clients.push_back(c);
  }
  for (auto mode : {stations::ApMode::kTransition, stations::ApMode::kWpa2Only}) {
    cfg.aps[0].config.mode = mode;
    const auto res = run_scenario(cfg);
    for (const auto& c : res.report.clients) {
      ASSERT_TRUE(c.first_connected) << c.name;
      EXPECT_LT(*c.first_connected, *cfg.connect_bound) << c.name;
    }
  }
}

TEST(ScenarioRun, SnifferSeesDowngradedHandshakeWithoutAttack) {
  auto cfg = parse_scenario_text(kMinimal);
  cfg.sniffer_channels = {11};
  const auto res = run_scenario(cfg);
  ASSERT_TRUE(res.handshake);
  EXPECT_EQ(res.handshake->sa, MacAddr::parse("02:00:00:00:00:01"));
  EXPECT_TRUE(attacks::verify_candidate(*res.handshake, "12345678").verified());
}

TEST(ScenarioRun, RaceOutcomeIndependentOfPmf) {
  auto cfg = bundled("bad_token_race.conf");
  const auto a = run_scenario(cfg).report;
  cfg.aps[0].config.pmf = frames::PmfPolicy::kRequired;
  const auto b = run_scenario(cfg).report;
  EXPECT_EQ(a.attack.sae.succeeded, 0u);
  EXPECT_EQ(b.attack.sae.succeeded, 0u);
  EXPECT_EQ(a.attack.sae.unspecified_failure, a.attack.sae.failed);
  EXPECT_EQ(b.attack.sae.unspecified_failure, b.attack.sae.failed);
}

TEST(ScenarioRun, RaceWinnerStableAcrossRuns) {
  const auto cfg = bundled("bad_token_race.conf");
  EXPECT_EQ(serialize_log(run_scenario(cfg).records), serialize_log(run_scenario(cfg).records));
}

TEST(ScenarioRun, NoFloodNoOverload) {
  auto cfg = bundled("commit_flood.conf");
  cfg.attack.reset();
  const auto r = run_scenario(cfg).report;
  EXPECT_EQ(r.attack.strategy, "none");
  EXPECT_EQ(r.attack.overloaded, 0u);
  EXPECT_EQ(r.attack.sae.succeeded, 24u);
}

}  // namespace
}  // namespace wsim::scenario

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "httplib.h"
#include "json.hpp"
#include "support/world.hpp"
#include "wsim/attacks/evil_twin.hpp"
#include "wsim/portal/http_service.hpp"
#include "wsim/portal/victim.hpp"

namespace wsim::portal {
namespace {

using medium::EventKind;
using stations::ApMode;
using stations::ClientCapability;

attacks::HandshakeCapture fixture_handshake() {
  static const attacks::HandshakeCapture hs = [] {
    medium::Engine e(1);
    auto& rec = e.emplace<test::Recorder>();
    e.emplace<stations::ApActor>("ap", test::ap_config(ApMode::kTransition), e.make_rng("ap"));
    e.emplace<stations::ClientActor>(
        "sta", test::client_config(ClientCapability::kWpa2Only), e.make_rng("sta"));
    e.run_until(2000);
    return *attacks::extract_handshake(rec.records, test::kSsid);
  }();
  return hs;
}

PortalConfig cfg(std::string language, std::string tmpl = "generic") {
  PortalConfig c;
  c.language = std::move(language);
  c.template_id = std::move(tmpl);
  return c;
}

std::filesystem::path temp_path(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("wsim_" + tag + "_" + std::to_string(::getpid()) + ".txt");
}

std::vector<std::string> file_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Language, AllTablesComplete) {
  ASSERT_EQ(kLanguages.size(), 12u);
  for (auto lang : kLanguages) {
    const auto& t = language_table(lang);
    EXPECT_TRUE(t.missing_keys().empty()) << lang;
    for (const auto& [k, v] : t.entries()) EXPECT_FALSE(v.empty()) << lang << "." << k;
    EXPECT_NE(t.get("intro").find("{essid}"), std::string::npos) << lang;
  }
  EXPECT_EQ(language_table("arabic").get("dir"), "rtl");
  EXPECT_THROW(language_table("klingon"), PortalError);
}

TEST(Language, ParseErrorsCarryLineNumbers) {
  try {
    parse_string_table("x", "# c\nkey=value\nbroken\n");
    FAIL();
  } catch (const PortalError& e) {
    EXPECT_NE(std::string(e.what()).find("x:3"), std::string::npos);
  }
}

TEST(PortalPages, EnglishFormUsesTable) {
  Portal p({}, fixture_handshake(), {});
  const auto r = p.render("/");
  EXPECT_EQ(r.status, 200);
  const auto& t = language_table("english");
  EXPECT_NE(r.body.find(t.get("password_label")), std::string::npos);
  EXPECT_NE(r.body.find(t.get("submit")), std::string::npos);
  EXPECT_NE(r.body.find("WPA3OpenWrt"), std::string::npos);
  EXPECT_NE(r.body.find("name=\"password\""), std::string::npos);
  EXPECT_EQ(r.body.find("{{"), std::string::npos);
}

TEST(PortalPages, SpanishAndCaptiveRedirect) {
  Portal p(cfg("spanish"), fixture_handshake(), {});
  EXPECT_NE(p.render("/").body.find("Contraseña de la red"), std::string::npos);
  const auto r = p.render("/generate_204");
  EXPECT_EQ(r.status, 302);
  EXPECT_EQ(r.location, "/");
}

TEST(PortalPages, UnknownTemplateFailsAtConstruction) {
  EXPECT_THROW(Portal(cfg("english", "router_brand_x"), fixture_handshake(), {}), PortalError);
  EXPECT_THROW(Portal(cfg("elvish"), fixture_handshake(), {}), PortalError);
}

TEST(PortalSubmit, OutcomesAndLog) {
  const auto path = temp_path("pwlog");
  std::filesystem::remove(path);
  Portal p({}, fixture_handshake(), path, 100);
  int signals = 0;
  p.on_recovered([&](const std::string& pw, Tick t) {
    ++signals;
    EXPECT_EQ(pw, "12345678");
    EXPECT_EQ(t, 500u);
  });

  const auto wrong = p.handle_submit("letmein99", 200);
  EXPECT_FALSE(wrong.accepted);
  EXPECT_NE(wrong.response.body.find(p.strings().get("error_wrong")), std::string::npos);
  const auto short_pw = p.handle_submit("short", 300);
  EXPECT_FALSE(short_pw.accepted);
  EXPECT_NE(short_pw.response.body.find(p.strings().get("error_length")), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path));
  EXPECT_EQ(p.state(), PortalState::kAwaiting);
  EXPECT_EQ(p.since_tick(), 100u);

  const auto ok = p.handle_submit("12345678", 500);
  EXPECT_TRUE(ok.accepted);
  EXPECT_NE(ok.response.body.find("id=\"success\""), std::string::npos);
  EXPECT_EQ(p.state(), PortalState::kRecovered);
  EXPECT_EQ(p.since_tick(), 500u);
  EXPECT_EQ(signals, 1);
  ASSERT_EQ(file_lines(path), (std::vector<std::string>{"500\tWPA3OpenWrt\t12345678"}));

  p.handle_submit("12345678", 900);
  EXPECT_EQ(signals, 1);
  EXPECT_EQ(file_lines(path).size(), 2u);
  EXPECT_EQ(p.log_lines().size(), 2u);
  std::filesystem::remove(path);
}

TEST(PortalSubmit, AcceptsExactlyWhenVerified) {
  Portal p({}, fixture_handshake(), {});
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    std::string c = with_typo(test::kPass, rng);
    if (i % 3 == 0) c.resize(rng.uniform(8));
    const auto out = p.handle_submit(c, static_cast<Tick>(i));
    EXPECT_EQ(out.accepted, attacks::verify_candidate(fixture_handshake(), c).verified());
    EXPECT_FALSE(out.accepted);
  }
  EXPECT_TRUE(p.log_lines().empty());
}

TEST(Victim, ProfileDefaults) {
  for (auto e : {Engagement::kVeryActive, Engagement::kMildActive, Engagement::kNotActive}) {
    EXPECT_NO_THROW(validate(default_profile(e)));
    EXPECT_EQ(engagement_from_string(to_string(e)), e);
  }
  auto bad = default_profile(Engagement::kNotActive);
  bad.submit_probability = 0.2;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = default_profile(Engagement::kMildActive);
  bad.typo_probability = 1.5;
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

TEST(Victim, VeryActiveSubmitsTruePassphraseOnFirstPrompt) {
  Rng rng(1);
  VictimState s{"12345678", 0, false};
  const auto a = step_victim(default_profile(Engagement::kVeryActive), s, rng, 1000);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->candidate, "12345678");
  EXPECT_FALSE(a->typo);
  EXPECT_GE(a->at, 4000u);
  EXPECT_LE(a->at, 9000u);
}

TEST(Victim, NotActiveNeverSubmits) {
  Rng rng(2);
  VictimState s{"12345678", 0, false};
  const auto p = default_profile(Engagement::kNotActive);
  for (Tick t = 0; t < 10'000'000; t += 1000) EXPECT_FALSE(step_victim(p, s, rng, t));
}

TEST(Victim, MildActiveIsSeedDeterministic) {
  auto first_submission = [](std::uint64_t seed) {
    Rng rng(seed);
    VictimState s{"12345678", 0, false};
    const auto p = default_profile(Engagement::kMildActive);
    for (Tick t = 0;; t += 1000) {
      if (auto a = step_victim(p, s, rng, t)) return *a;
    }
  };
  const auto a = first_submission(5);
  const auto b = first_submission(5);
  EXPECT_EQ(a.at, b.at);
  EXPECT_EQ(a.candidate, b.candidate);
}

TEST(Victim, TypoChangesExactlyOneCharacter) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::string t = with_typo("12345678", rng);
    ASSERT_EQ(t.size(), 8u);
    int diff = 0;
    for (std::size_t k = 0; k < 8; ++k) diff += t[k] != "12345678"[k];
    EXPECT_EQ(diff, 1);
  }
}

struct Pipeline {
  explicit Pipeline(bool spoof, Engagement engagement = Engagement::kVeryActive,
                    frames::PmfPolicy pmf = frames::PmfPolicy::kDisabled)
      : engine(7), portals(std::make_shared<PortalDirectory>()) {
    engine.emplace<stations::ApActor>("ap", test::ap_config(ApMode::kTransition, pmf),
                                      engine.make_rng("ap"));
    sta = &engine.emplace<stations::ClientActor>(
        "sta", test::client_config(ClientCapability::kWpa2Only), engine.make_rng("sta"));
    victim = &engine.emplace<VictimActor>("sta.victim", "sta", default_profile(engagement),
                                          test::kPass, portals, engine.make_rng("sta.victim"));
    attacks::AttackPlan plan;
    plan.target_bssid = test::kApMac;
    plan.target_ssid = frames::Ssid(test::kSsid);
    plan.spoof_mac = spoof;
    plan.start_tick = 3000;
    attacker = &engine.emplace<attacks::AttackController>("attacker", plan, portals);
  }

  medium::Engine engine;
  std::shared_ptr<PortalDirectory> portals;
  stations::ClientActor* sta = nullptr;
  VictimActor* victim = nullptr;
  attacks::AttackController* attacker = nullptr;
};

TEST(EvilTwin, FullPipelineRecoversPassphrase) {
  for (bool spoof : {true, false}) {
    Pipeline p(spoof);
    p.engine.run_until(120000);
    ASSERT_EQ(p.attacker->phase(), attacks::AttackPhase::kClosed) << spoof;
    ASSERT_TRUE(p.attacker->handshake());
    EXPECT_EQ(p.attacker->handshake()->sa, MacAddr::local_from_bits(1));
    EXPECT_EQ(*p.attacker->portal()->recovered(), test::kPass);
    EXPECT_EQ(test::count_events(p.engine, EventKind::kVerified), 1u);
    EXPECT_EQ(test::count_events(p.engine, EventKind::kAttackClosed), 1u);
    const auto spawned = test::first_event(p.engine, EventKind::kEvilTwinSpawned);
    ASSERT_TRUE(spawned);
    EXPECT_EQ(*spawned->bssid == test::kApMac, spoof);
    EXPECT_TRUE(p.portals->empty());
    EXPECT_EQ(p.engine.find("attacker.rogue"), nullptr);
    EXPECT_EQ(p.engine.find("attacker.dos"), nullptr);
    EXPECT_TRUE(p.sta->client().connected());
    EXPECT_EQ(p.sta->client().current()->key.akms, (frames::AkmSet{frames::Akm::kPsk, frames::Akm::kSae}));
  }
}

TEST(EvilTwin, NotActiveVictimNeverRecovers) {
  Pipeline p(true, Engagement::kNotActive);
  p.engine.run_until(120000);
  EXPECT_EQ(p.attacker->phase(), attacks::AttackPhase::kPortal);
  EXPECT_GE(test::count_events(p.engine, EventKind::kPageServed), 1u);
  EXPECT_EQ(test::count_events(p.engine, EventKind::kSubmitted), 0u);
}

TEST(EvilTwin, RogueConfigRejectsForeignHandshake) {
  attacks::AttackPlan plan;
  plan.target_bssid = test::kApMac;
  plan.target_ssid = frames::Ssid("Other");
  Rng rng(1);
  EXPECT_THROW(attacks::rogue_config(plan, fixture_handshake(), rng), std::invalid_argument);
  plan.target_ssid = frames::Ssid(test::kSsid);
  EXPECT_EQ(attacks::rogue_config(plan, fixture_handshake(), rng).bssid, test::kApMac);
  plan.spoof_mac = false;
  const auto c = attacks::rogue_config(plan, fixture_handshake(), rng);
  EXPECT_NE(c.bssid, test::kApMac);
  EXPECT_EQ(c.mode, ApMode::kOpen);
}

TEST(EvilTwin, ControllerFailsFastOnBadPortalConfig) {
  attacks::AttackPlan plan;
  plan.target_bssid = test::kApMac;
  plan.target_ssid = frames::Ssid(test::kSsid);
  plan.portal_template = "missing";
  EXPECT_THROW(attacks::AttackController("a", plan, std::make_shared<PortalDirectory>()),
               PortalError);
}

TEST(HttpService, EndpointsDriveThePortal) {
  medium::Engine engine(1);
  auto portal = std::make_shared<Portal>(PortalConfig{}, fixture_handshake(), "");
  EngineDriver driver(engine, std::chrono::microseconds(200));
  driver.start();
  PortalService svc(portal, engine);
  const int port = svc.start({"127.0.0.1", 0});
  httplib::Client cli("127.0.0.1", port);

  auto root = cli.Get("/");
  ASSERT_TRUE(root);
  EXPECT_EQ(root->status, 200);
  EXPECT_NE(root->body.find("<form"), std::string::npos);

  auto other = cli.Get("/hotspot-detect.html");
  ASSERT_TRUE(other);
  EXPECT_EQ(other->status, 302);

  auto status = nlohmann::json::parse(cli.Get("/status")->body);
  EXPECT_EQ(status["state"], "awaiting");
  EXPECT_EQ(status["essid"], "WPA3OpenWrt");

  auto missing = cli.Post("/submit", httplib::Params{});
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 400);

  auto wrong = cli.Post("/submit", httplib::Params{{"password", "wrongpass1"}});
  ASSERT_TRUE(wrong);
  EXPECT_EQ(wrong->status, 200);
  EXPECT_NE(wrong->body.find(portal->strings().get("error_wrong")), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(cli.Get("/status")->body)["state"], "awaiting");

  auto ok = cli.Post("/submit", httplib::Params{{"password", "12345678"}});
  ASSERT_TRUE(ok);
  EXPECT_NE(ok->body.find("id=\"success\""), std::string::npos);
  status = nlohmann::json::parse(cli.Get("/status")->body);
  EXPECT_EQ(status["state"], "recovered");
  EXPECT_GT(status["since_tick"].get<Tick>(), 0u);

  svc.stop();
  driver.stop();
  EXPECT_EQ(test::count_events(engine, EventKind::kVerified), 1u);
  EXPECT_EQ(test::count_events(engine, EventKind::kRejected), 1u);
}

TEST(HttpService, BindAddressParsing) {
  const auto b = parse_bind_address("0.0.0.0:8080");
  EXPECT_EQ(b.host, "0.0.0.0");
  EXPECT_EQ(b.port, 8080);
  EXPECT_THROW(parse_bind_address("nohost"), std::invalid_argument);
  EXPECT_THROW(parse_bind_address("h:99999"), std::invalid_argument);
  EXPECT_THROW(parse_bind_address("h:x"), std::invalid_argument);
}

}  // namespace
}  // namespace wsim::portal

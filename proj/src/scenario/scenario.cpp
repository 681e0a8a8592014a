#include "wsim/scenario/scenario.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wsim/portal/language.hpp"

namespace wsim::scenario {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string kind;
  std::string name;
  std::size_t line = 0;
  std::map<std::string, Entry> entries;
};

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid scenario";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Section> parse_text(std::string_view text, std::vector<std::string>& errors) {
  std::vector<Section> sections;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "unterminated section header");
        continue;
      }
      const std::string_view inner = trim(line.substr(1, line.size() - 2));
      const auto sp = inner.find_first_of(" \t");
      Section s;
      s.kind = std::string(inner.substr(0, sp));
      if (sp != std::string_view::npos) s.name = std::string(trim(inner.substr(sp)));
      s.line = line_no;
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected key = value");
      continue;
    }
    if (sections.empty()) {
      errors.push_back(where + "key outside any section");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) {
      errors.push_back(where + "empty key");
      continue;
    }
    auto& entries = sections.back().entries;
    if (entries.contains(key)) {
      errors.push_back(where + "duplicate key '" + key + "'");
      continue;
    }
    entries[key] = {std::string(trim(line.substr(eq + 1))), line_no};
  }
  return sections;
}

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : ",") + scalar_text(x);
    return out;
  }
  if (v.is_null()) return "";
  return v.dump();
}

Section json_section(const nlohmann::json& obj, std::string kind, std::string name,
                     std::vector<std::string>& errors) {
  Section s;
  s.kind = std::move(kind);
  s.name = std::move(name);
  if (!obj.is_object()) {
    errors.push_back(s.kind + ": expected an object");
    return s;
  }
  for (const auto& [k, v] : obj.items()) {
    if (k == "name" && (s.kind == "ap" || s.kind == "client")) continue;
    if (v.is_object()) {
      errors.push_back(s.kind + "." + k + ": nested objects are not supported");
      continue;
    }
    s.entries[k] = {scalar_text(v), 0};
  }
  return s;
}

std::vector<Section> parse_json(std::string_view text, std::vector<std::string>& errors) {
  std::vector<Section> sections;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    errors.push_back(std::string("JSON: ") + e.what());
    return sections;
  }
  if (!doc.is_object()) {
    errors.push_back("JSON: top level must be an object");
    return sections;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "aps" || key == "clients") {
      const std::string kind = key == "aps" ? "ap" : "client";
      if (!value.is_array()) {
        errors.push_back(key + ": expected an array");
        continue;
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        const auto& item = value[i];
        std::string name = item.is_object() && item.contains("name") && item["name"].is_string()
                               ? item["name"].get<std::string>()
                               : kind + std::to_string(i + 1);
        sections.push_back(json_section(item, kind, std::move(name), errors));
      }
    } else {
      sections.push_back(json_section(value, key, {}, errors));
    }
  }
  return sections;
}

class Reader {
 public:
  Reader(Section& s, std::vector<std::string>& errors) : s_(s), errors_(errors) {}

  ~Reader() {
    for (const auto& [k, e] : s_.entries) {
      if (!used_.contains(k)) error(k, "unknown key");
    }
  }

  void error(const std::string& key, const std::string& msg) {
    const auto it = s_.entries.find(key);
    std::string where;
    if (it != s_.entries.end() && it->second.line > 0) {
      where = "line " + std::to_string(it->second.line) + ": ";
    } else if (s_.line > 0) {
      where = "line " + std::to_string(s_.line) + ": ";
    }
    std::string label = "[" + s_.kind + (s_.name.empty() ? "" : " " + s_.name) + "]";
    errors_.push_back(where + label + " " + key + ": " + msg);
  }

  std::optional<std::string> raw(const std::string& key, bool required = false) {
    used_.insert(key);
    const auto it = s_.entries.find(key);
    if (it == s_.entries.end()) {
      if (required) error(key, "required");
      return std::nullopt;
    }
    return it->second.value;
  }

  template <typename T>
  std::optional<T> number(const std::string& key, bool required = false) {
    const auto v = raw(key, required);
    if (!v) return std::nullopt;
    T out{};
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      error(key, "expected a number, got '" + *v + "'");
      return std::nullopt;
    }
    return out;
  }

  std::optional<double> real(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    try {
      std::size_t n = 0;
      const double d = std::stod(*v, &n);
      if (n == v->size()) return d;
    } catch (const std::exception&) {
    }
    error(key, "expected a number, got '" + *v + "'");
    return std::nullopt;
  }

  std::optional<bool> boolean(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    error(key, "expected true or false, got '" + *v + "'");
    return std::nullopt;
  }

  std::optional<MacAddr> mac(const std::string& key, bool required = false) {
    const auto v = raw(key, required);
    if (!v) return std::nullopt;
    auto m = MacAddr::try_parse(*v);
    if (!m) error(key, "bad MAC address '" + *v + "'");
    return m;
  }

  std::optional<std::uint8_t> channel(const std::string& key) {
    const auto v = number<unsigned>(key);
    if (!v) return std::nullopt;
    if (*v < 1 || *v > 14) {
      error(key, "channel " + std::to_string(*v) + " outside 1..14");
      return std::nullopt;
    }
    return static_cast<std::uint8_t>(*v);
  }

  std::optional<frames::Ssid> ssid(const std::string& key, bool required = false) {
    const auto v = raw(key, required);
    if (!v) return std::nullopt;
    if (v->size() > frames::Ssid::kMaxLength) {
      error(key, "SSID longer than 32 bytes");
      return std::nullopt;
    }
    return frames::Ssid(*v);
  }

  std::optional<crypto::Passphrase> passphrase(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    if (!crypto::Passphrase::valid_length(*v)) {
      error(key, "passphrase must be 8..63 bytes");
      return std::nullopt;
    }
    return crypto::Passphrase(*v);
  }

  template <typename E, typename F>
  std::optional<E> choice(const std::string& key, F parse, bool required = false) {
    const auto v = raw(key, required);
    if (!v) return std::nullopt;
    auto e = parse(*v);
    if (!e) error(key, "unknown value '" + *v + "'");
    return e;
  }

  std::filesystem::path path(const std::string& key, const std::filesystem::path& base) {
    const auto v = raw(key);
    if (!v || v->empty()) return {};
    std::filesystem::path p(*v);
    return p.is_relative() && !base.empty() ? base / p : p;
  }

 private:
  Section& s_;
  std::vector<std::string>& errors_;
  std::set<std::string> used_;
};

template <typename T>
void set_if(T& field, const std::optional<T>& v) {
  if (v) field = *v;
}

void read_scenario(Section& s, ScenarioConfig& cfg, std::vector<std::string>& errors) {
  Reader r(s, errors);
  set_if(cfg.name, r.raw("name"));
  set_if(cfg.seed, r.number<std::uint64_t>("seed", true));
  set_if(cfg.duration, r.number<Tick>("duration", true));
  if (auto loss = r.real("loss_rate")) {
    if (*loss < 0.0 || *loss > 1.0) {
      r.error("loss_rate", "must be in [0,1]");
    } else {
      cfg.loss_rate = *loss;
    }
  }
  if (auto bound = r.number<Tick>("connect_bound")) cfg.connect_bound = *bound;
  if (auto chans = r.raw("sniffer_channels")) {
    std::stringstream ss(*chans);
    for (std::string item; std::getline(ss, item, ',');) {
      const auto t = trim(item);
      unsigned c = 0;
      const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), c);
      if (ec != std::errc() || ptr != t.data() + t.size() || c < 1 || c > 14) {
        r.error("sniffer_channels", "bad channel '" + std::string(t) + "'");
      } else {
        cfg.sniffer_channels.push_back(static_cast<std::uint8_t>(c));
      }
    }
  }
}

void read_ap(Section& s, ScenarioConfig& cfg, std::vector<std::string>& errors) {
  Reader r(s, errors);
  ApSpec ap;
  ap.name = s.name.empty() ? "ap" + std::to_string(cfg.aps.size() + 1) : s.name;
  auto& c = ap.config;
  set_if(c.ssid, r.ssid("ssid", true));
  set_if(c.bssid, r.mac("bssid", true));
  set_if(c.channel, r.channel("channel"));
  set_if(c.mode, r.choice<stations::ApMode>("mode", stations::ap_mode_from_string, true));
  set_if(c.pmf, r.choice<frames::PmfPolicy>("pmf", frames::pmf_from_string));
  c.passphrase = r.passphrase("passphrase");
  if (c.mode != stations::ApMode::kOpen && !c.passphrase && r.raw("passphrase") == std::nullopt) {
    r.error("passphrase", "required for a secured AP");
  }
  set_if(c.work_budget_per_second, r.number<unsigned>("work_budget_per_second"));
  set_if(c.commit_cost, r.number<unsigned>("commit_cost"));
  set_if(c.anticlog_threshold, r.number<unsigned>("anticlog_threshold"));
  set_if(c.beacon_interval, r.number<Tick>("beacon_interval"));
  set_if(c.sae_session_timeout, r.number<Tick>("sae_session_timeout"));
  set_if(c.token_ttl, r.number<Tick>("token_ttl"));
  set_if(c.handshake_timeout, r.number<Tick>("handshake_timeout"));
  set_if(c.signal_percent, r.number<unsigned>("signal_percent"));
  if (c.beacon_interval == 0) r.error("beacon_interval", "must be positive");
  if (c.commit_cost == 0) r.error("commit_cost", "must be positive");
  cfg.aps.push_back(std::move(ap));
}

void read_client(Section& s, ScenarioConfig& cfg, std::vector<std::string>& errors) {
  Reader r(s, errors);
  ClientSpec spec;
  spec.name = s.name.empty() ? "sta" + std::to_string(cfg.clients.size() + 1) : s.name;
  auto& c = spec.config;
  set_if(c.mac, r.mac("mac", true));
  set_if(c.capability,
         r.choice<stations::ClientCapability>("capability", stations::capability_from_string, true));
  set_if(c.known_network.ssid, r.ssid("ssid", true));
  c.known_network.passphrase = r.passphrase("passphrase");
  set_if(c.auto_reconnect, r.boolean("auto_reconnect"));
  set_if(c.reconnect_backoff, r.number<Tick>("reconnect_backoff"));
  set_if(c.backoff_jitter, r.number<Tick>("backoff_jitter"));
  set_if(c.mfp_capable, r.boolean("mfp_capable"));
  set_if(c.start_tick, r.number<Tick>("start_tick"));
  set_if(c.scan_duration, r.number<Tick>("scan_duration"));
  set_if(c.attempt_timeout, r.number<Tick>("attempt_timeout"));
  set_if(c.max_failures, r.number<unsigned>("max_failures"));
  set_if(c.stable_after, r.number<Tick>("stable_after"));
  set_if(c.beacon_loss_timeout, r.number<Tick>("beacon_loss_timeout"));
  set_if(c.max_token_retries, r.number<unsigned>("max_token_retries"));
  set_if(c.channel, r.channel("channel"));
  const unsigned count = r.number<unsigned>("count").value_or(1);
  const Tick stagger = r.number<Tick>("start_stagger").value_or(0);
  if (count == 0) r.error("count", "must be at least 1");

  if (auto v = r.raw("victim"); v && *v != "none") {
    if (auto e = portal::engagement_from_string(*v)) {
      spec.victim = portal::default_profile(*e);
    } else {
      r.error("victim", "unknown value '" + *v + "'");
    }
  }
  if (spec.victim) {
    auto& p = *spec.victim;
    set_if(p.submit_probability, r.real("submit_probability"));
    set_if(p.typo_probability, r.real("typo_probability"));
    set_if(p.think_min, r.number<Tick>("think_min"));
    set_if(p.think_max, r.number<Tick>("think_max"));
    set_if(p.prompt_interval, r.number<Tick>("prompt_interval"));
    try {
      portal::validate(p);
    } catch (const std::invalid_argument& e) {
      r.error("victim", e.what());
    }
    if (!c.known_network.passphrase) r.error("victim", "a victim needs the client's passphrase");
  } else {
    for (const char* k :
         {"submit_probability", "typo_probability", "think_min", "think_max", "prompt_interval"}) {
      if (r.raw(k)) r.error(k, "only valid with a victim profile");
    }
  }

  for (unsigned i = 0; i < std::max(count, 1u); ++i) {
    ClientSpec one = spec;
    if (count > 1) one.name = spec.name + "." + std::to_string(i + 1);
    one.config.mac = spec.config.mac.offset(i);
    one.config.start_tick = spec.config.start_tick + i * stagger;
    cfg.clients.push_back(std::move(one));
  }
}

void read_attack(Section& s, ScenarioConfig& cfg, std::vector<std::string>& errors) {
  Reader r(s, errors);
  attacks::AttackPlan p;
  if (!cfg.aps.empty()) {
    p.target_bssid = cfg.aps.front().config.bssid;
    p.target_ssid = cfg.aps.front().config.ssid;
    p.channel = cfg.aps.front().config.channel;
  }
  set_if(p.target_bssid, r.mac("target_bssid", cfg.aps.empty()));
  set_if(p.target_ssid, r.ssid("target_ssid", cfg.aps.empty()));
  set_if(p.channel, r.channel("channel"));
  set_if(p.attacker_mac, r.mac("attacker_mac"));
  set_if(p.strategy, r.choice<attacks::DeauthStrategy>("strategy", attacks::strategy_from_string));
  set_if(p.rate_per_sec, r.number<unsigned>("rate"));
  set_if(p.spoof_mac, r.boolean("spoof_mac"));
  set_if(p.rogue_security,
         r.choice<attacks::RogueSecurity>("rogue_security", attacks::rogue_security_from_string));
  p.decoy_passphrase = r.passphrase("decoy_passphrase");
  set_if(p.portal_language, r.raw("language"));
  set_if(p.portal_template, r.raw("template"));
  set_if(p.start_tick, r.number<Tick>("start_tick"));
  set_if(p.stop_tick, r.number<Tick>("stop_tick"));
  set_if(p.evil_twin, r.boolean("evil_twin"));
  p.password_log_path = r.path("password_log", {});
  if (!portal::is_language(p.portal_language)) {
    r.error("language", "unknown portal language '" + p.portal_language + "'");
  }
  try {
    attacks::validate(p);
  } catch (const std::invalid_argument& e) {
    r.error("strategy", e.what());
  }
  cfg.attack = std::move(p);
}

void cross_check(ScenarioConfig& cfg, std::vector<std::string>& errors) {
  std::map<MacAddr, std::string> macs;
  std::set<std::string> names;
  auto claim = [&](const MacAddr& m, const std::string& who) {
    if (auto [it, fresh] = macs.emplace(m, who); !fresh) {
      errors.push_back(who + ": MAC " + m.to_string() + " already used by " + it->second);
    }
  };
  auto name = [&](const std::string& n) {
    if (!names.insert(n).second) errors.push_back("duplicate station name '" + n + "'");
  };
  for (const auto& ap : cfg.aps) {
    name(ap.name);
    claim(ap.config.bssid, "ap " + ap.name);
  }
  for (const auto& c : cfg.clients) {
    name(c.name);
    claim(c.config.mac, "client " + c.name);
  }
  if (cfg.attack) {
    const auto& p = *cfg.attack;
    if (macs.contains(p.attacker_mac)) {
      errors.push_back("attack: attacker_mac " + p.attacker_mac.to_string() + " already in use");
    }
  }
  if (cfg.aps.empty()) errors.push_back("scenario has no access point");
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

ScenarioConfig parse_scenario_text(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<std::string> errors;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ScenarioError({"empty scenario"});
  std::vector<Section> sections =
      text[first] == '{' ? parse_json(text, errors) : parse_text(text, errors);

  ScenarioConfig cfg;
  std::map<std::string, std::size_t> singletons;
  bool saw_scenario = false;
  for (auto& s : sections) {
    if (s.kind == "scenario" || s.kind == "attack" || s.kind == "crack" || s.kind == "outputs") {
      if (singletons[s.kind]++ > 0) {
        errors.push_back((s.line ? "line " + std::to_string(s.line) + ": " : "") + "duplicate [" +
                         s.kind + "] section");
        continue;
      }
    }
    if (s.kind == "scenario") {
      saw_scenario = true;
      read_scenario(s, cfg, errors);
    } else if (s.kind == "ap") {
      read_ap(s, cfg, errors);
    } else if (s.kind == "client") {
      read_client(s, cfg, errors);
    } else if (s.kind == "attack") {
      // Read after the APs so target fields can default to the first AP.
    } else if (s.kind == "crack") {
      Reader r(s, errors);
      CrackSpec c;
      c.wordlist = r.path("wordlist", base_dir);
      if (c.wordlist.empty()) r.error("wordlist", "required");
      cfg.crack = c;
    } else if (s.kind == "outputs") {
      Reader r(s, errors);
      cfg.outputs.event_log = r.path("event_log", {});
      cfg.outputs.capture = r.path("capture", {});
      cfg.outputs.report = r.path("report", {});
      cfg.outputs.report_text = r.path("report_text", {});
      cfg.outputs.password_log = r.path("password_log", {});
      cfg.outputs.handshake = r.path("handshake", {});
    } else {
      errors.push_back((s.line ? "line " + std::to_string(s.line) + ": " : "") +
                       "unknown section [" + s.kind + "]");
    }
  }
  for (auto& s : sections) {
    if (s.kind == "attack" && !cfg.attack) read_attack(s, cfg, errors);
  }
  if (!saw_scenario && !sections.empty()) errors.push_back("missing [scenario] section");
  cross_check(cfg, errors);
  if (cfg.attack && cfg.attack->password_log_path.empty()) {
    cfg.attack->password_log_path = cfg.outputs.password_log;
  }
  if (!errors.empty()) throw ScenarioError(std::move(errors));
  return cfg;
}

void apply_env_overrides(ScenarioConfig& cfg) {
  const char* env = std::getenv("WSIM_SEED");
  if (env == nullptr) return;
  const std::string_view v(env);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ScenarioError({"WSIM_SEED is not an unsigned integer: '" + std::string(v) + "'"});
  }
  cfg.seed = seed;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError({"cannot open " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  ScenarioConfig cfg = parse_scenario_text(ss.str(), path.parent_path());
  apply_env_overrides(cfg);
  return cfg;
}

}  // namespace wsim::scenario

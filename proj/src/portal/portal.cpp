#include "wsim/portal/portal.hpp"

#include <fstream>

#include "json.hpp"
#include "wsim/portal/assets.hpp"

namespace wsim::portal {

namespace {

std::string find_template(const std::string& id) {
  for (const auto& a : assets::templates()) {
    if (id == a.name) return a.content;
  }
  throw PortalError("unknown portal template '" + id + "'");
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

std::string_view to_string(PortalState s) {
  return s == PortalState::kRecovered ? "recovered" : "awaiting";
}

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

Portal::Portal(PortalConfig config, attacks::HandshakeCapture hs,
               std::filesystem::path password_log, Tick started)
    : config_(std::move(config)),
      hs_(std::move(hs)),
      log_path_(std::move(password_log)),
      strings_(&language_table(config_.language)),
      form_template_(find_template(config_.template_id)),
      success_template_(find_template(config_.template_id + "_success")),
      since_(started) {}

std::string Portal::fill(const std::string& tmpl, std::string_view message) const {
  std::string page = tmpl;
  nlohmann::json strings = nlohmann::json::object();
  for (const auto& [k, v] : strings_->entries()) {
    std::string value = v;
    replace_all(value, "{essid}", hs_.ssid);
    if (k == "success_body" && config_.success_message) value = *config_.success_message;
    strings[k] = value;
    replace_all(page, "{{" + k + "}}", html_escape(value));
  }
  strings["essid"] = hs_.ssid;
  std::string json = strings.dump();
  replace_all(json, "</", "<\\/");
  replace_all(page, "{{essid}}", html_escape(hs_.ssid));
  replace_all(page, "{{message}}", html_escape(message));
  replace_all(page, "{{strings_json}}", json);
  return page;
}

HttpResponse Portal::form_page(std::string_view message) const {
  HttpResponse r;
  r.body = fill(form_template_, message);
  return r;
}

HttpResponse Portal::success_page() const {
  HttpResponse r;
  r.body = fill(success_template_, {});
  return r;
}

HttpResponse Portal::render(std::string_view path) const {
  if (path != "/") {
    HttpResponse r;
    r.status = 302;
    r.location = "/";
    return r;
  }
  if (state() == PortalState::kRecovered) return success_page();
  return form_page();
}

SubmitOutcome Portal::handle_submit(std::string_view candidate, Tick now) {
  SubmitOutcome out;
  out.verification = attacks::verify_candidate(hs_, candidate);
  switch (out.verification.outcome) {
    case attacks::VerificationResult::Outcome::kVerified:
      break;
    case attacks::VerificationResult::Outcome::kRejected:
      out.response = form_page(strings_->get("error_wrong"));
      return out;
    case attacks::VerificationResult::Outcome::kIndeterminate:
      out.response = form_page(strings_->get("error_length"));
      return out;
  }

  out.accepted = true;
  out.response = success_page();
  const std::string line = std::to_string(now) + "\t" + hs_.ssid + "\t" + std::string(candidate);
  std::function<void(const std::string&, Tick)> cb;
  {
    std::lock_guard lock(mu_);
    log_lines_.push_back(line);
    if (!log_path_.empty()) {
      std::ofstream f(log_path_, std::ios::app);
      f << line << '\n';
      if (!f) throw PortalError("cannot append to " + log_path_.string());
    }
    if (state_ == PortalState::kAwaiting) {
      state_ = PortalState::kRecovered;
      since_ = now;
      recovered_ = std::string(candidate);
      cb = std::move(on_recovered_);
      on_recovered_ = nullptr;
    }
  }
  if (cb) cb(std::string(candidate), now);
  return out;
}

PortalState Portal::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

Tick Portal::since_tick() const {
  std::lock_guard lock(mu_);
  return since_;
}

std::optional<std::string> Portal::recovered() const {
  std::lock_guard lock(mu_);
  return recovered_;
}

std::vector<std::string> Portal::log_lines() const {
  std::lock_guard lock(mu_);
  return log_lines_;
}

void Portal::on_recovered(std::function<void(const std::string&, Tick)> cb) {
  std::lock_guard lock(mu_);
  on_recovered_ = std::move(cb);
}

std::string Portal::status_json() const {
  std::lock_guard lock(mu_);
  return nlohmann::json{{"state", to_string(state_)}, {"essid", hs_.ssid}, {"since_tick", since_}}
      .dump();
}

void PortalDirectory::add(const stations::NetworkKey& key, std::shared_ptr<Portal> portal) {
  portals_[key] = std::move(portal);
}

void PortalDirectory::remove(const stations::NetworkKey& key) { portals_.erase(key); }

std::shared_ptr<Portal> PortalDirectory::find(const stations::NetworkKey& key) const {
  const auto it = portals_.find(key);
  return it == portals_.end() ? nullptr : it->second;
}

}  // namespace wsim::portal

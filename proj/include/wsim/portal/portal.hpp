#pragma once

// Captive portal: renders the credential page and checks submissions
// against a captured handshake. Thread-safe; the HTTP service and the
// simulation loop may share one instance.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "wsim/attacks/handshake.hpp"
#include "wsim/portal/language.hpp"
#include "wsim/stations/client.hpp"

namespace wsim::portal {

struct PortalConfig {
  std::string language = "english";
  std::string template_id = "generic";
  std::string bind_address = "127.0.0.1:8080";
  /// Replaces the table's success_body when set.
  std::optional<std::string> success_message;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "text/html; charset=utf-8";
  std::string location;
  std::string body;
};

struct SubmitOutcome {
  bool accepted = false;
  attacks::VerificationResult verification;
  HttpResponse response;
};

enum class PortalState { kAwaiting, kRecovered };

std::string_view to_string(PortalState s);

std::string html_escape(std::string_view s);

class Portal {
 public:
  /// Fails fast with PortalError on an unknown language or template.
  /// An empty log path keeps recovered lines in memory only.
  Portal(PortalConfig config, attacks::HandshakeCapture hs, std::filesystem::path password_log,
         Tick started = 0);

  const PortalConfig& config() const { return config_; }
  const attacks::HandshakeCapture& handshake() const { return hs_; }
  const std::string& essid() const { return hs_.ssid; }
  const StringTable& strings() const { return *strings_; }

  /// Anything but "/" redirects to "/".
  HttpResponse render(std::string_view path) const;
  HttpResponse form_page(std::string_view message = {}) const;
  HttpResponse success_page() const;

  /// Accepts iff the candidate verifies against the handshake. An accepted
  /// submission appends `<tick>\t<ssid>\t<passphrase>` to the password log.
  SubmitOutcome handle_submit(std::string_view candidate, Tick now);

  PortalState state() const;
  /// Tick of the last state change.
  Tick since_tick() const;
  std::optional<std::string> recovered() const;
  std::vector<std::string> log_lines() const;

  /// Called once, on the first accepted submission, after the log write.
  void on_recovered(std::function<void(const std::string&, Tick)> cb);

  /// JSON body for GET /status.
  std::string status_json() const;

 private:
  std::string fill(const std::string& tmpl, std::string_view message) const;

  PortalConfig config_;
  attacks::HandshakeCapture hs_;
  std::filesystem::path log_path_;
  const StringTable* strings_;
  std::string form_template_;
  std::string success_template_;

  mutable std::mutex mu_;
  PortalState state_ = PortalState::kAwaiting;
  Tick since_ = 0;
  std::optional<std::string> recovered_;
  std::vector<std::string> log_lines_;
  std::function<void(const std::string&, Tick)> on_recovered_;
};

/// Portals reachable through rogue networks, keyed by the network a client
/// selected. Shared between the evil-twin controller and victims.
class PortalDirectory {
 public:
  void add(const stations::NetworkKey& key, std::shared_ptr<Portal> portal);
  void remove(const stations::NetworkKey& key);
  std::shared_ptr<Portal> find(const stations::NetworkKey& key) const;
  bool empty() const { return portals_.empty(); }

 private:
  std::map<stations::NetworkKey, std::shared_ptr<Portal>> portals_;
};

}  // namespace wsim::portal

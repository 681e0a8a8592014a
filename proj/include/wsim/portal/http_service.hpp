#pragma once

// HTTP front end for interactive mode. Submissions are posted into the
// engine's inbox and answered once the loop has processed them, so the
// password log and events stay ordered by tick.

#include <atomic>
#include <chrono>
#include <memory>
#include <thread>

#include "wsim/medium/engine.hpp"
#include "wsim/portal/portal.hpp"

namespace httplib {
class Server;
}

namespace wsim::portal {

struct BindAddress {
  std::string host;
  int port = 0;
};

/// "host:port"; throws std::invalid_argument.
BindAddress parse_bind_address(std::string_view s);

/// Runs an engine on a background thread, one tick per `tick` of wall time.
class EngineDriver {
 public:
  explicit EngineDriver(medium::Engine& engine,
                        std::chrono::microseconds tick = std::chrono::milliseconds(1));
  ~EngineDriver();

  void start();
  void stop();

 private:
  medium::Engine& engine_;
  std::chrono::microseconds tick_;
  std::atomic<bool> running_{false};
  std::thread thread_;
};

class PortalService {
 public:
  PortalService(std::shared_ptr<Portal> portal, medium::Engine& engine);
  ~PortalService();

  PortalService(const PortalService&) = delete;
  PortalService& operator=(const PortalService&) = delete;

  /// Binds and serves on a background thread; port 0 picks a free port.
  /// Returns the bound port. Throws PortalError when the bind fails.
  int start(const BindAddress& bind);
  void stop();

  /// Maximum wait for the loop to process a submission.
  std::chrono::milliseconds submit_timeout{10000};

 private:
  std::shared_ptr<Portal> portal_;
  medium::Engine& engine_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace wsim::portal

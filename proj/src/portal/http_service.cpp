#include "wsim/portal/http_service.hpp"

#include <charconv>
#include <future>

#include "httplib.h"

namespace wsim::portal {

namespace {

void apply(const HttpResponse& r, httplib::Response& res) {
  res.status = r.status;
  if (!r.location.empty()) res.set_header("Location", r.location);
  res.set_content(r.body, r.content_type);
}

medium::ProtocolEvent portal_event(Tick now, medium::EventKind kind, std::int64_t value = 0,
                                   std::string detail = {}) {
  medium::ProtocolEvent ev;
  ev.tick = now;
  ev.actor = "portal";
  ev.kind = kind;
  ev.value = value;
  ev.detail = std::move(detail);
  return ev;
}

}  // namespace

BindAddress parse_bind_address(std::string_view s) {
  const auto colon = s.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw std::invalid_argument("bind address must be host:port");
  }
  BindAddress b;
  b.host = std::string(s.substr(0, colon));
  const auto port = s.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), b.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || b.port < 0 || b.port > 65535) {
    throw std::invalid_argument("bad port in bind address '" + std::string(s) + "'");
  }
  return b;
}

EngineDriver::EngineDriver(medium::Engine& engine, std::chrono::microseconds tick)
    : engine_(engine), tick_(tick) {}

EngineDriver::~EngineDriver() { stop(); }

void EngineDriver::start() {
  if (running_.exchange(true)) return;
  thread_ = std::thread([this] {
    auto next = std::chrono::steady_clock::now();
    while (running_) {
      engine_.run_until(engine_.next_tick());
      next += tick_;
      std::this_thread::sleep_until(next);
    }
  });
}

void EngineDriver::stop() {
  running_ = false;
  if (thread_.joinable()) thread_.join();
}

PortalService::PortalService(std::shared_ptr<Portal> portal, medium::Engine& engine)
    : portal_(std::move(portal)), engine_(engine), server_(std::make_unique<httplib::Server>()) {
  server_->Get("/", [this](const httplib::Request&, httplib::Response& res) {
    apply(portal_->render("/"), res);
    engine_.post([](medium::Engine& e) {
      e.emit(portal_event(e.now(), medium::EventKind::kPageServed));
    });
  });
  server_->Get("/status", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(portal_->status_json(), "application/json");
  });
  server_->Post("/submit", [this](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("password")) {
      HttpResponse r = portal_->form_page(portal_->strings().get("error_length"));
      r.status = 400;
      apply(r, res);
      return;
    }
    const std::string candidate = req.get_param_value("password");
    auto done = std::make_shared<std::promise<SubmitOutcome>>();
    auto result = done->get_future();
    engine_.post([portal = portal_, candidate, done](medium::Engine& e) {
      try {
        const Tick now = e.now();
        e.emit(portal_event(now, medium::EventKind::kSubmitted,
                            static_cast<std::int64_t>(candidate.size())));
        SubmitOutcome out = portal->handle_submit(candidate, now);
        if (out.accepted) {
          e.emit(portal_event(now, medium::EventKind::kVerified));
          e.emit(portal_event(now, medium::EventKind::kFakeSuccessShown));
        } else {
          e.emit(portal_event(now, medium::EventKind::kRejected, 0,
                              std::string(attacks::to_string(out.verification.outcome))));
        }
        done->set_value(std::move(out));
      } catch (...) {
        done->set_exception(std::current_exception());
      }
    });
    if (result.wait_for(submit_timeout) != std::future_status::ready) {
      res.status = 503;
      res.set_content(portal_->strings().get("offline"), "text/plain; charset=utf-8");
      return;
    }
    try {
      apply(result.get().response, res);
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(e.what(), "text/plain; charset=utf-8");
    }
  });
  server_->Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    apply(portal_->render(req.path), res);
  });
}

PortalService::~PortalService() { stop(); }

int PortalService::start(const BindAddress& bind) {
  int port = bind.port;
  if (port == 0) {
    port = server_->bind_to_any_port(bind.host);
    if (port < 0) throw PortalError("cannot bind " + bind.host);
  } else if (!server_->bind_to_port(bind.host, port)) {
    throw PortalError("cannot bind " + bind.host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  return port;
}

void PortalService::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace wsim::portal

#include "ahpfse/service.hpp"

#include <httplib.h>

#include <atomic>

namespace ahpfse {

struct HttpFrontend::Impl {
  ScenarioService& service;
  httplib::Server server;
  std::atomic<bool> running{false};

  explicit Impl(ScenarioService& s) : service(s) {}
};

namespace {

void reply(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_content(r.text(), "application/json");
}

}  // namespace

HttpFrontend::HttpFrontend(ScenarioService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  auto& svc = impl_->service;

  srv.Get("/api/scenario", [&svc](const httplib::Request&, httplib::Response& res) { reply(res, svc.get_scenario()); });
  srv.Put(R"(/api/periods/([^/]+)/judgments/([^/]+)/([^/]+))",
          [&svc](const httplib::Request& req, httplib::Response& res) {
            reply(res, svc.put_judgment(req.matches[1].str(), req.matches[2].str(), req.matches[3].str(), req.body));
          });
  srv.Post(R"(/api/periods/([^/]+)/evaluate)", [&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.post_evaluate(req.matches[1].str()));
  });
  srv.Post("/api/whatif",
           [&svc](const httplib::Request& req, httplib::Response& res) { reply(res, svc.post_whatif(req.body)); });
  srv.Post("/api/undo",
           [&svc](const httplib::Request& req, httplib::Response& res) { reply(res, svc.post_undo(req.body)); });

  if (static_dir) srv.set_mount_point("/", static_dir->string());
}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::listen() {
  impl_->running = true;
  const bool ok = impl_->server.listen_after_bind();
  impl_->running = false;
  return ok;
}

void HttpFrontend::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpFrontend::running() const { return impl_->server.is_running(); }

}  // namespace ahpfse

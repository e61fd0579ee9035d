#include <atomic>
#include <mutex>

#include <httplib.h>

#include "promptrec/http_api.hpp"

namespace promptrec {
namespace {

std::mutex server_mu;
httplib::Server* active_server = nullptr;

void reply(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body.dump(), "application/json");
}

}  // namespace

bool run_server(RecommenderService& service, const std::string& host, int port,
                const std::function<void(int)>& on_listening) {
  HttpApi api(service);
  httplib::Server server;

  server.Post("/recommend", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, api.recommend(req.body));
  });
  server.Post("/ratings", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, api.rate(req.body));
  });
  server.Get("/prompts", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, api.prompts(req.has_param("q") ? req.get_param_value("q") : std::string()));
  });
  server.Get("/health", [&](const httplib::Request&, httplib::Response& res) {
    reply(res, api.health());
  });
  // Browser clients are served from another origin.
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) return false;

  {
    std::lock_guard lock(server_mu);
    active_server = &server;
  }
  if (on_listening) on_listening(bound);
  const bool ok = server.listen_after_bind();
  {
    std::lock_guard lock(server_mu);
    active_server = nullptr;
  }
  return ok;
}

void stop_server() {
  std::lock_guard lock(server_mu);
  if (active_server != nullptr) active_server->stop();
}

}  // namespace promptrec

#pragma once

#include <functional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "promptrec/service.hpp"

namespace promptrec {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// JSON endpoints of the recommendation service, independent of the socket
// layer:
//   POST /recommend {prompt, n?, threshold?}
//   POST /ratings   {context, target, rating}
//   GET  /prompts?q=
//   GET  /health
class HttpApi {
 public:
  explicit HttpApi(RecommenderService& service) : service_(service) {}

  ApiResponse recommend(std::string_view body) const;
  ApiResponse rate(std::string_view body);
  ApiResponse prompts(std::string_view filter) const;
  ApiResponse health() const;

 private:
  RecommenderService& service_;
};

nlohmann::json to_json(const MatchResult& match);
nlohmann::json to_json(const Recommendation& rec);
nlohmann::json to_json(const RecommendResponse& response);

// "host:port" from PROMPTREC_LISTEN overrides the configured address.
void apply_listen_override(ServiceConfig& config);

// Blocks serving HTTP until stop_server() is called from another thread or
// the process is signalled. Returns false if the address cannot be bound.
// `on_listening` receives the bound port (useful with port 0).
bool run_server(RecommenderService& service, const std::string& host, int port,
                const std::function<void(int)>& on_listening = {});
void stop_server();

}  // namespace promptrec

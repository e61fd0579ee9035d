#include "promptrec/http_api.hpp"

#include <cstdlib>

namespace promptrec {
namespace {

ApiResponse error(int status, std::string_view message) {
  return ApiResponse{status, {{"error", std::string(message)}}};
}

template <typename Fn>
ApiResponse guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ServiceNotReady& e) {
    return error(503, e.what());
  } catch (const InvalidArgument& e) {
    return error(400, e.what());
  } catch (const nlohmann::json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  } catch (const IoError& e) {
    return error(500, e.what());
  }
}

}  // namespace

nlohmann::json to_json(const MatchResult& match) {
  nlohmann::json j = {{"score", match.score}, {"method", std::string(to_string(match.method))}};
  if (match.matched) {
    j["matched"] = {{"id", match.matched->id}, {"text", match.matched->text}};
  } else {
    j["matched"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const Recommendation& rec) {
  return {{"id", rec.target},
          {"text", rec.text},
          {"predicted", rec.predicted},
          {"rank", rec.rank},
          {"provenance", std::string(to_string(rec.provenance))},
          {"neighbor_count", rec.neighbor_count}};
}

nlohmann::json to_json(const RecommendResponse& response) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& r : response.items) items.push_back(to_json(r));
  return {{"resolved_prompt", to_json(response.resolved_prompt)},
          {"items", std::move(items)},
          {"model_version", response.model_version}};
}

ApiResponse HttpApi::recommend(std::string_view body) const {
  return guarded([&] {
    const auto req = nlohmann::json::parse(body);
    if (!req.is_object() || !req.contains("prompt") || !req["prompt"].is_string()) {
      return error(400, "field 'prompt' (string) is required");
    }
    std::optional<std::size_t> n;
    if (req.contains("n") && !req["n"].is_null()) {
      if (!req["n"].is_number_integer() || req["n"].get<long long>() < 1) {
        return error(400, "field 'n' must be a positive integer");
      }
      n = req["n"].get<std::size_t>();
    }
    std::optional<double> threshold;
    if (req.contains("threshold") && !req["threshold"].is_null()) {
      threshold = req.at("threshold").get<double>();
    }
    auto response = service_.recommend(req["prompt"].get<std::string>(), n, threshold);
    return ApiResponse{200, to_json(response)};
  });
}

ApiResponse HttpApi::rate(std::string_view body) {
  return guarded([&] {
    const auto req = nlohmann::json::parse(body);
    if (!req.is_object()) return error(400, "request body must be a JSON object");
    const auto context = req.at("context").get<std::string>();
    const auto target = req.at("target").get<std::string>();
    const auto rating = req.at("rating").get<double>();
    auto ack = service_.rate(context, target, rating);
    return ApiResponse{200,
                       {{"model_version", ack.model_version},
                        {"context_id", ack.context},
                        {"target_id", ack.target},
                        {"added", ack.added}}};
  });
}

ApiResponse HttpApi::prompts(std::string_view filter) const {
  return guarded([&] {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : service_.prompts(filter)) out.push_back({{"id", p.id}, {"text", p.text}});
    return ApiResponse{200, std::move(out)};
  });
}

ApiResponse HttpApi::health() const {
  const Health h = service_.health();
  return ApiResponse{h.ready ? 200 : 503,
                     {{"status", h.ready ? "ok" : "loading"},
                      {"model_version", h.model_version},
                      {"n_prompts", h.n_prompts},
                      {"n_ratings", h.n_ratings}}};
}

void apply_listen_override(ServiceConfig& config) {
  const char* env = std::getenv("PROMPTREC_LISTEN");
  if (env == nullptr || *env == '\0') return;
  std::string_view value(env);
  const auto colon = value.rfind(':');
  if (colon == std::string_view::npos) throw InvalidArgument("PROMPTREC_LISTEN must be host:port");
  std::string port(value.substr(colon + 1));
  char* end = nullptr;
  const long p = std::strtol(port.c_str(), &end, 10);
  if (port.empty() || *end != '\0' || p < 0 || p > 65535) {
    throw InvalidArgument("PROMPTREC_LISTEN has an invalid port");
  }
  config.host = std::string(value.substr(0, colon));
  config.port = static_cast<int>(p);
}

}  // namespace promptrec

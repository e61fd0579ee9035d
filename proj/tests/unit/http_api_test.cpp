#include "promptrec/http_api.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <future>
#include <thread>

#include <httplib.h>

#include "test_data.hpp"

namespace promptrec {
namespace {

using nlohmann::json;

class HttpApiTest : public ::testing::Test {
 protected:
  void SetUp() override { service.load(testdata::table1()); }

  RecommenderService service{ServiceConfig{}};
  HttpApi api{service};
};

TEST_F(HttpApiTest, RecommendKnownPrompt) {
  auto r = api.recommend(R"({"prompt": "Design a recommendation system that avoids bias.", "n": 3})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["resolved_prompt"]["method"], "exact");
  EXPECT_EQ(r.body["resolved_prompt"]["matched"]["text"],
            "Design a recommendation system that avoids bias.");
  EXPECT_EQ(r.body["model_version"], service.health().model_version);
  const auto& items = r.body["items"];
  ASSERT_TRUE(items.is_array());
  EXPECT_LE(items.size(), 3u);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(items[i]["rank"], i + 1);
    for (const char* key : {"id", "text", "predicted", "provenance", "neighbor_count"}) {
      EXPECT_TRUE(items[i].contains(key)) << key;
    }
  }
}

TEST_F(HttpApiTest, RecommendGibberishUsesPopularFallback) {
  auto r = api.recommend(R"({"prompt": "zxqv blorf"})");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["resolved_prompt"]["method"], "none");
  EXPECT_TRUE(r.body["resolved_prompt"]["matched"].is_null());
  ASSERT_FALSE(r.body["items"].empty());
  for (const auto& it : r.body["items"]) EXPECT_EQ(it["provenance"], "popular-fallback");
}

TEST_F(HttpApiTest, RecommendRejectsBadRequests) {
  EXPECT_EQ(api.recommend("not json").status, 400);
  EXPECT_EQ(api.recommend("{}").status, 400);
  EXPECT_EQ(api.recommend(R"({"prompt": ""})").status, 400);
  EXPECT_EQ(api.recommend(R"({"prompt": 5})").status, 400);
  EXPECT_EQ(api.recommend(R"({"prompt": "x", "n": 0})").status, 400);
  EXPECT_EQ(api.recommend(R"({"prompt": "x", "n": "ten"})").status, 400);
  EXPECT_EQ(api.recommend(R"({"prompt": "x", "threshold": 9})").status, 400);
  EXPECT_EQ(api.recommend(R"({"prompt": "x", "threshold": "high"})").status, 400);
}

TEST_F(HttpApiTest, RateAcknowledgesWithNewVersion) {
  const auto before = service.health().model_version;
  auto r = api.rate(R"({"context": "Design a recommendation system that avoids bias.",
                        "target": "A totally new prompt.", "rating": 4})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_GT(r.body["model_version"].get<std::uint64_t>(), before);
  EXPECT_EQ(r.body["added"].size(), 1u);
  EXPECT_EQ(r.body["added"][0], r.body["target_id"]);
}

TEST_F(HttpApiTest, RateRejectsInvalidInput) {
  const auto before = service.health();
  EXPECT_EQ(api.rate(R"({"context": "a", "target": "b", "rating": 7.0})").status, 400);
  EXPECT_EQ(api.rate(R"({"context": "a", "target": " A ", "rating": 3})").status, 400);
  EXPECT_EQ(api.rate(R"({"context": "a", "rating": 3})").status, 400);
  EXPECT_EQ(api.rate(R"({"context": "a", "target": "b", "rating": "3"})").status, 400);
  EXPECT_EQ(api.rate("[1, 2]").status, 400);
  EXPECT_EQ(service.health().model_version, before.model_version);
  EXPECT_EQ(service.health().n_prompts, before.n_prompts);
}

TEST_F(HttpApiTest, PromptsListAndFilter) {
  auto all = api.prompts("");
  ASSERT_EQ(all.status, 200);
  EXPECT_EQ(all.body.size(), 9u);
  EXPECT_EQ(all.body[0]["id"], 0);
  auto fair = api.prompts("fairness");
  ASSERT_EQ(fair.body.size(), 1u);
  EXPECT_EQ(fair.body[0]["text"], "Generate an AI-based tutoring system ensuring fairness.");
  EXPECT_TRUE(api.prompts("nothing like this").body.empty());
}

TEST_F(HttpApiTest, Health) {
  auto h = api.health();
  EXPECT_EQ(h.status, 200);
  EXPECT_EQ(h.body["status"], "ok");
  EXPECT_EQ(h.body["n_prompts"], 9);
  EXPECT_EQ(h.body["n_ratings"], testdata::table1_rows().size());
}

TEST(HttpApi, NotReadyMapsTo503) {
  RecommenderService service{ServiceConfig{}};
  HttpApi api(service);
  EXPECT_EQ(api.recommend(R"({"prompt": "x"})").status, 503);
  EXPECT_EQ(api.rate(R"({"context": "a", "target": "b", "rating": 3})").status, 503);
  EXPECT_EQ(api.prompts("").status, 503);
  auto h = api.health();
  EXPECT_EQ(h.status, 503);
  EXPECT_EQ(h.body["status"], "loading");
}

TEST(ListenOverride, ParsesHostAndPort) {
  ServiceConfig c;
  ::setenv("PROMPTREC_LISTEN", "0.0.0.0:9123", 1);
  apply_listen_override(c);
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 9123);
  ::setenv("PROMPTREC_LISTEN", "nocolon", 1);
  EXPECT_THROW(apply_listen_override(c), InvalidArgument);
  ::setenv("PROMPTREC_LISTEN", "host:99999", 1);
  EXPECT_THROW(apply_listen_override(c), InvalidArgument);
  ::unsetenv("PROMPTREC_LISTEN");
  ServiceConfig d;
  apply_listen_override(d);
  EXPECT_EQ(d.port, 8080);
}

TEST(HttpServer, ServesAllEndpointsOverSockets) {
  RecommenderService service{ServiceConfig{}};
  service.load(testdata::table1());
  std::promise<int> port_promise;
  auto port_future = port_promise.get_future();
  std::thread server([&] {
    bool ok = run_server(service, "127.0.0.1", 0, [&](int p) { port_promise.set_value(p); });
    if (!ok) port_promise.set_value(-1);
  });
  ASSERT_EQ(port_future.wait_for(std::chrono::seconds(10)), std::future_status::ready);
  const int port = port_future.get();
  ASSERT_GT(port, 0);

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);

  auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body)["status"], "ok");
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");

  auto rec = client.Post("/recommend", R"({"prompt": "privacy preserving NLP model for filtering email", "n": 4})",
                         "application/json");
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->status, 200);
  auto body = json::parse(rec->body);
  EXPECT_EQ(body["resolved_prompt"]["method"], "lexical-cosine");
  EXPECT_EQ(body["resolved_prompt"]["matched"]["text"],
            "Generate a privacy-preserving NLP model for email filtering.");

  auto bad = client.Post("/recommend", R"({"prompt": ""})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto rate = client.Post("/ratings",
                          R"({"context": "Generate a privacy-preserving NLP model for email filtering.",
                              "target": "Summarize a clinical trial report.", "rating": 3.5})",
                          "application/json");
  ASSERT_TRUE(rate);
  EXPECT_EQ(rate->status, 200);
  const auto version = json::parse(rate->body)["model_version"].get<std::uint64_t>();
  EXPECT_GT(version, body["model_version"].get<std::uint64_t>());

  auto prompts = client.Get("/prompts?q=clinical");
  ASSERT_TRUE(prompts);
  auto list = json::parse(prompts->body);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0]["text"], "Summarize a clinical trial report.");

  auto preflight = client.Options("/recommend");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);

  auto after = json::parse(client.Get("/health")->body);
  EXPECT_EQ(after["model_version"], version);
  EXPECT_EQ(after["n_prompts"], 10);

  stop_server();
  server.join();
}

}  // namespace
}  // namespace promptrec

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promptrec/error.hpp"
#include "promptrec/recommender.hpp"
#include "promptrec/text_similarity.hpp"

namespace promptrec {

class ServiceNotReady : public Error {
 public:
  ServiceNotReady() : Error("service has no loaded dataset") {}
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  // CSV backing store. Empty path: in-memory only.
  std::filesystem::path dataset_path;
  std::size_t k_neighbors = SimilarityModel::kDefaultNeighbors;
  std::size_t min_support = SimilarityModel::kDefaultMinSupport;
  DedupPolicy dedup = DedupPolicy::kMean;
  double min_score = kDefaultMinScore;
  std::size_t min_received = 1;
  std::size_t default_n = 10;
  bool include_rated = false;
  // Append accepted ratings to dataset_path before they are served.
  bool write_through = true;

  void validate() const;
};

struct RecommendResponse {
  MatchResult resolved_prompt;
  std::vector<Recommendation> items;
  std::uint64_t model_version = 0;
};

struct RateAck {
  std::uint64_t model_version = 0;
  PromptId context = 0;
  PromptId target = 0;
  std::vector<PromptId> added;
};

struct Health {
  bool ready = false;
  std::uint64_t model_version = 0;
  std::size_t n_prompts = 0;
  std::size_t n_ratings = 0;
};

// Recommendation loop over immutable snapshots. Readers grab the current
// snapshot and never block on rebuilds; ratings are serialized through one
// writer lock and published by swapping the snapshot pointer.
class RecommenderService {
 public:
  explicit RecommenderService(ServiceConfig config,
                              std::shared_ptr<const MatchProvider> provider = nullptr);

  // Loads config.dataset_path; a missing file starts an empty store.
  void load();
  void load(const RatingDataset& dataset);

  bool ready() const;

  // Throws InvalidArgument for empty prompt text, n < 1 or a threshold
  // outside [1, 5]; ServiceNotReady before load().
  RecommendResponse recommend(std::string_view prompt, std::optional<std::size_t> n = std::nullopt,
                              std::optional<double> threshold = std::nullopt) const;

  // Ratings are rounded to the 2 decimals the CSV stores, so a restart from
  // the persisted file reproduces the in-memory matrix exactly.
  RateAck rate(std::string_view context, std::string_view target, double rating);

  // Catalog prompts in id order, optionally filtered by case-insensitive
  // substring.
  std::vector<Prompt> prompts(std::string_view filter = {}) const;

  Health health() const;
  const ServiceConfig& config() const noexcept { return config_; }

  // Current matrix snapshot (for inspection and tests).
  RatingMatrix matrix() const;

 private:
  struct Snapshot {
    RatingMatrix matrix;
    SimilarityModel model;
    std::shared_ptr<const PromptMatcher> matcher;
    std::uint64_t version = 0;
    std::size_t n_ratings = 0;
  };

  std::shared_ptr<const Snapshot> current() const;
  void publish(std::shared_ptr<const Snapshot> next);
  void append_to_store(std::string_view context, std::string_view target, double rating);

  ServiceConfig config_;
  std::shared_ptr<const MatchProvider> provider_;

  mutable std::mutex snapshot_mu_;  // guards the pointer only
  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex writer_mu_;
  std::uint64_t next_version_ = 1;
};

}  // namespace promptrec

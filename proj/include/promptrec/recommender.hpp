#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promptrec/matrix.hpp"
#include "promptrec/similarity.hpp"

namespace promptrec {

// Which rule produced a predicted rating.
enum class Provenance { kKnn, kItemMean, kGlobalMean, kPopularFallback };

std::string_view to_string(Provenance provenance);

enum class PredictionRule {
  // sum(sim * r(context, j)) / sum(sim) over positively similar neighbours.
  kWeightedAverage,
  // Item-mean baseline plus similarity-weighted neighbour deviations.
  kMeanCentered,
};

struct Recommendation {
  PromptId target = 0;
  std::string text;
  double predicted = 0.0;
  std::size_t rank = 0;  // 1-based; 0 for a standalone prediction
  Provenance provenance = Provenance::kKnn;
  std::size_t neighbor_count = 0;
};

struct RecommendOptions {
  std::optional<double> threshold;
  bool include_rated = false;
  PredictionRule rule = PredictionRule::kWeightedAverage;
  // Used when the context is unknown and the request falls through to the
  // popularity list.
  std::size_t min_received = 1;
};

// Predicted rating of `target` for `context`, clamped to [1, 5]. Falls back to
// the target's mean received rating, then to the global mean (3.0 on an empty
// matrix). Throws InvalidArgument for ids outside the catalog.
Recommendation predict(const SimilarityModel& model, const RatingMatrix& matrix, PromptId context,
                       PromptId target, PredictionRule rule = PredictionRule::kWeightedAverage);

// Top-`n` follow-up prompts for `context`, ranked by (predicted desc,
// normalized text asc). Truncation happens before the threshold filter, which
// keeps entries with predicted >= threshold. An id outside the catalog yields
// the popularity list instead.
std::vector<Recommendation> recommend_top_n(const SimilarityModel& model,
                                            const RatingMatrix& matrix, PromptId context,
                                            std::size_t n, const RecommendOptions& options = {});

// Prompts ranked by mean received rating among those with at least
// `min_received` received ratings.
std::vector<Recommendation> fallback_popular(const RatingMatrix& matrix, std::size_t n,
                                             std::size_t min_received = 1);

// Mean of the aggregated ratings `target` has received; nullopt if none.
std::optional<double> item_mean(const RatingMatrix& matrix, PromptId target);

}  // namespace promptrec

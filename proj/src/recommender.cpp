#include "promptrec/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "promptrec/error.hpp"

namespace promptrec {
namespace {

struct Neighbor {
  PromptId id;
  double similarity;
  double rating;
};

// Neighbour order compares similarities at 1e-12 resolution so that values
// equal up to rounding (e.g. two-rater pairs at exactly +1) tie and fall
// through to the text tie-break.
long long similarity_order_key(double s) { return std::llround(s * 1e12); }

void sort_ranked(std::vector<Recommendation>& recs, const PromptCatalog& catalog) {
  std::sort(recs.begin(), recs.end(), [&](const Recommendation& a, const Recommendation& b) {
    if (a.predicted != b.predicted) return a.predicted > b.predicted;
    const auto& ka = catalog.normalized(a.target);
    const auto& kb = catalog.normalized(b.target);
    if (ka != kb) return ka < kb;
    return a.target < b.target;
  });
}

}  // namespace

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::kKnn: return "knn";
    case Provenance::kItemMean: return "item-mean";
    case Provenance::kGlobalMean: return "global-mean";
    case Provenance::kPopularFallback: return "popular-fallback";
  }
  return "knn";
}

std::optional<double> item_mean(const RatingMatrix& matrix, PromptId target) {
  const auto& col = matrix.column(target);
  if (col.empty()) return std::nullopt;
  double s = 0.0;
  for (const auto& [context, value] : col) s += value;
  return s / static_cast<double>(col.size());
}

Recommendation predict(const SimilarityModel& model, const RatingMatrix& matrix, PromptId context,
                       PromptId target, PredictionRule rule) {
  const auto& catalog = matrix.catalog();
  if (!catalog.contains(context)) {
    throw InvalidArgument("unknown context prompt id " + std::to_string(context));
  }
  if (!catalog.contains(target)) {
    throw InvalidArgument("unknown target prompt id " + std::to_string(target));
  }

  Recommendation rec;
  rec.target = target;
  rec.text = catalog.text(target);

  std::vector<Neighbor> neighbors;
  for (const auto& [j, rating] : matrix.row(context)) {
    if (j == target) continue;
    auto sim = model.similarity(target, j);
    if (sim && *sim > 0.0) neighbors.push_back({j, *sim, rating});
  }
  std::sort(neighbors.begin(), neighbors.end(), [&](const Neighbor& a, const Neighbor& b) {
    const auto ka = similarity_order_key(a.similarity);
    const auto kb = similarity_order_key(b.similarity);
    if (ka != kb) return ka > kb;
    return catalog.normalized(a.id) < catalog.normalized(b.id);
  });
  if (neighbors.size() > model.k_neighbors()) neighbors.resize(model.k_neighbors());

  const auto target_mean = item_mean(matrix, target);
  if (!neighbors.empty()) {
    double num = 0.0;
    double den = 0.0;
    if (rule == PredictionRule::kWeightedAverage) {
      for (const auto& nb : neighbors) {
        num += nb.similarity * nb.rating;
        den += nb.similarity;
      }
      rec.predicted = num / den;
    } else {
      for (const auto& nb : neighbors) {
        num += nb.similarity * (nb.rating - *item_mean(matrix, nb.id));
        den += nb.similarity;
      }
      rec.predicted = target_mean.value_or(matrix.global_mean_or_midpoint()) + num / den;
    }
    rec.provenance = Provenance::kKnn;
    rec.neighbor_count = neighbors.size();
  } else if (target_mean) {
    rec.predicted = *target_mean;
    rec.provenance = Provenance::kItemMean;
  } else {
    rec.predicted = matrix.global_mean_or_midpoint();
    rec.provenance = Provenance::kGlobalMean;
  }
  rec.predicted = std::clamp(rec.predicted, kMinRating, kMaxRating);
  return rec;
}

std::vector<Recommendation> recommend_top_n(const SimilarityModel& model,
                                            const RatingMatrix& matrix, PromptId context,
                                            std::size_t n, const RecommendOptions& options) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  const auto& catalog = matrix.catalog();
  if (!catalog.contains(context)) {
    auto popular = fallback_popular(matrix, n, options.min_received);
    if (options.threshold) {
      std::erase_if(popular, [&](const Recommendation& r) { return r.predicted < *options.threshold; });
      for (std::size_t i = 0; i < popular.size(); ++i) popular[i].rank = i + 1;
    }
    return popular;
  }

  const auto& rated = matrix.row(context);
  std::vector<Recommendation> recs;
  for (PromptId target = 0; target < catalog.size(); ++target) {
    if (target == context) continue;
    if (!options.include_rated && rated.contains(target)) continue;
    recs.push_back(predict(model, matrix, context, target, options.rule));
  }
  sort_ranked(recs, catalog);
  if (recs.size() > n) recs.resize(n);
  if (options.threshold) {
    std::erase_if(recs, [&](const Recommendation& r) { return r.predicted < *options.threshold; });
  }
  for (std::size_t i = 0; i < recs.size(); ++i) recs[i].rank = i + 1;
  return recs;
}

std::vector<Recommendation> fallback_popular(const RatingMatrix& matrix, std::size_t n,
                                             std::size_t min_received) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  const auto& catalog = matrix.catalog();
  std::vector<Recommendation> recs;
  for (PromptId id = 0; id < catalog.size(); ++id) {
    const auto& col = matrix.column(id);
    if (col.empty() || col.size() < min_received) continue;
    Recommendation rec;
    rec.target = id;
    rec.text = catalog.text(id);
    rec.predicted = std::clamp(*item_mean(matrix, id), kMinRating, kMaxRating);
    rec.provenance = Provenance::kPopularFallback;
    recs.push_back(std::move(rec));
  }
  sort_ranked(recs, catalog);
  if (recs.size() > n) recs.resize(n);
  for (std::size_t i = 0; i < recs.size(); ++i) recs[i].rank = i + 1;
  return recs;
}

}  // namespace promptrec

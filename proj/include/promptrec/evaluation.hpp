#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "promptrec/dataset.hpp"
#include "promptrec/matrix.hpp"
#include "promptrec/recommender.hpp"

namespace promptrec {

struct PredictionPair {
  double actual = 0.0;
  double predicted = 0.0;
  PromptId context = 0;
  PromptId target = 0;
};

struct RetrievalCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  RetrievalCounts& operator+=(const RetrievalCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const RetrievalCounts&, const RetrievalCounts&) = default;
};

// Value reported for precision or recall when its denominator is zero.
enum class EmptyRatio { kOne, kZero };

enum class PrecisionDenominator {
  // TP + FP, where FP counts top-n items with predicted >= t and actual < t.
  kGated,
  // Every item in the top-n list.
  kAllTopN,
};

struct RetrievalOptions {
  std::size_t top_n = 10;
  double threshold = 3.0;
  EmptyRatio empty = EmptyRatio::kOne;
  PrecisionDenominator denominator = PrecisionDenominator::kGated;
};

struct RetrievalResult {
  RetrievalCounts counts;
  double precision = 1.0;
  double recall = 1.0;
};

// Throw InvalidArgument on empty input.
double mae(std::span<const PredictionPair> pairs);
double rmse(std::span<const PredictionPair> pairs);

// 2PR / (P + R); 0 when P + R = 0.
double f1(double precision, double recall);

// Counts for one context's held-out pairs: rank by (predicted desc,
// normalized target text asc), keep the top n. TP: predicted >= t and
// actual >= t. FP: predicted >= t and actual < t. FN: relevant held-out pairs
// not counted in TP.
RetrievalCounts count_retrieval(std::span<const PredictionPair> pool, const PromptCatalog& catalog,
                                const RetrievalOptions& options);

// Micro-averaged precision and recall over per-context pools.
RetrievalResult precision_recall(const std::vector<std::vector<PredictionPair>>& pools,
                                 const PromptCatalog& catalog, const RetrievalOptions& options);

struct Fold {
  std::vector<std::size_t> train;  // ascending record indices
  std::vector<std::size_t> test;   // ascending record indices
};

// Seeded shuffle of record indices dealt round-robin into `folds` test sets.
std::vector<Fold> kfold_split(std::size_t record_count, std::size_t folds, std::uint64_t seed);
std::vector<Fold> kfold_split(const RatingDataset& dataset, std::size_t folds, std::uint64_t seed);

struct EvalConfig {
  std::size_t folds = 10;
  std::size_t top_n = 10;
  double threshold = 3.0;
  std::uint64_t seed = 1;
  std::size_t k_neighbors = SimilarityModel::kDefaultNeighbors;
  std::size_t min_support = SimilarityModel::kDefaultMinSupport;
  DedupPolicy dedup = DedupPolicy::kMean;
  PredictionRule rule = PredictionRule::kWeightedAverage;
  EmptyRatio empty = EmptyRatio::kOne;
  PrecisionDenominator denominator = PrecisionDenominator::kGated;
  bool parallel = true;

  void validate() const;
};

struct Metrics {
  double mae = 0.0;
  double rmse = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct FoldReport {
  Metrics metrics;
  RetrievalCounts counts;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

struct EvalReport {
  EvalConfig config;
  std::vector<FoldReport> per_fold;
  Metrics aggregate;  // arithmetic means over folds
};

// Evaluates one fold: matrix and similarity model built from `train` only.
FoldReport evaluate_fold(const RatingDataset& dataset, const Fold& fold, const EvalConfig& config);

EvalReport cross_validate(const RatingDataset& dataset, const EvalConfig& config);

nlohmann::json to_json(const EvalReport& report);

// Aligned table with columns Threshold, MAE, RMSE, Precision, Recall, F1; one
// row per report.
std::string format_table(std::span<const EvalReport> reports);

}  // namespace promptrec

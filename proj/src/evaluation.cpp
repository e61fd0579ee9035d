#include "promptrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>

#include "portable_rng.hpp"
#include "promptrec/error.hpp"
#include "promptrec/similarity.hpp"

namespace promptrec {
namespace {

double ratio(std::size_t num, std::size_t den, EmptyRatio empty) {
  if (den == 0) return empty == EmptyRatio::kOne ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string_view to_string(EmptyRatio e) { return e == EmptyRatio::kOne ? "one" : "zero"; }

std::string_view to_string(PrecisionDenominator d) {
  return d == PrecisionDenominator::kGated ? "gated" : "all-top-n";
}

std::string_view to_string(PredictionRule r) {
  return r == PredictionRule::kWeightedAverage ? "weighted-average" : "mean-centered";
}

nlohmann::json to_json(const Metrics& m) {
  return {{"mae", m.mae}, {"rmse", m.rmse}, {"precision", m.precision},
          {"recall", m.recall}, {"f1", m.f1}};
}

}  // namespace

double mae(std::span<const PredictionPair> pairs) {
  if (pairs.empty()) throw InvalidArgument("mae of an empty prediction list");
  double s = 0.0;
  for (const auto& p : pairs) s += std::abs(p.actual - p.predicted);
  return s / static_cast<double>(pairs.size());
}

double rmse(std::span<const PredictionPair> pairs) {
  if (pairs.empty()) throw InvalidArgument("rmse of an empty prediction list");
  double s = 0.0;
  for (const auto& p : pairs) {
    const double d = p.actual - p.predicted;
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(pairs.size()));
}

double f1(double precision, double recall) {
  const double s = precision + recall;
  if (s == 0.0) return 0.0;
  return 2.0 * precision * recall / s;
}

RetrievalCounts count_retrieval(std::span<const PredictionPair> pool, const PromptCatalog& catalog,
                                const RetrievalOptions& options) {
  if (options.top_n < 1) throw InvalidArgument("top_n must be at least 1");
  std::vector<const PredictionPair*> ranked;
  ranked.reserve(pool.size());
  for (const auto& p : pool) ranked.push_back(&p);
  std::stable_sort(ranked.begin(), ranked.end(), [&](const PredictionPair* a, const PredictionPair* b) {
    if (a->predicted != b->predicted) return a->predicted > b->predicted;
    return catalog.normalized(a->target) < catalog.normalized(b->target);
  });
  if (ranked.size() > options.top_n) ranked.resize(options.top_n);

  const double t = options.threshold;
  RetrievalCounts c;
  for (const auto* p : ranked) {
    const bool hit = p->predicted >= t && p->actual >= t;
    if (hit) {
      ++c.tp;
    } else if (options.denominator == PrecisionDenominator::kAllTopN || p->predicted >= t) {
      ++c.fp;
    }
  }
  std::size_t relevant = 0;
  for (const auto& p : pool) relevant += p.actual >= t ? 1 : 0;
  c.fn = relevant - c.tp;
  return c;
}

RetrievalResult precision_recall(const std::vector<std::vector<PredictionPair>>& pools,
                                 const PromptCatalog& catalog, const RetrievalOptions& options) {
  RetrievalResult r;
  for (const auto& pool : pools) r.counts += count_retrieval(pool, catalog, options);
  r.precision = ratio(r.counts.tp, r.counts.tp + r.counts.fp, options.empty);
  r.recall = ratio(r.counts.tp, r.counts.tp + r.counts.fn, options.empty);
  return r;
}

std::vector<Fold> kfold_split(std::size_t record_count, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw InvalidArgument("folds must be at least 2");
  if (record_count < folds) {
    throw InvalidArgument("dataset of " + std::to_string(record_count) +
                          " records is smaller than " + std::to_string(folds) + " folds");
  }
  std::vector<std::size_t> order(record_count);
  for (std::size_t i = 0; i < record_count; ++i) order[i] = i;
  detail::PortableRng rng(seed);
  rng.shuffle(order);

  std::vector<std::size_t> fold_of(record_count);
  for (std::size_t pos = 0; pos < record_count; ++pos) fold_of[order[pos]] = pos % folds;

  std::vector<Fold> out(folds);
  for (std::size_t i = 0; i < record_count; ++i) {
    for (std::size_t f = 0; f < folds; ++f) {
      (f == fold_of[i] ? out[f].test : out[f].train).push_back(i);
    }
  }
  return out;
}

std::vector<Fold> kfold_split(const RatingDataset& dataset, std::size_t folds, std::uint64_t seed) {
  return kfold_split(dataset.size(), folds, seed);
}

void EvalConfig::validate() const {
  if (folds < 2) throw InvalidArgument("folds must be at least 2");
  if (top_n < 1) throw InvalidArgument("top_n must be at least 1");
  if (!(threshold >= kMinRating && threshold <= kMaxRating)) {
    throw InvalidArgument("threshold must lie in [1, 5]");
  }
  if (k_neighbors < 1) throw InvalidArgument("k_neighbors must be at least 1");
  if (min_support < 2) throw InvalidArgument("min_support must be at least 2");
}

FoldReport evaluate_fold(const RatingDataset& dataset, const Fold& fold, const EvalConfig& config) {
  const RatingDataset train = dataset.subset(fold.train);
  const RatingMatrix matrix = RatingMatrix::build(train, config.dedup);
  if (matrix.empty()) throw InvalidArgument("fold training split yields an empty matrix");
  const SimilarityModel model =
      SimilarityModel::build(matrix, config.min_support, config.k_neighbors);

  std::vector<PredictionPair> pairs;
  pairs.reserve(fold.test.size());
  std::map<PromptId, std::vector<PredictionPair>> by_context;
  for (std::size_t idx : fold.test) {
    const RatingRecord& r = dataset.records()[idx];
    const Recommendation rec = predict(model, matrix, r.context, r.target, config.rule);
    PredictionPair p{r.rating, rec.predicted, r.context, r.target};
    pairs.push_back(p);
    by_context[r.context].push_back(p);
  }
  std::vector<std::vector<PredictionPair>> pools;
  pools.reserve(by_context.size());
  for (auto& [context, pool] : by_context) pools.push_back(std::move(pool));

  const RetrievalResult retrieval = precision_recall(
      pools, dataset.catalog(),
      RetrievalOptions{config.top_n, config.threshold, config.empty, config.denominator});

  FoldReport report;
  report.metrics.mae = mae(pairs);
  report.metrics.rmse = rmse(pairs);
  report.metrics.precision = retrieval.precision;
  report.metrics.recall = retrieval.recall;
  report.metrics.f1 = f1(retrieval.precision, retrieval.recall);
  report.counts = retrieval.counts;
  report.train_size = fold.train.size();
  report.test_size = fold.test.size();
  return report;
}

EvalReport cross_validate(const RatingDataset& dataset, const EvalConfig& config) {
  config.validate();
  const auto folds = kfold_split(dataset, config.folds, config.seed);

  EvalReport report;
  report.config = config;
  report.per_fold.resize(folds.size());
  if (config.parallel) {
    std::vector<std::future<FoldReport>> pending;
    pending.reserve(folds.size());
    for (const auto& fold : folds) {
      pending.push_back(std::async(std::launch::async, [&dataset, &fold, &config] {
        return evaluate_fold(dataset, fold, config);
      }));
    }
    // Collect in fold order; get() rethrows the first failing fold's error.
    for (std::size_t f = 0; f < pending.size(); ++f) report.per_fold[f] = pending[f].get();
  } else {
    for (std::size_t f = 0; f < folds.size(); ++f) {
      report.per_fold[f] = evaluate_fold(dataset, folds[f], config);
    }
  }

  Metrics& agg = report.aggregate;
  for (const auto& f : report.per_fold) {
    agg.mae += f.metrics.mae;
    agg.rmse += f.metrics.rmse;
    agg.precision += f.metrics.precision;
    agg.recall += f.metrics.recall;
    agg.f1 += f.metrics.f1;
  }
  const double n = static_cast<double>(report.per_fold.size());
  agg.mae /= n;
  agg.rmse /= n;
  agg.precision /= n;
  agg.recall /= n;
  agg.f1 /= n;
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  const EvalConfig& c = report.config;
  nlohmann::json per_fold = nlohmann::json::array();
  for (std::size_t i = 0; i < report.per_fold.size(); ++i) {
    const auto& f = report.per_fold[i];
    nlohmann::json j = to_json(f.metrics);
    j["fold"] = i;
    j["tp"] = f.counts.tp;
    j["fp"] = f.counts.fp;
    j["fn"] = f.counts.fn;
    j["train_size"] = f.train_size;
    j["test_size"] = f.test_size;
    per_fold.push_back(std::move(j));
  }
  return {
      {"config",
       {{"folds", c.folds},
        {"top_n", c.top_n},
        {"threshold", c.threshold},
        {"seed", c.seed},
        {"k_neighbors", c.k_neighbors},
        {"min_support", c.min_support},
        {"dedup", std::string(to_string(c.dedup))},
        {"rule", std::string(to_string(c.rule))},
        {"empty_ratio", std::string(to_string(c.empty))},
        {"precision_denominator", std::string(to_string(c.denominator))}}},
      {"per_fold", std::move(per_fold)},
      {"aggregate", to_json(report.aggregate)},
  };
}

std::string format_table(std::span<const EvalReport> reports) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-8s %-8s %-10s %-8s %-8s\n", "Threshold", "MAE", "RMSE",
                "Precision", "Recall", "F1");
  out += line;
  for (const auto& r : reports) {
    const Metrics& m = r.aggregate;
    std::snprintf(line, sizeof line, "%-10.1f %-8.4f %-8.4f %-10.4f %-8.4f %-8.4f\n",
                  r.config.threshold, m.mae, m.rmse, m.precision, m.recall, m.f1);
    out += line;
  }
  return out;
}

}  // namespace promptrec

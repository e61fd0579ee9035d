#include "promptrec/service.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace promptrec {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) throw InvalidArgument("port must lie in [0, 65535]");
  if (k_neighbors < 1) throw InvalidArgument("k_neighbors must be at least 1");
  if (min_support < 2) throw InvalidArgument("min_support must be at least 2");
  if (!(min_score >= 0.0 && min_score <= 1.0)) throw InvalidArgument("min_score must lie in [0, 1]");
  if (min_received < 1) throw InvalidArgument("min_received must be at least 1");
  if (default_n < 1) throw InvalidArgument("default n must be at least 1");
}

RecommenderService::RecommenderService(ServiceConfig config,
                                       std::shared_ptr<const MatchProvider> provider)
    : config_(std::move(config)), provider_(std::move(provider)) {
  config_.validate();
  if (!provider_) provider_ = std::make_shared<LexicalProvider>();
}

void RecommenderService::load() {
  RatingDataset dataset;
  if (!config_.dataset_path.empty() && std::filesystem::exists(config_.dataset_path)) {
    dataset = load_dataset(config_.dataset_path);
  }
  load(dataset);
}

void RecommenderService::load(const RatingDataset& dataset) {
  std::lock_guard writer(writer_mu_);
  auto snap = std::make_shared<Snapshot>();
  snap->matrix = RatingMatrix::build(dataset, config_.dedup);
  snap->model = snap->matrix.empty()
                    ? SimilarityModel(config_.min_support, config_.k_neighbors)
                    : SimilarityModel::build(snap->matrix, config_.min_support, config_.k_neighbors);
  snap->matcher = provider_->prepare(snap->matrix.catalog());
  snap->n_ratings = dataset.size();
  snap->version = next_version_++;
  publish(std::move(snap));
}

std::shared_ptr<const RecommenderService::Snapshot> RecommenderService::current() const {
  std::lock_guard lock(snapshot_mu_);
  return snapshot_;
}

void RecommenderService::publish(std::shared_ptr<const Snapshot> next) {
  std::lock_guard lock(snapshot_mu_);
  snapshot_ = std::move(next);
}

bool RecommenderService::ready() const { return current() != nullptr; }

RatingMatrix RecommenderService::matrix() const {
  auto snap = current();
  if (!snap) throw ServiceNotReady();
  return snap->matrix;
}

RecommendResponse RecommenderService::recommend(std::string_view prompt,
                                                std::optional<std::size_t> n,
                                                std::optional<double> threshold) const {
  if (normalize_text(prompt).empty()) throw InvalidArgument("prompt text is empty");
  const std::size_t count = n.value_or(config_.default_n);
  if (count < 1) throw InvalidArgument("n must be at least 1");
  if (threshold && !(*threshold >= kMinRating && *threshold <= kMaxRating)) {
    throw InvalidArgument("threshold must lie in [1, 5]");
  }
  auto snap = current();
  if (!snap) throw ServiceNotReady();

  RecommendResponse response;
  response.model_version = snap->version;
  response.resolved_prompt = snap->matcher->match(prompt, config_.min_score);

  if (response.resolved_prompt.matched) {
    RecommendOptions options;
    options.threshold = threshold;
    options.include_rated = config_.include_rated;
    options.min_received = config_.min_received;
    response.items = recommend_top_n(snap->model, snap->matrix,
                                     response.resolved_prompt.matched->id, count, options);
  } else {
    response.items = fallback_popular(snap->matrix, count, config_.min_received);
    if (threshold) {
      std::erase_if(response.items,
                    [&](const Recommendation& r) { return r.predicted < *threshold; });
      for (std::size_t i = 0; i < response.items.size(); ++i) response.items[i].rank = i + 1;
    }
  }
  return response;
}

void RecommenderService::append_to_store(std::string_view context, std::string_view target,
                                         double rating) {
  const auto& path = config_.dataset_path;
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to dataset " + path.string());
  if (fresh) out << kCsvHeader << '\n';
  out << format_row(context, target, rating);
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

RateAck RecommenderService::rate(std::string_view context, std::string_view target,
                                 double rating) {
  validate_rating(rating);
  rating = std::round(rating * 100.0) / 100.0;

  std::lock_guard writer(writer_mu_);
  auto base = current();
  if (!base) throw ServiceNotReady();

  // Validates the record before anything is persisted.
  MatrixUpdate update = add_rating(base->matrix, context, target, rating);

  if (config_.write_through && !config_.dataset_path.empty()) {
    append_to_store(context, target, rating);
  }

  auto next = std::make_shared<Snapshot>();
  next->model = base->model.refreshed(update.matrix, update.notice);
  next->matcher = update.notice.added.empty() ? base->matcher
                                              : provider_->prepare(update.matrix.catalog());
  next->matrix = std::move(update.matrix);
  next->n_ratings = base->n_ratings + 1;
  next->version = next_version_++;

  RateAck ack;
  ack.model_version = next->version;
  ack.context = *next->matrix.catalog().find(context);
  ack.target = *next->matrix.catalog().find(target);
  ack.added = update.notice.added;
  publish(std::move(next));
  return ack;
}

std::vector<Prompt> RecommenderService::prompts(std::string_view filter) const {
  auto snap = current();
  if (!snap) throw ServiceNotReady();
  auto all = snap->matrix.catalog().prompts();
  if (filter.empty()) return all;
  const std::string needle = lower(filter);
  std::erase_if(all, [&](const Prompt& p) { return lower(p.text).find(needle) == std::string::npos; });
  return all;
}

Health RecommenderService::health() const {
  auto snap = current();
  if (!snap) return Health{};
  return Health{true, snap->version, snap->matrix.catalog().size(), snap->n_ratings};
}

}  // namespace promptrec

#include "promptrec/matrix.hpp"

#include <string>

#include "promptrec/error.hpp"

namespace promptrec {
namespace {

const RatingMatrix::Row kEmptyRow;

}  // namespace

std::optional<DedupPolicy> parse_dedup_policy(std::string_view name) {
  if (name == "mean") return DedupPolicy::kMean;
  if (name == "last") return DedupPolicy::kLast;
  if (name == "first") return DedupPolicy::kFirst;
  return std::nullopt;
}

std::string_view to_string(DedupPolicy policy) {
  switch (policy) {
    case DedupPolicy::kMean: return "mean";
    case DedupPolicy::kLast: return "last";
    case DedupPolicy::kFirst: return "first";
  }
  return "mean";
}

RatingMatrix::RatingMatrix(PromptCatalog catalog, DedupPolicy policy)
    : catalog_(std::move(catalog)), policy_(policy) {
  grow_to_catalog();
}

RatingMatrix RatingMatrix::build(const RatingDataset& dataset, DedupPolicy policy) {
  RatingMatrix m(dataset.catalog(), policy);
  for (const auto& r : dataset.records()) m.observe(r);
  return m;
}

void RatingMatrix::grow_to_catalog() {
  rows_.resize(catalog_.size());
  columns_.resize(catalog_.size());
}

InvalidationNotice RatingMatrix::observe(const RatingRecord& record) {
  validate_rating(record.rating);
  if (!catalog_.contains(record.context) || !catalog_.contains(record.target)) {
    throw InvalidArgument("rating references a prompt outside the catalog");
  }
  if (record.context == record.target) {
    throw InvalidArgument("self-rating: context and target are the same prompt");
  }

  CellStats& s = stats_[key(record.context, record.target)];
  if (s.count == 0) {
    s.first = record.rating;
    ++cell_count_;
  }
  s.sum += record.rating;
  s.last = record.rating;
  ++s.count;

  double value = 0.0;
  switch (policy_) {
    case DedupPolicy::kMean: value = s.sum / s.count; break;
    case DedupPolicy::kLast: value = s.last; break;
    case DedupPolicy::kFirst: value = s.first; break;
  }

  double& cell = rows_[record.context][record.target];
  if (s.count > 1) value_sum_ -= cell;
  value_sum_ += value;
  cell = value;
  columns_[record.target][record.context] = value;

  return InvalidationNotice{{record.target}, {}};
}

InvalidationNotice RatingMatrix::observe(std::string_view context, std::string_view target,
                                         double rating) {
  validate_rating(rating);
  std::string context_key = normalize_text(context);
  std::string target_key = normalize_text(target);
  if (context_key.empty() || target_key.empty()) throw InvalidArgument("prompt text is empty");
  if (context_key == target_key) {
    throw InvalidArgument("self-rating: context and target are the same prompt");
  }

  std::size_t before = catalog_.size();
  PromptId c = catalog_.intern(context);
  PromptId t = catalog_.intern(target);
  grow_to_catalog();

  InvalidationNotice notice = observe(RatingRecord{c, t, rating});
  for (auto id = static_cast<PromptId>(before); id < catalog_.size(); ++id) {
    notice.added.push_back(id);
    if (id != t) notice.stale.push_back(id);
  }
  return notice;
}

std::optional<double> RatingMatrix::rating(PromptId context, PromptId target) const {
  if (context >= rows_.size()) return std::nullopt;
  const Row& r = rows_[context];
  auto it = r.find(target);
  if (it == r.end()) return std::nullopt;
  return it->second;
}

std::uint32_t RatingMatrix::observations(PromptId context, PromptId target) const {
  auto it = stats_.find(key(context, target));
  return it == stats_.end() ? 0 : it->second.count;
}

const RatingMatrix::Row& RatingMatrix::row(PromptId context) const {
  return context < rows_.size() ? rows_[context] : kEmptyRow;
}

const RatingMatrix::Row& RatingMatrix::column(PromptId target) const {
  return target < columns_.size() ? columns_[target] : kEmptyRow;
}

std::optional<double> RatingMatrix::global_mean() const {
  if (cell_count_ == 0) return std::nullopt;
  return value_sum_ / static_cast<double>(cell_count_);
}

double RatingMatrix::global_mean_or_midpoint() const {
  return global_mean().value_or((kMinRating + kMaxRating) / 2.0);
}

bool operator==(const RatingMatrix& a, const RatingMatrix& b) {
  return a.catalog_ == b.catalog_ && a.policy_ == b.policy_ && a.rows_ == b.rows_;
}

MatrixUpdate add_rating(const RatingMatrix& matrix, std::string_view context,
                        std::string_view target, double rating) {
  MatrixUpdate update{matrix, {}};
  update.notice = update.matrix.observe(context, target, rating);
  return update;
}

}  // namespace promptrec

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "promptrec/catalog.hpp"
#include "promptrec/dataset.hpp"

namespace promptrec {

// How repeated (context, target) observations collapse into one cell.
enum class DedupPolicy { kMean, kLast, kFirst };

std::optional<DedupPolicy> parse_dedup_policy(std::string_view name);
std::string_view to_string(DedupPolicy policy);

// Prompt ids whose cached similarities no longer match the matrix. A rating
// (c -> t) changes column t only, so every pair touching t is stale; prompts
// registered by the update are listed in `added`.
struct InvalidationNotice {
  std::vector<PromptId> stale;
  std::vector<PromptId> added;
};

// Sparse context -> (target -> aggregated rating) map with a column mirror so
// that co-rater lookups are a merge of two sorted maps.
class RatingMatrix {
 public:
  using Row = std::map<PromptId, double>;

  RatingMatrix() = default;
  explicit RatingMatrix(PromptCatalog catalog, DedupPolicy policy = DedupPolicy::kMean);

  static RatingMatrix build(const RatingDataset& dataset, DedupPolicy policy = DedupPolicy::kMean);

  // Folds one observation into the matrix. Both ids must be in the catalog.
  InvalidationNotice observe(const RatingRecord& record);

  // Registers unknown prompt texts, then observes. Strong guarantee: on error
  // the matrix is unchanged.
  InvalidationNotice observe(std::string_view context, std::string_view target, double rating);

  std::optional<double> rating(PromptId context, PromptId target) const;
  std::uint32_t observations(PromptId context, PromptId target) const;

  // Targets rated by `context`.
  const Row& row(PromptId context) const;
  // Contexts that rated `target`, with their aggregated ratings.
  const Row& column(PromptId target) const;

  // Undefined (nullopt) on an empty matrix.
  std::optional<double> global_mean() const;
  double global_mean_or_midpoint() const;

  std::size_t cell_count() const noexcept { return cell_count_; }
  bool empty() const noexcept { return cell_count_ == 0; }
  const PromptCatalog& catalog() const noexcept { return catalog_; }
  DedupPolicy policy() const noexcept { return policy_; }

  // Cell-for-cell equality of catalog and aggregated values.
  friend bool operator==(const RatingMatrix& a, const RatingMatrix& b);

 private:
  struct CellStats {
    double sum = 0.0;
    double first = 0.0;
    double last = 0.0;
    std::uint32_t count = 0;
  };
  static std::uint64_t key(PromptId c, PromptId t) {
    return (static_cast<std::uint64_t>(c) << 32) | t;
  }
  void grow_to_catalog();

  PromptCatalog catalog_;
  DedupPolicy policy_ = DedupPolicy::kMean;
  std::vector<Row> rows_;
  std::vector<Row> columns_;
  std::unordered_map<std::uint64_t, CellStats> stats_;
  std::size_t cell_count_ = 0;
  double value_sum_ = 0.0;
};

struct MatrixUpdate {
  RatingMatrix matrix;
  InvalidationNotice notice;
};

// Snapshot-style update: returns a new matrix, leaving `matrix` untouched.
MatrixUpdate add_rating(const RatingMatrix& matrix, std::string_view context,
                        std::string_view target, double rating);

}  // namespace promptrec

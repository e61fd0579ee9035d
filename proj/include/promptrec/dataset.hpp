#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "promptrec/catalog.hpp"

namespace promptrec {

inline constexpr double kMinRating = 1.0;
inline constexpr double kMaxRating = 5.0;

// One directed observation: `context` rated `target`.
struct RatingRecord {
  PromptId context = 0;
  PromptId target = 0;
  double rating = 0.0;

  friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

// Throws InvalidArgument unless rating is a finite value in [1, 5].
void validate_rating(double rating);

// Ordered rating rows plus the catalog of every prompt they mention. Duplicate
// (context, target) rows are kept; aggregation happens in RatingMatrix.
class RatingDataset {
 public:
  RatingDataset() = default;

  // Interns both texts and appends a record. Rejects self-ratings and
  // out-of-range ratings with InvalidArgument.
  const RatingRecord& add(std::string_view context, std::string_view target, double rating);
  const RatingRecord& add(RatingRecord record);

  const std::vector<RatingRecord>& records() const noexcept { return records_; }
  const PromptCatalog& catalog() const noexcept { return catalog_; }
  PromptCatalog& catalog() noexcept { return catalog_; }

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  // Records selected by index, over the same catalog (ids are preserved).
  RatingDataset subset(const std::vector<std::size_t>& indices) const;

 private:
  PromptCatalog catalog_;
  std::vector<RatingRecord> records_;
};

inline constexpr std::string_view kCsvHeader = "prompt_a,prompt_b,rating";

// CSV with a header row and columns context,target,rating. Errors name the
// offending line (DataError) or path (IoError).
RatingDataset load_dataset(const std::filesystem::path& path);
RatingDataset parse_dataset(std::string_view csv);

void save_dataset(const RatingDataset& dataset, const std::filesystem::path& path);
std::string format_dataset(const RatingDataset& dataset);

// One CSV data row (with trailing newline), ratings fixed to 2 decimals.
std::string format_row(std::string_view context, std::string_view target, double rating);
std::string format_rating(double rating);

}  // namespace promptrec

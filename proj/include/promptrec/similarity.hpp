#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "promptrec/matrix.hpp"

namespace promptrec {

// Contexts that rated both `a` and `b`, ascending by id. Throws
// InvalidArgument for ids outside the catalog.
std::vector<PromptId> co_raters(const RatingMatrix& matrix, PromptId a, PromptId b);

// Pearson correlation of two equal-length vectors, each centred on its own
// mean. Unclamped. nullopt when either vector has zero variance or the
// vectors hold fewer than 2 values.
std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y);

// Item-item Pearson similarity of prompts `a` and `b` over their co-raters,
// clamped to [-1, 1]. nullopt when fewer than `min_support` co-raters exist or
// either prompt's ratings are constant over the co-rater set.
std::optional<double> pearson(const RatingMatrix& matrix, PromptId a, PromptId b,
                              std::size_t min_support);

struct SimilarityEntry {
  double similarity = 0.0;
  std::uint32_t support = 0;

  friend bool operator==(const SimilarityEntry&, const SimilarityEntry&) = default;
};

struct PromptPair {
  PromptId first = 0;   // always < second
  PromptId second = 0;
  SimilarityEntry entry;

  friend bool operator==(const PromptPair&, const PromptPair&) = default;
};

// Immutable cache of every defined pairwise similarity. Lookups are symmetric.
class SimilarityModel {
 public:
  static constexpr std::size_t kDefaultMinSupport = 2;
  static constexpr std::size_t kDefaultNeighbors = 40;

  SimilarityModel() = default;
  // Empty model carrying the given knobs; throws on min_support < 2 or k < 1.
  SimilarityModel(std::size_t min_support, std::size_t k_neighbors);

  // Throws InvalidArgument on an empty matrix, min_support < 2 or k < 1.
  static SimilarityModel build(const RatingMatrix& matrix,
                               std::size_t min_support = kDefaultMinSupport,
                               std::size_t k_neighbors = kDefaultNeighbors);

  // Copy with every pair touching a stale or added prompt recomputed against
  // `matrix`. Equal to a full rebuild on the same matrix.
  SimilarityModel refreshed(const RatingMatrix& matrix, const InvalidationNotice& notice) const;

  std::optional<double> similarity(PromptId a, PromptId b) const;
  std::optional<SimilarityEntry> entry(PromptId a, PromptId b) const;

  std::size_t pair_count() const noexcept { return sims_.size(); }
  std::size_t min_support() const noexcept { return min_support_; }
  std::size_t k_neighbors() const noexcept { return k_neighbors_; }

  // All stored pairs ordered by (first, second).
  std::vector<PromptPair> pairs() const;

 private:
  static std::uint64_t key(PromptId a, PromptId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  void compute_pair(const RatingMatrix& matrix, PromptId a, PromptId b);

  std::unordered_map<std::uint64_t, SimilarityEntry> sims_;
  std::size_t min_support_ = kDefaultMinSupport;
  std::size_t k_neighbors_ = kDefaultNeighbors;
};

}  // namespace promptrec

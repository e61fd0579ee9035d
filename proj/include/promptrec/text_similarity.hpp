#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "promptrec/catalog.hpp"

namespace promptrec {

// Lowercased word tokens. ASCII letters/digits and any non-ASCII byte form
// words; every other ASCII character separates them.
std::vector<std::string> tokenize(std::string_view text);

// Fixed English stop-word list shipped with the library.
const std::unordered_set<std::string>& stop_words();

// Document frequencies over a corpus of prompts.
class CorpusStats {
 public:
  CorpusStats() = default;
  explicit CorpusStats(const std::vector<std::string>& documents);

  // Smoothed inverse document frequency ln((1 + N) / (1 + df)) + 1.
  double idf(const std::string& term) const;

  std::size_t document_count() const noexcept { return documents_; }
  std::size_t document_frequency(const std::string& term) const;

 private:
  std::size_t documents_ = 0;
  std::unordered_map<std::string, std::size_t> df_;
};

// Sparse TF-IDF vector with cached Euclidean norm.
class TermVector {
 public:
  TermVector() = default;
  explicit TermVector(std::map<std::string, double> weights);

  const std::map<std::string, double>& weights() const noexcept { return weights_; }
  double norm() const noexcept { return norm_; }
  bool zero() const noexcept { return norm_ == 0.0; }

 private:
  std::map<std::string, double> weights_;
  double norm_ = 0.0;
};

TermVector vectorize(std::string_view text, const CorpusStats& stats);

// dot(u, v) / (|u| |v|), 0 when either norm is 0.
double cosine(const TermVector& u, const TermVector& v);

enum class MatchMethod { kExact, kLexicalCosine, kNone };

std::string_view to_string(MatchMethod method);

struct MatchResult {
  std::optional<Prompt> matched;
  double score = 0.0;
  MatchMethod method = MatchMethod::kNone;
};

inline constexpr double kDefaultMinScore = 0.15;

// Resolves free text against one catalog snapshot.
class PromptMatcher {
 public:
  virtual ~PromptMatcher() = default;
  virtual MatchResult match(std::string_view query, double min_score) const = 0;
};

// Builds matchers for catalog snapshots. An embedding-backed provider plugs in
// here and must return the argmax of its own scoring function.
class MatchProvider {
 public:
  virtual ~MatchProvider() = default;
  virtual std::shared_ptr<const PromptMatcher> prepare(const PromptCatalog& catalog) const = 0;
};

// TF-IDF index over every prompt in a catalog.
class LexicalIndex final : public PromptMatcher {
 public:
  explicit LexicalIndex(const PromptCatalog& catalog);

  MatchResult match(std::string_view query, double min_score) const override;

  // Cosine of `query` against every catalog prompt, indexed by prompt id.
  std::vector<double> scores(std::string_view query) const;

  const CorpusStats& stats() const noexcept { return stats_; }

 private:
  PromptCatalog catalog_;
  CorpusStats stats_;
  std::vector<TermVector> vectors_;
};

class LexicalProvider final : public MatchProvider {
 public:
  std::shared_ptr<const PromptMatcher> prepare(const PromptCatalog& catalog) const override;
};

// Exact normalized match, else best lexical cosine >= min_score, else none.
MatchResult nearest_known_prompt(std::string_view text, const PromptCatalog& catalog,
                                 double min_score = kDefaultMinScore);

}  // namespace promptrec

#include "promptrec/text_similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace promptrec {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::vector<std::string> content_terms(std::string_view text) {
  std::vector<std::string> out;
  const auto& stops = stop_words();
  for (auto& t : tokenize(text)) {
    if (!stops.contains(t)) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

CorpusStats::CorpusStats(const std::vector<std::string>& documents)
    : documents_(documents.size()) {
  for (const auto& doc : documents) {
    auto terms = content_terms(doc);
    std::unordered_set<std::string> unique(terms.begin(), terms.end());
    for (const auto& t : unique) ++df_[t];
  }
}

std::size_t CorpusStats::document_frequency(const std::string& term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

double CorpusStats::idf(const std::string& term) const {
  const double n = static_cast<double>(documents_);
  const double df = static_cast<double>(document_frequency(term));
  return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

TermVector::TermVector(std::map<std::string, double> weights) : weights_(std::move(weights)) {
  double s = 0.0;
  for (const auto& [term, w] : weights_) s += w * w;
  norm_ = std::sqrt(s);
}

TermVector vectorize(std::string_view text, const CorpusStats& stats) {
  std::map<std::string, double> tf;
  for (auto& t : content_terms(text)) tf[t] += 1.0;
  for (auto& [term, w] : tf) w *= stats.idf(term);
  return TermVector(std::move(tf));
}

double cosine(const TermVector& u, const TermVector& v) {
  if (u.zero() || v.zero()) return 0.0;
  const auto& a = u.weights();
  const auto& b = v.weights();
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot / (u.norm() * v.norm()), 0.0, 1.0);
}

std::string_view to_string(MatchMethod method) {
  switch (method) {
    case MatchMethod::kExact: return "exact";
    case MatchMethod::kLexicalCosine: return "lexical-cosine";
    case MatchMethod::kNone: return "none";
  }
  return "none";
}

LexicalIndex::LexicalIndex(const PromptCatalog& catalog) : catalog_(catalog) {
  std::vector<std::string> docs;
  docs.reserve(catalog_.size());
  for (PromptId id = 0; id < catalog_.size(); ++id) docs.push_back(catalog_.text(id));
  stats_ = CorpusStats(docs);
  vectors_.reserve(docs.size());
  for (const auto& d : docs) vectors_.push_back(vectorize(d, stats_));
}

std::vector<double> LexicalIndex::scores(std::string_view query) const {
  TermVector q = vectorize(query, stats_);
  std::vector<double> out(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) out[i] = cosine(q, vectors_[i]);
  return out;
}

MatchResult LexicalIndex::match(std::string_view query, double min_score) const {
  MatchResult result;
  if (catalog_.empty()) return result;
  if (auto id = catalog_.find(query)) {
    result.matched = Prompt{*id, catalog_.text(*id)};
    result.score = 1.0;
    result.method = MatchMethod::kExact;
    return result;
  }
  auto s = scores(query);
  std::optional<PromptId> best;
  for (PromptId id = 0; id < s.size(); ++id) {
    if (!best || s[id] > s[*best] ||
        (s[id] == s[*best] && catalog_.normalized(id) < catalog_.normalized(*best))) {
      best = id;
    }
  }
  if (best && s[*best] > 0.0 && s[*best] >= min_score) {
    result.matched = Prompt{*best, catalog_.text(*best)};
    result.score = s[*best];
    result.method = MatchMethod::kLexicalCosine;
  }
  return result;
}

std::shared_ptr<const PromptMatcher> LexicalProvider::prepare(const PromptCatalog& catalog) const {
  return std::make_shared<LexicalIndex>(catalog);
}

MatchResult nearest_known_prompt(std::string_view text, const PromptCatalog& catalog,
                                 double min_score) {
  return LexicalIndex(catalog).match(text, min_score);
}

}  // namespace promptrec

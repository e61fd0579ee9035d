#include <string>
#include <unordered_set>

#include "promptrec/text_similarity.hpp"

namespace promptrec {

// Version 1 of the shipped list. Changing it changes every lexical score.
const std::unordered_set<std::string>& stop_words() {
  static const std::unordered_set<std::string> words = {
      "a",     "about", "above", "after", "again", "all",   "am",    "an",    "and",   "any",
      "are",   "as",    "at",    "be",    "been",  "being", "both",  "but",   "by",    "can",
      "could", "did",   "do",    "does",  "doing", "down",  "during", "each", "few",   "for",
      "from",  "further", "had", "has",   "have",  "having", "he",   "her",   "here",  "hers",
      "him",   "his",   "how",   "i",     "if",    "in",    "into",  "is",    "it",    "its",
      "itself", "just", "me",    "more",  "most",  "my",    "no",    "nor",   "not",   "now",
      "of",    "off",   "on",    "once",  "only",  "or",    "other", "our",   "ours",  "out",
      "over",  "own",   "same",  "she",   "should", "so",   "some",  "such",  "than",  "that",
      "the",   "their", "theirs", "them", "then",  "there", "these", "they",  "this",  "those",
      "through", "to",  "too",   "under", "until", "up",    "very",  "was",   "we",    "were",
      "what",  "when",  "where", "which", "while", "who",   "whom",  "why",   "will",  "with",
      "would", "you",   "your",  "yours",
  };
  return words;
}

}  // namespace promptrec

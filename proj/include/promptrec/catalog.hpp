#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace promptrec {

using PromptId = std::uint32_t;

struct Prompt {
  PromptId id = 0;
  std::string text;
};

// Identity key for prompt text: trimmed, internal whitespace collapsed to a
// single space, ASCII case-folded. Display text is stored separately.
std::string normalize_text(std::string_view text);

// Bijection between dense ids (0..size-1, assigned in insertion order) and
// prompt text. Two texts with the same normalized form share one id.
class PromptCatalog {
 public:
  // Returns the id of `text`, registering it if unseen. Throws
  // InvalidArgument when the text is empty after trimming.
  PromptId intern(std::string_view text);

  std::optional<PromptId> find(std::string_view text) const;
  bool contains(PromptId id) const noexcept { return id < entries_.size(); }

  // Display text as first registered (surrounding whitespace trimmed).
  const std::string& text(PromptId id) const;
  const std::string& normalized(PromptId id) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::vector<Prompt> prompts() const;

  friend bool operator==(const PromptCatalog& a, const PromptCatalog& b) {
    return a.entries_ == b.entries_;
  }

 private:
  struct Entry {
    std::string display;
    std::string key;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries_;
  std::unordered_map<std::string, PromptId> by_key_;
};

}  // namespace promptrec

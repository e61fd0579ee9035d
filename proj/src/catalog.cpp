#include "promptrec/catalog.hpp"

#include <cctype>

#include "promptrec/error.hpp"

namespace promptrec {
namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : trim(text)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

PromptId PromptCatalog::intern(std::string_view text) {
  std::string key = normalize_text(text);
  if (key.empty()) throw InvalidArgument("prompt text is empty");
  if (auto it = by_key_.find(key); it != by_key_.end()) return it->second;
  auto id = static_cast<PromptId>(entries_.size());
  by_key_.emplace(key, id);
  entries_.push_back(Entry{std::string(trim(text)), std::move(key)});
  return id;
}

std::optional<PromptId> PromptCatalog::find(std::string_view text) const {
  auto it = by_key_.find(normalize_text(text));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

const std::string& PromptCatalog::text(PromptId id) const {
  if (!contains(id)) throw InvalidArgument("unknown prompt id " + std::to_string(id));
  return entries_[id].display;
}

const std::string& PromptCatalog::normalized(PromptId id) const {
  if (!contains(id)) throw InvalidArgument("unknown prompt id " + std::to_string(id));
  return entries_[id].key;
}

std::vector<Prompt> PromptCatalog::prompts() const {
  std::vector<Prompt> out;
  out.reserve(entries_.size());
  for (PromptId id = 0; id < entries_.size(); ++id) out.push_back({id, entries_[id].display});
  return out;
}

}  // namespace promptrec

#include "promptrec/dataset.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "promptrec/error.hpp"

namespace promptrec {
namespace {

struct CsvRow {
  std::size_t line = 0;  // line on which the row starts
  std::vector<std::string> fields;
};

// RFC 4180 style reader: double-quote quoting, "" escapes, quoted line breaks,
// CRLF or LF endings. Blank lines are skipped.
std::vector<CsvRow> read_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  while (i < text.size()) {
    CsvRow row;
    row.line = line;
    std::string field;
    bool row_done = false;
    bool quoted_field = false;
    while (!row_done) {
      if (i >= text.size()) {
        row.fields.push_back(std::move(field));
        break;
      }
      char c = text[i];
      if (c == '"' && field.empty() && !quoted_field) {
        quoted_field = true;
        ++i;
        while (true) {
          if (i >= text.size()) throw DataError(row.line, "unterminated quoted field");
          char q = text[i++];
          if (q == '"') {
            if (i < text.size() && text[i] == '"') {
              field.push_back('"');
              ++i;
            } else {
              break;
            }
          } else {
            if (q == '\n') ++line;
            field.push_back(q);
          }
        }
        continue;
      }
      if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        quoted_field = false;
        ++i;
        continue;
      }
      if (c == '\r' || c == '\n') {
        row.fields.push_back(std::move(field));
        if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
        ++i;
        ++line;
        row_done = true;
        continue;
      }
      if (quoted_field) throw DataError(row.line, "unexpected character after closing quote");
      field.push_back(c);
      ++i;
    }
    bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view trim_ascii(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_rating(std::string_view field, std::size_t line) {
  field = trim_ascii(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw DataError(line, "rating '" + std::string(field) + "' is not a number");
  }
  if (value < kMinRating || value > kMaxRating) {
    throw DataError(line, "rating " + std::string(field) + " outside [1, 5]");
  }
  return value;
}

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos ||
         (!s.empty() && (s.front() == ' ' || s.back() == ' '));
}

void append_field(std::string& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out.append(s);
    return;
  }
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

void validate_rating(double rating) {
  if (!std::isfinite(rating) || rating < kMinRating || rating > kMaxRating) {
    throw InvalidArgument("rating " + std::to_string(rating) + " outside [1, 5]");
  }
}

const RatingRecord& RatingDataset::add(std::string_view context, std::string_view target,
                                       double rating) {
  validate_rating(rating);
  std::string context_key = normalize_text(context);
  std::string target_key = normalize_text(target);
  if (context_key.empty() || target_key.empty()) throw InvalidArgument("prompt text is empty");
  if (context_key == target_key) {
    throw InvalidArgument("self-rating: context and target are the same prompt");
  }
  PromptId c = catalog_.intern(context);
  PromptId t = catalog_.intern(target);
  records_.push_back({c, t, rating});
  return records_.back();
}

const RatingRecord& RatingDataset::add(RatingRecord record) {
  validate_rating(record.rating);
  if (!catalog_.contains(record.context) || !catalog_.contains(record.target)) {
    throw InvalidArgument("record references a prompt outside the catalog");
  }
  if (record.context == record.target) {
    throw InvalidArgument("self-rating: context and target are the same prompt");
  }
  records_.push_back(record);
  return records_.back();
}

RatingDataset RatingDataset::subset(const std::vector<std::size_t>& indices) const {
  RatingDataset out;
  out.catalog_ = catalog_;
  out.records_.reserve(indices.size());
  for (std::size_t i : indices) out.records_.push_back(records_.at(i));
  return out;
}

RatingDataset parse_dataset(std::string_view csv) {
  RatingDataset dataset;
  auto rows = read_csv(csv);
  if (rows.empty()) return dataset;
  if (rows.front().fields.size() != 3) {
    throw DataError(rows.front().line, "header must have 3 columns");
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.fields.size() != 3) {
      throw DataError(row.line, "expected 3 columns, found " + std::to_string(row.fields.size()));
    }
    double rating = parse_rating(row.fields[2], row.line);
    try {
      dataset.add(row.fields[0], row.fields[1], rating);
    } catch (const InvalidArgument& e) {
      throw DataError(row.line, e.what());
    }
  }
  return dataset;
}

RatingDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

std::string format_rating(double rating) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), rating,
                                 std::chars_format::fixed, 2);
  return std::string(buf.data(), ptr);
}

std::string format_row(std::string_view context, std::string_view target, double rating) {
  std::string out;
  append_field(out, context);
  out.push_back(',');
  append_field(out, target);
  out.push_back(',');
  out += format_rating(rating);
  out.push_back('\n');
  return out;
}

std::string format_dataset(const RatingDataset& dataset) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  const auto& catalog = dataset.catalog();
  for (const auto& r : dataset.records()) {
    out += format_row(catalog.text(r.context), catalog.text(r.target), r.rating);
  }
  return out;
}

void save_dataset(const RatingDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write dataset " + path.string());
  out << format_dataset(dataset);
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

}  // namespace promptrec

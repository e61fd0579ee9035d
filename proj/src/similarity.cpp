#include "promptrec/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <unordered_set>

#include "promptrec/error.hpp"

namespace promptrec {
namespace {

void require_known(const RatingMatrix& matrix, PromptId id) {
  if (!matrix.catalog().contains(id)) {
    throw InvalidArgument("unknown prompt id " + std::to_string(id));
  }
}

// Co-rated values of a and b, aligned by context.
void co_rated_vectors(const RatingMatrix& matrix, PromptId a, PromptId b, std::vector<double>& xa,
                      std::vector<double>& xb) {
  xa.clear();
  xb.clear();
  const auto& ca = matrix.column(a);
  const auto& cb = matrix.column(b);
  auto ia = ca.begin();
  auto ib = cb.begin();
  while (ia != ca.end() && ib != cb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      xa.push_back(ia->second);
      xb.push_back(ib->second);
      ++ia;
      ++ib;
    }
  }
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<PromptId> co_raters(const RatingMatrix& matrix, PromptId a, PromptId b) {
  require_known(matrix, a);
  require_known(matrix, b);
  std::vector<PromptId> out;
  const auto& ca = matrix.column(a);
  const auto& cb = matrix.column(b);
  auto ia = ca.begin();
  auto ib = cb.begin();
  while (ia != ca.end() && ib != cb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      out.push_back(ia->first);
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::optional<double> pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: vectors differ in length");
  // Exact test first: the mean of identical values may round away from them.
  if (x.size() < 2 || constant(x) || constant(y)) return std::nullopt;
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

std::optional<double> pearson(const RatingMatrix& matrix, PromptId a, PromptId b,
                              std::size_t min_support) {
  require_known(matrix, a);
  require_known(matrix, b);
  if (a == b) throw InvalidArgument("pearson: prompts must differ");
  std::vector<double> xa;
  std::vector<double> xb;
  co_rated_vectors(matrix, a, b, xa, xb);
  if (xa.size() < std::max<std::size_t>(min_support, 2)) return std::nullopt;
  auto r = pearson_correlation(xa, xb);
  if (!r) return std::nullopt;
  return std::clamp(*r, -1.0, 1.0);
}

SimilarityModel::SimilarityModel(std::size_t min_support, std::size_t k_neighbors)
    : min_support_(min_support), k_neighbors_(k_neighbors) {
  if (min_support < 2) throw InvalidArgument("min_support must be at least 2");
  if (k_neighbors < 1) throw InvalidArgument("k_neighbors must be at least 1");
}

SimilarityModel SimilarityModel::build(const RatingMatrix& matrix, std::size_t min_support,
                                       std::size_t k_neighbors) {
  if (matrix.empty()) throw InvalidArgument("cannot build a similarity model from an empty matrix");
  SimilarityModel model(min_support, k_neighbors);
  const auto n = static_cast<PromptId>(matrix.catalog().size());
  for (PromptId a = 0; a < n; ++a) {
    if (matrix.column(a).size() < min_support) continue;
    for (PromptId b = a + 1; b < n; ++b) model.compute_pair(matrix, a, b);
  }
  return model;
}

void SimilarityModel::compute_pair(const RatingMatrix& matrix, PromptId a, PromptId b) {
  if (matrix.column(a).size() < min_support_ || matrix.column(b).size() < min_support_) return;
  std::vector<double> xa;
  std::vector<double> xb;
  co_rated_vectors(matrix, a, b, xa, xb);
  if (xa.size() < min_support_) return;
  auto r = pearson_correlation(xa, xb);
  if (!r) return;
  sims_[key(a, b)] = SimilarityEntry{std::clamp(*r, -1.0, 1.0),
                                     static_cast<std::uint32_t>(xa.size())};
}

SimilarityModel SimilarityModel::refreshed(const RatingMatrix& matrix,
                                           const InvalidationNotice& notice) const {
  std::unordered_set<PromptId> dirty(notice.stale.begin(), notice.stale.end());
  dirty.insert(notice.added.begin(), notice.added.end());

  SimilarityModel model = *this;
  if (dirty.empty()) return model;
  std::erase_if(model.sims_, [&](const auto& kv) {
    auto a = static_cast<PromptId>(kv.first >> 32);
    auto b = static_cast<PromptId>(kv.first & 0xffffffffu);
    return dirty.contains(a) || dirty.contains(b);
  });
  const auto n = static_cast<PromptId>(matrix.catalog().size());
  for (PromptId s : dirty) {
    for (PromptId x = 0; x < n; ++x) {
      if (x == s) continue;
      // Pairs with both ends dirty are visited twice; computing once is enough.
      if (dirty.contains(x) && x < s) continue;
      model.compute_pair(matrix, s, x);
    }
  }
  return model;
}

std::optional<SimilarityEntry> SimilarityModel::entry(PromptId a, PromptId b) const {
  auto it = sims_.find(key(a, b));
  if (it == sims_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> SimilarityModel::similarity(PromptId a, PromptId b) const {
  auto e = entry(a, b);
  if (!e) return std::nullopt;
  return e->similarity;
}

std::vector<PromptPair> SimilarityModel::pairs() const {
  std::vector<PromptPair> out;
  out.reserve(sims_.size());
  for (const auto& [k, e] : sims_) {
    out.push_back({static_cast<PromptId>(k >> 32), static_cast<PromptId>(k & 0xffffffffu), e});
  }
  std::sort(out.begin(), out.end(), [](const PromptPair& x, const PromptPair& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });
  return out;
}

}  // namespace promptrec

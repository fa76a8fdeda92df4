// Copyright 2026 The itemfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// The eight exposure-based individual item fairness measures in their
// published form. Known defects (undefined entropy, always-fair FSat, constant
// single-round II-D) are reproduced on purpose.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "itemfair/core.hpp"
#include "itemfair/error.hpp"
#include "itemfair/exposure.hpp"

namespace itemfair {

enum class Direction { kHigherIsFairer, kLowerIsFairer };

// A measure value. When `defined` is false the value is NaN and must not be
// compared or aggregated.
struct MeasureResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  Direction direction = Direction::kHigherIsFairer;
  bool defined = false;

  static MeasureResult of(double value, Direction direction) {
    return {value, direction, true};
  }
  static MeasureResult undefined(Direction direction) {
    return {std::numeric_limits<double>::quiet_NaN(), direction, false};
  }
};

// Jain's index: (kmW)^2 / (n * sum_i c_i^2).
inline MeasureResult jain_ori(const ExposureTable& table) {
  double sum_sq = 0.0;
  for (auto c : table.counts) sum_sq += static_cast<double>(c) * static_cast<double>(c);
  if (sum_sq == 0.0) return MeasureResult::undefined(Direction::kHigherIsFairer);
  const double slots = static_cast<double>(table.total_slots);
  return MeasureResult::of(slots * slots / (static_cast<double>(table.num_items()) * sum_sq),
                           Direction::kHigherIsFairer);
}

// Qualification fairness (coverage): |R| / n.
inline MeasureResult qf_ori(const ExposureTable& table) {
  return MeasureResult::of(
      static_cast<double>(table.recommended) / static_cast<double>(table.num_items()),
      Direction::kHigherIsFairer);
}

namespace detail {

inline double resolve_log_base(std::optional<double> base, std::size_t num_items) {
  const double b = base.value_or(static_cast<double>(num_items));
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw ValidationError("entropy log base must be positive");
  }
  return b;
}

// -sum p log_b p over the given counts (zeros skipped), p = c / total.
inline double entropy_of_counts(std::span<const std::int64_t> counts, std::int64_t total,
                                double base) {
  double h = 0.0;
  const double t = static_cast<double>(total);
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / t;
    h -= p * std::log(p);
  }
  if (h == 0.0) return 0.0;
  if (base == 1.0) throw ValidationError("entropy log base must not be 1");
  return h / std::log(base);
}

}  // namespace detail

// Entropy of the recommendation frequency over the whole catalog. Undefined as
// soon as one catalog item is never recommended (log 0). Default base is n.
inline MeasureResult ent_ori(const ExposureTable& table,
                             std::optional<double> log_base = std::nullopt) {
  const double base = detail::resolve_log_base(log_base, table.num_items());
  if (table.recommended < table.num_items()) {
    return MeasureResult::undefined(Direction::kHigherIsFairer);
  }
  return MeasureResult::of(detail::entropy_of_counts(table.counts, table.total_slots, base),
                           Direction::kHigherIsFairer);
}

// Entropy restricted to recommended items; always finite for a nonempty run.
inline double ent_def(const ExposureTable& table, std::optional<double> log_base = std::nullopt) {
  const double base = detail::resolve_log_base(log_base, table.num_items());
  return detail::entropy_of_counts(table.counts, table.total_slots, base);
}

// Gini coefficient of a vector of non-negative values using the sorted-rank
// form sum_j (2j - n - 1) x_(j) / (n sum x). nullopt when all values are zero.
inline std::optional<double> gini_coefficient(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  double total = 0.0;
  double weighted = 0.0;
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = values[order[j]];
    total += x;
    weighted += (2.0 * static_cast<double>(j + 1) - nn - 1.0) * x;
  }
  if (total <= 0.0) return std::nullopt;
  return weighted / (nn * total);
}

// Gini over the table's weighted exposure. Built from a uniform table this is
// Gini; from a DCG table it is Gini-w.
inline MeasureResult gini_ori(const ExposureTable& table) {
  auto g = gini_coefficient(table.exposure);
  if (!g) return MeasureResult::undefined(Direction::kLowerIsFairer);
  return MeasureResult::of(*g, Direction::kLowerIsFairer);
}

inline MeasureResult giniw_ori(const ExposureTable& dcg_table) { return gini_ori(dcg_table); }

// Gini via the mean absolute pairwise difference:
// sum_{i,i'} |x_i - x_i'| / (2 n^2 mean(x)). Quadratic; meant as a cross-check.
inline double gini_pairwise(const ExposureTable& table) {
  const auto& x = table.exposure;
  const double n = static_cast<double>(x.size());
  double total = 0.0;
  for (double v : x) total += v;
  if (total <= 0.0) throw ValidationError("Gini is undefined for all-zero exposure");
  double diff = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) diff += std::abs(x[i] - x[j]);
  }
  const double mean = total / n;
  return diff / (2.0 * n * n * mean);
}

// Fraction of items recommended at least floor(kmW / n) times (maximin share).
inline MeasureResult fsat_ori(const ExposureTable& table) {
  const std::int64_t share = table.total_slots / static_cast<std::int64_t>(table.num_items());
  const auto satisfied =
      std::count_if(table.counts.begin(), table.counts.end(), [&](auto c) { return c >= share; });
  return MeasureResult::of(
      static_cast<double>(satisfied) / static_cast<double>(table.num_items()),
      Direction::kHigherIsFairer);
}

// Decides which pairs of recommended items count as similar for VoCD.
class SimilarityProvider {
 public:
  enum class Kind { kAllSimilar, kEmbeddings, kExplicitPairs };

  static SimilarityProvider all_similar(double beta = 0.0) {
    SimilarityProvider p(Kind::kAllSimilar, 2.0, beta);
    return p;
  }

  // vectors[i] is the embedding of catalog item i; an empty vector marks an
  // item without embedding. Items are alpha-similar when 1 - cos <= alpha.
  static SimilarityProvider embeddings(std::vector<std::vector<double>> vectors, double alpha,
                                       double beta) {
    SimilarityProvider p(Kind::kEmbeddings, alpha, beta);
    std::size_t dim = 0;
    p.norms_.resize(vectors.size(), 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].empty()) continue;
      if (dim == 0) dim = vectors[i].size();
      if (vectors[i].size() != dim) {
        throw ValidationError("embedding dimension mismatch for item index " + std::to_string(i));
      }
      double sq = 0.0;
      for (double v : vectors[i]) sq += v * v;
      if (!(sq > 0.0) || !std::isfinite(sq)) {
        throw ValidationError("embedding of item index " + std::to_string(i) +
                              " must be a finite non-zero vector");
      }
      p.norms_[i] = std::sqrt(sq);
    }
    p.vectors_ = std::move(vectors);
    return p;
  }

  // A fixed similarity set A. Pairs are unordered; self-pairs are rejected.
  static SimilarityProvider explicit_pairs(std::vector<std::pair<ItemIndex, ItemIndex>> pairs,
                                           double beta) {
    SimilarityProvider p(Kind::kExplicitPairs, 2.0, beta);
    for (auto [a, b] : pairs) {
      if (a == b) throw ValidationError("an item cannot be paired with itself");
      p.pairs_.emplace(std::min(a, b), std::max(a, b));
    }
    return p;
  }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const std::set<std::pair<ItemIndex, ItemIndex>>& pairs() const { return pairs_; }

  double cosine_distance(ItemIndex a, ItemIndex b) const {
    if (a >= vectors_.size() || b >= vectors_.size() || vectors_[a].empty() ||
        vectors_[b].empty()) {
      throw ValidationError("missing embedding for a recommended item");
    }
    double dot = 0.0;
    for (std::size_t d = 0; d < vectors_[a].size(); ++d) dot += vectors_[a][d] * vectors_[b][d];
    const double sim = std::clamp(dot / (norms_[a] * norms_[b]), -1.0, 1.0);
    return 1.0 - sim;
  }

  bool similar(ItemIndex a, ItemIndex b) const {
    if (a == b) return false;
    switch (kind_) {
      case Kind::kAllSimilar:
        return true;
      case Kind::kEmbeddings:
        return cosine_distance(a, b) <= alpha_;
      case Kind::kExplicitPairs:
        return pairs_.contains({std::min(a, b), std::max(a, b)});
    }
    return false;
  }

 private:
  SimilarityProvider(Kind kind, double alpha, double beta)
      : kind_(kind), alpha_(alpha), beta_(beta) {
    if (!(alpha >= 0.0 && alpha <= 2.0)) {
      throw ValidationError("similarity threshold alpha must lie in [0, 2]");
    }
    if (!(beta >= 0.0 && beta < 1.0)) {
      throw ValidationError("disparity tolerance beta must lie in [0, 1)");
    }
  }

  Kind kind_;
  double alpha_;
  double beta_;
  std::vector<std::vector<double>> vectors_;
  std::vector<double> norms_;
  std::set<std::pair<ItemIndex, ItemIndex>> pairs_;
};

// Coverage disparity |c - c'| / max(c, c') of two recommended items.
inline double coverage_disparity(std::int64_t a, std::int64_t b) {
  const auto hi = std::max(a, b);
  if (hi == 0) return 0.0;
  return static_cast<double>(std::abs(a - b)) / static_cast<double>(hi);
}

namespace detail {

// All pairs similar: group recommended items by count. Pairs inside a group
// have CD = 0; pairs across groups (a < b) have CD = (b - a) / b.
inline MeasureResult vocd_all_similar(const ExposureTable& table, double beta) {
  std::map<std::int64_t, std::int64_t> histogram;
  for (auto c : table.counts) {
    if (c > 0) ++histogram[c];
  }
  const double r = static_cast<double>(table.recommended);
  const double num_pairs = r * (r - 1.0) / 2.0;
  if (num_pairs < 1.0) throw NoSimilarPairs("VoCD needs at least two recommended items");
  double violation = 0.0;
  for (auto lo = histogram.begin(); lo != histogram.end(); ++lo) {
    for (auto hi = std::next(lo); hi != histogram.end(); ++hi) {
      const double excess = coverage_disparity(lo->first, hi->first) - beta;
      if (excess > 0.0) {
        violation += static_cast<double>(lo->second) * static_cast<double>(hi->second) * excess;
      }
    }
  }
  return MeasureResult::of(violation / num_pairs, Direction::kLowerIsFairer);
}

}  // namespace detail

// Mean over alpha-similar recommended pairs of max(CD - beta, 0).
// Throws NoSimilarPairs when no recommended pair is similar.
inline MeasureResult vocd_ori(const ExposureTable& table, const SimilarityProvider& similarity) {
  const double beta = similarity.beta();
  if (similarity.kind() == SimilarityProvider::Kind::kAllSimilar) {
    return detail::vocd_all_similar(table, beta);
  }
  double violation = 0.0;
  std::size_t num_pairs = 0;
  auto visit = [&](ItemIndex a, ItemIndex b) {
    ++num_pairs;
    violation += std::max(coverage_disparity(table.counts[a], table.counts[b]) - beta, 0.0);
  };
  if (similarity.kind() == SimilarityProvider::Kind::kExplicitPairs) {
    for (auto [a, b] : similarity.pairs()) {
      if (a < table.num_items() && b < table.num_items() && table.counts[a] > 0 &&
          table.counts[b] > 0) {
        visit(a, b);
      }
    }
  } else {
    std::vector<ItemIndex> recommended;
    for (ItemIndex i = 0; i < table.num_items(); ++i) {
      if (table.counts[i] > 0) recommended.push_back(i);
    }
    for (std::size_t x = 0; x < recommended.size(); ++x) {
      for (std::size_t y = x + 1; y < recommended.size(); ++y) {
        if (similarity.similar(recommended[x], recommended[y])) visit(recommended[x], recommended[y]);
      }
    }
  }
  if (num_pairs == 0) throw NoSimilarPairs("no pair of recommended items is similar");
  return MeasureResult::of(violation / static_cast<double>(num_pairs), Direction::kLowerIsFairer);
}

// Individual-user-to-individual-item disparity:
// (1 / mn) sum_{u,i} (E(u,i) - E~)^2.
inline MeasureResult iid_ori(const UserItemExposure& uie) {
  const double target = uie.random_target();
  const double n = static_cast<double>(uie.num_items());
  double total = 0.0;
  for (UserIndex u = 0; u < uie.num_users(); ++u) {
    const auto& row = uie.row(u);
    double s = 0.0;
    for (const auto& e : row) s += (e.value - target) * (e.value - target);
    s += (n - static_cast<double>(row.size())) * target * target;
    total += s;
  }
  return MeasureResult::of(total / (static_cast<double>(uie.num_users()) * n),
                           Direction::kLowerIsFairer);
}

// All-users-to-individual-item disparity:
// (1 / n) sum_i ((1/m) sum_u E(u,i) - (1/m) sum_u E~)^2.
inline MeasureResult aid_ori(const UserItemExposure& uie) {
  const std::size_t m = uie.num_users();
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<double> column(uie.num_items(), 0.0);
  for (UserIndex u = 0; u < m; ++u) {
    for (const auto& e : uie.row(u)) column[e.item] += e.value;
  }
  // E~ does not depend on the user; the mean is kept literal.
  double random_mean = 0.0;
  for (UserIndex u = 0; u < m; ++u) random_mean += uie.random_target();
  random_mean *= inv_m;
  double total = 0.0;
  for (double c : column) {
    const double d = c * inv_m - random_mean;
    total += d * d;
  }
  return MeasureResult::of(total / static_cast<double>(uie.num_items()),
                           Direction::kLowerIsFairer);
}

}  // namespace itemfair

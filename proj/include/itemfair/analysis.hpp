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

// Agreement between system rankings induced by different measures: Kendall's
// tau-b, its significance, and multiple-testing corrections.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "itemfair/error.hpp"
#include "itemfair/fairness.hpp"

namespace itemfair {

// Tau-b between two equally long score lists. nullopt when either list is
// entirely tied (tau undefined).
inline std::optional<double> kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("tau needs lists of equal length");
  if (a.size() < 2) throw ValidationError("tau needs at least two observations");
  const std::size_t n = a.size();
  std::int64_t concordant_minus_discordant = 0;
  std::int64_t untied_a = 0;
  std::int64_t untied_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sa = (a[i] > a[j]) - (a[i] < a[j]);
      const int sb = (b[i] > b[j]) - (b[i] < b[j]);
      if (sa != 0) ++untied_a;
      if (sb != 0) ++untied_b;
      concordant_minus_discordant += sa * sb;
    }
  }
  if (untied_a == 0 || untied_b == 0) return std::nullopt;
  return static_cast<double>(concordant_minus_discordant) /
         std::sqrt(static_cast<double>(untied_a) * static_cast<double>(untied_b));
}

// Scores are oriented so that larger means better (fairer) before comparing,
// so Gini against 1 - Gini gives +1.
inline std::optional<double> kendall_tau(std::span<const double> a, std::span<const double> b,
                                         Direction dir_a, Direction dir_b) {
  auto orient = [](std::span<const double> v, Direction d) {
    std::vector<double> out(v.begin(), v.end());
    if (d == Direction::kLowerIsFairer) {
      for (double& x : out) x = -x;
    }
    return out;
  };
  const auto oa = orient(a, dir_a);
  const auto ob = orient(b, dir_b);
  return kendall_tau(oa, ob);
}

namespace detail {

// Number of permutations of n elements with exactly i inversions.
inline std::vector<double> inversion_counts(std::size_t n) {
  std::vector<double> counts{1.0};
  for (std::size_t size = 2; size <= n; ++size) {
    std::vector<double> next(counts.size() + size - 1, 0.0);
    for (std::size_t inv = 0; inv < counts.size(); ++inv) {
      for (std::size_t add = 0; add < size; ++add) next[inv + add] += counts[inv];
    }
    counts = std::move(next);
  }
  return counts;
}

}  // namespace detail

inline constexpr std::size_t kExactTauMaxLength = 8;

// Two-sided p-value of an observed tau for n untied observations: exact null
// distribution for n <= 8, normal approximation above.
inline double tau_pvalue(double tau, std::size_t n) {
  if (n < 2) throw ValidationError("tau p-value needs at least two observations");
  const double t = std::abs(tau);
  const double nn = static_cast<double>(n);
  if (n <= kExactTauMaxLength) {
    const auto counts = detail::inversion_counts(n);
    double extreme = 0.0;
    double total = 0.0;
    for (std::size_t inv = 0; inv < counts.size(); ++inv) {
      const double tau_inv = 1.0 - 4.0 * static_cast<double>(inv) / (nn * (nn - 1.0));
      total += counts[inv];
      if (std::abs(tau_inv) >= t - 1e-12) extreme += counts[inv];
    }
    return extreme / total;
  }
  const double z = 3.0 * t * std::sqrt(nn * (nn - 1.0)) / std::sqrt(2.0 * (2.0 * nn + 5.0));
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

namespace detail {

inline std::vector<std::size_t> ascending_order(std::span<const double> p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return p[x] < p[y]; });
  return order;
}

}  // namespace detail

// Step-up rule: with p sorted ascending, find the largest i such that
// p_(i) <= i/M * alpha and flag ranks 1..i.
inline std::vector<bool> benjamini_hochberg(std::span<const double> p, double alpha = 0.05) {
  const std::size_t total = p.size();
  std::vector<bool> flags(total, false);
  const auto order = detail::ascending_order(p);
  std::size_t cutoff = 0;
  for (std::size_t i = 1; i <= total; ++i) {
    if (p[order[i - 1]] <= static_cast<double>(i) / static_cast<double>(total) * alpha) cutoff = i;
  }
  for (std::size_t i = 0; i < cutoff; ++i) flags[order[i]] = true;
  return flags;
}

inline std::vector<bool> bonferroni(std::span<const double> p, double alpha = 0.05) {
  std::vector<bool> flags(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    flags[i] = p[i] <= alpha / static_cast<double>(p.size());
  }
  return flags;
}

inline std::vector<bool> holm(std::span<const double> p, double alpha = 0.05) {
  std::vector<bool> flags(p.size(), false);
  const auto order = detail::ascending_order(p);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (p[order[i]] > alpha / static_cast<double>(order.size() - i)) break;
    flags[order[i]] = true;
  }
  return flags;
}

// Rows are measures, columns are systems. nullopt cells are undefined scores.
struct ScoreMatrix {
  struct Row {
    std::string measure;
    Direction direction = Direction::kHigherIsFairer;
    std::vector<std::optional<double>> scores;
  };
  std::vector<std::string> systems;
  std::vector<Row> rows;
};

struct CorrelationCell {
  double tau = 1.0;
  double p = 0.0;
  bool significant = false;
  bool significant_bonferroni = false;
  bool significant_holm = false;
};

struct CorrelationMatrix {
  std::vector<std::string> measures;
  // Measures left out: an undefined cell or a constant row.
  std::vector<std::string> dropped;
  // cells[a][b]; symmetric, diagonal tau = 1.
  std::vector<std::vector<CorrelationCell>> cells;
};

inline CorrelationMatrix correlation_matrix(const ScoreMatrix& scores, double alpha = 0.05) {
  CorrelationMatrix out;
  std::vector<std::vector<double>> kept;
  std::vector<Direction> directions;
  for (const auto& row : scores.rows) {
    if (row.scores.size() != scores.systems.size()) {
      throw ValidationError("measure '" + row.measure + "' has " +
                            std::to_string(row.scores.size()) + " scores for " +
                            std::to_string(scores.systems.size()) + " systems");
    }
    const bool undefined =
        std::any_of(row.scores.begin(), row.scores.end(), [](const auto& v) { return !v; });
    bool constant = true;
    if (!undefined) {
      for (const auto& v : row.scores) constant = constant && *v == *row.scores.front();
    }
    if (undefined || constant) {
      out.dropped.push_back(row.measure);
      continue;
    }
    std::vector<double> values;
    for (const auto& v : row.scores) values.push_back(*v);
    out.measures.push_back(row.measure);
    kept.push_back(std::move(values));
    directions.push_back(row.direction);
  }
  const std::size_t count = kept.size();
  out.cells.assign(count, std::vector<CorrelationCell>(count));
  std::vector<double> pvalues;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const double tau = *kendall_tau(kept[a], kept[b], directions[a], directions[b]);
      const double p = tau_pvalue(tau, scores.systems.size());
      out.cells[a][b].tau = out.cells[b][a].tau = tau;
      out.cells[a][b].p = out.cells[b][a].p = p;
      pvalues.push_back(p);
      index.emplace_back(a, b);
    }
  }
  const auto bh = benjamini_hochberg(pvalues, alpha);
  const auto bonf = bonferroni(pvalues, alpha);
  const auto hl = holm(pvalues, alpha);
  for (std::size_t t = 0; t < index.size(); ++t) {
    auto [a, b] = index[t];
    for (auto* cell : {&out.cells[a][b], &out.cells[b][a]}) {
      cell->significant = bh[t];
      cell->significant_bonferroni = bonf[t];
      cell->significant_holm = hl[t];
    }
  }
  return out;
}

}  // namespace itemfair

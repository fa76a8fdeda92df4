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

// Synthetic runs: MostFair / MostUnfair generators, sliding rank windows and
// the artificial item insertion sweeps.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "itemfair/core.hpp"
#include "itemfair/error.hpp"
#include "itemfair/evaluation.hpp"

namespace itemfair {

enum class Repeatability { kRepeatable, kNonrepeatable };

// Items a user may not be recommended (already seen in train/validation).
class ExclusionSets {
 public:
  ExclusionSets(std::size_t num_users, std::size_t num_items)
      : num_items_(num_items), excluded_(num_users) {}

  void exclude(UserIndex user, ItemIndex item) {
    if (user >= excluded_.size() || item >= num_items_) {
      throw ValidationError("exclusion references unknown user or item");
    }
    excluded_[user].insert(item);
  }
  bool excluded(UserIndex user, ItemIndex item) const {
    return user < excluded_.size() && excluded_[user].contains(item);
  }
  std::size_t num_users() const { return excluded_.size(); }
  std::size_t num_items() const { return num_items_; }
  std::size_t excluded_count(UserIndex user) const { return excluded_.at(user).size(); }

 private:
  std::size_t num_items_;
  std::vector<std::unordered_set<ItemIndex>> excluded_;
};

namespace detail {

inline void check_generator_shape(std::size_t k, std::size_t m, std::size_t n,
                                  const ExclusionSets* exclusions) {
  if (k == 0 || m == 0 || n == 0) throw ValidationError("k, m and n must be positive");
  if (k > n) throw ValidationError("k must not exceed n");
  if (exclusions && (exclusions->num_users() != m || exclusions->num_items() != n)) {
    throw ValidationError("exclusion sets do not match the number of users and items");
  }
}

}  // namespace detail

// Repeatable: slot s = u*k + r gets item s mod n, so every item is recommended
// floor(km/n) or floor(km/n) + 1 times. Nonrepeatable: users in index order
// each take the k least popular recommendable items given all lists built so
// far (ties by catalog order).
inline TopKRun most_fair(std::size_t k, std::size_t m, std::size_t n, Repeatability mode,
                         const ExclusionSets* exclusions = nullptr) {
  detail::check_generator_shape(k, m, n, exclusions);
  std::vector<ItemIndex> slots(k * m);
  if (mode == Repeatability::kRepeatable) {
    for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = s % n;
    return TopKRun(k, m, 1, n, std::move(slots));
  }
  std::vector<std::int64_t> counts(n, 0);
  std::set<std::pair<std::int64_t, ItemIndex>> by_popularity;
  for (ItemIndex i = 0; i < n; ++i) by_popularity.emplace(0, i);
  std::vector<ItemIndex> picked;
  for (UserIndex u = 0; u < m; ++u) {
    picked.clear();
    for (auto it = by_popularity.begin(); it != by_popularity.end() && picked.size() < k; ++it) {
      if (exclusions && exclusions->excluded(u, it->second)) continue;
      picked.push_back(it->second);
    }
    if (picked.size() < k) {
      throw ValidationError("user " + std::to_string(u) + " has fewer than k recommendable items");
    }
    for (std::size_t r = 0; r < k; ++r) {
      const ItemIndex i = picked[r];
      by_popularity.erase({counts[i], i});
      ++counts[i];
      by_popularity.emplace(counts[i], i);
      slots[u * k + r] = i;
    }
  }
  return TopKRun(k, m, 1, n, std::move(slots));
}

// Repeatable: items 1..k to everyone (what a popularity recommender does).
// Nonrepeatable: each user gets the first k recommendable items in catalog
// order, i.e. excluded items are replaced by the next recommendable ones.
inline TopKRun most_unfair(std::size_t k, std::size_t m, std::size_t n, Repeatability mode,
                           const ExclusionSets* exclusions = nullptr) {
  detail::check_generator_shape(k, m, n, exclusions);
  std::vector<ItemIndex> slots;
  slots.reserve(k * m);
  for (UserIndex u = 0; u < m; ++u) {
    std::size_t taken = 0;
    for (ItemIndex i = 0; i < n && taken < k; ++i) {
      if (mode == Repeatability::kNonrepeatable && exclusions && exclusions->excluded(u, i)) {
        continue;
      }
      slots.push_back(i);
      ++taken;
    }
    if (taken < k) {
      throw ValidationError("user " + std::to_string(u) + " has fewer than k recommendable items");
    }
  }
  return TopKRun(k, m, 1, n, std::move(slots));
}

// Ranks [start, start + width - 1] (1-based) of each user's deeper ranking,
// re-ranked from 1.
inline TopKRun sliding_window(const std::vector<std::vector<ItemIndex>>& rankings,
                              std::size_t num_items, std::size_t start, std::size_t width = 5) {
  if (start == 0) throw ValidationError("window start is a 1-based rank");
  if (width == 0) throw ValidationError("window width must be positive");
  if (rankings.empty()) throw ValidationError("no rankings given");
  std::vector<ItemIndex> slots;
  slots.reserve(rankings.size() * width);
  for (std::size_t u = 0; u < rankings.size(); ++u) {
    if (rankings[u].size() < start + width - 1) {
      throw ValidationError("ranking of user " + std::to_string(u) + " has depth " +
                            std::to_string(rankings[u].size()) + ", window needs " +
                            std::to_string(start + width - 1));
    }
    slots.insert(slots.end(), rankings[u].begin() + static_cast<std::ptrdiff_t>(start - 1),
                 rankings[u].begin() + static_cast<std::ptrdiff_t>(start - 1 + width));
  }
  return TopKRun(width, rankings.size(), 1, num_items, std::move(slots));
}

enum class InsertionMode {
  // Start from identical lists, insert least exposed relevant items.
  kLeastExposedRelevant,
  // Start from all-distinct lists, insert copies of the most exposed items.
  kMostExposedIrrelevant,
};

struct InsertionConfig {
  std::size_t num_users = 1000;
  std::size_t k = 10;
  InsertionMode mode = InsertionMode::kLeastExposedRelevant;
  // Permutes item labels only; the construction is deterministic.
  std::optional<std::uint64_t> seed;
};

// The catalog has exactly k*m items. User 1 always receives items 1..k (all
// relevant to them). Every other user owns k items relevant only to that user.
// At step j (P = j/k), ranks k-j+1..k of users 2..m hold their own items (LE
// mode) or user 1's items at those ranks (ME mode); the remaining ranks hold
// the other kind.
struct InsertionScenario {
  std::size_t num_items = 0;
  std::vector<double> fractions;
  std::vector<TopKRun> runs;
  RelevanceJudgments qrels{0, 0};
};

inline InsertionScenario build_insertion_scenario(const InsertionConfig& config) {
  const std::size_t k = config.k;
  const std::size_t m = config.num_users;
  if (k == 0) throw ValidationError("k must be positive");
  if (m < 2) throw ValidationError("insertion needs at least two users");
  const std::size_t n = k * m;

  std::vector<ItemIndex> label(n);
  std::iota(label.begin(), label.end(), ItemIndex{0});
  if (config.seed) {
    std::mt19937_64 rng(*config.seed);
    std::shuffle(label.begin(), label.end(), rng);
  }
  auto shared = [&](std::size_t rank) { return label[rank - 1]; };
  auto own = [&](UserIndex u, std::size_t rank) { return label[k * u + rank - 1]; };

  InsertionScenario scenario{n, {}, {}, RelevanceJudgments(m, n)};
  for (UserIndex u = 0; u < m; ++u) {
    for (std::size_t r = 1; r <= k; ++r) scenario.qrels.set(u, u == 0 ? shared(r) : own(u, r), true);
  }
  const bool le = config.mode == InsertionMode::kLeastExposedRelevant;
  for (std::size_t j = 0; j <= k; ++j) {
    std::vector<ItemIndex> slots;
    slots.reserve(n);
    for (std::size_t r = 1; r <= k; ++r) slots.push_back(shared(r));
    for (UserIndex u = 1; u < m; ++u) {
      for (std::size_t r = 1; r <= k; ++r) {
        const bool replaced = r > k - j;
        slots.push_back(replaced == le ? own(u, r) : shared(r));
      }
    }
    scenario.fractions.push_back(static_cast<double>(j) / static_cast<double>(k));
    scenario.runs.emplace_back(k, m, 1, n, std::move(slots));
  }
  return scenario;
}

struct SweepPoint {
  double fraction = 0.0;
  Evaluation evaluation;
};

inline std::vector<SweepPoint> insertion_sweep(const InsertionConfig& config,
                                               const EvalParams& params = {}) {
  const auto scenario = build_insertion_scenario(config);
  std::vector<SweepPoint> points;
  points.reserve(scenario.runs.size());
  for (std::size_t s = 0; s < scenario.runs.size(); ++s) {
    points.push_back({scenario.fractions[s], evaluate(scenario.runs[s], params, &scenario.qrels)});
  }
  return points;
}

}  // namespace itemfair

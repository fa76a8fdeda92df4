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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "itemfair/core.hpp"
#include "itemfair/examination.hpp"

namespace itemfair {

// Per-item recommendation counts c_i and weighted exposure Ex_i over the whole
// catalog, unrecommended items included.
struct ExposureTable {
  std::vector<std::int64_t> counts;
  std::vector<double> exposure;
  // |R|: items with c_i > 0.
  std::size_t recommended = 0;
  // k*m*W.
  std::int64_t total_slots = 0;
  // Shape of the run the table came from.
  std::size_t k = 0;
  std::size_t num_lists = 0;

  std::size_t num_items() const { return counts.size(); }
};

inline ExposureTable build_exposure(const TopKRun& run, const ExaminationFunction& fn) {
  ExposureTable table;
  const std::size_t n = run.num_items();
  table.counts.assign(n, 0);
  table.exposure.assign(n, 0.0);
  table.k = run.k();
  table.num_lists = run.num_lists();
  table.total_slots = static_cast<std::int64_t>(run.total_slots());

  std::vector<double> weights(run.k());
  for (std::size_t r = 0; r < run.k(); ++r) weights[r] = fn.weight(r + 1);

  // Slot order is fixed by the run, so the floating-point sums are reproducible.
  const auto& slots = run.slots();
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const ItemIndex item = slots[s];
    ++table.counts[item];
    table.exposure[item] += weights[s % run.k()];
  }
  table.recommended = static_cast<std::size_t>(
      std::count_if(table.counts.begin(), table.counts.end(), [](auto c) { return c > 0; }));
  return table;
}

inline ExposureTable build_exposure(const TopKRun& run, const ItemCatalog& catalog,
                                    const ExaminationFunction& fn) {
  if (run.num_items() != catalog.size()) {
    throw ValidationError("run was built against a catalog of " +
                          std::to_string(run.num_items()) + " items, got " +
                          std::to_string(catalog.size()));
  }
  return build_exposure(run, fn);
}

// Expected exposure of an item to a user under a uniformly random ranking with
// RBP examination: (1 - gamma^k) / (n (1 - gamma)).
inline double random_policy_exposure(std::size_t num_items, std::size_t k, double gamma) {
  ExaminationFunction::check_patience(gamma);
  return (1.0 - std::pow(gamma, static_cast<double>(k))) /
         (static_cast<double>(num_items) * (1.0 - gamma));
}

// Round-averaged RBP exposure E(u, i). Stored sparsely: only items that appear
// in at least one of a user's lists have an entry.
class UserItemExposure {
 public:
  struct Entry {
    ItemIndex item;
    double value;
  };

  UserItemExposure(std::size_t num_items, std::size_t k, double gamma,
                   std::vector<std::vector<Entry>> rows)
      : num_items_(num_items),
        k_(k),
        gamma_(gamma),
        random_target_(random_policy_exposure(num_items, k, gamma)),
        rows_(std::move(rows)) {}

  std::size_t num_users() const { return rows_.size(); }
  std::size_t num_items() const { return num_items_; }
  std::size_t k() const { return k_; }
  double gamma() const { return gamma_; }
  // E~, identical for every (user, item).
  double random_target() const { return random_target_; }
  // Nonzero entries of one user, sorted by item.
  const std::vector<Entry>& row(UserIndex user) const { return rows_.at(user); }

  double value(UserIndex user, ItemIndex item) const {
    const auto& r = rows_.at(user);
    auto it = std::lower_bound(r.begin(), r.end(), item,
                               [](const Entry& e, ItemIndex i) { return e.item < i; });
    return (it != r.end() && it->item == item) ? it->value : 0.0;
  }

 private:
  std::size_t num_items_;
  std::size_t k_;
  double gamma_;
  double random_target_;
  std::vector<std::vector<Entry>> rows_;
};

inline UserItemExposure build_user_item_exposure(const TopKRun& run, double gamma) {
  const auto fn = ExaminationFunction::rbp(gamma);
  const double inv_rounds = 1.0 / static_cast<double>(run.num_rounds());
  std::vector<std::vector<UserItemExposure::Entry>> rows(run.num_users());
  std::vector<UserItemExposure::Entry> scratch;
  for (UserIndex u = 0; u < run.num_users(); ++u) {
    scratch.clear();
    for (std::size_t w = 0; w < run.num_rounds(); ++w) {
      auto list = run.list(u, w);
      for (std::size_t r = 0; r < list.size(); ++r) {
        scratch.push_back({list[r], fn.weight(r + 1)});
      }
    }
    std::stable_sort(scratch.begin(), scratch.end(),
                     [](const auto& a, const auto& b) { return a.item < b.item; });
    auto& row = rows[u];
    for (const auto& e : scratch) {
      if (!row.empty() && row.back().item == e.item) {
        row.back().value += e.value;
      } else {
        row.push_back(e);
      }
    }
    for (auto& e : row) e.value *= inv_rounds;
  }
  return UserItemExposure(run.num_items(), run.k(), gamma, std::move(rows));
}

}  // namespace itemfair

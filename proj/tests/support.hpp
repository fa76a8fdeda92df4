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

// Shared helpers for the test suites: random runs and small constructors.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "itemfair/core.hpp"

namespace itemfair::testing {

// Each list is the first k entries of an independent shuffle of the catalog.
inline TopKRun random_run(std::mt19937_64& rng, std::size_t k, std::size_t m, std::size_t n,
                          std::size_t rounds = 1) {
  std::vector<ItemIndex> pool(n);
  std::iota(pool.begin(), pool.end(), ItemIndex{0});
  std::vector<ItemIndex> slots;
  slots.reserve(k * m * rounds);
  for (std::size_t l = 0; l < m * rounds; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      std::uniform_int_distribution<std::size_t> pick(j, n - 1);
      std::swap(pool[j], pool[pick(rng)]);
    }
    slots.insert(slots.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return TopKRun(k, m, rounds, n, std::move(slots));
}

// Lists given with 1-based item numbers, as written in examples ("i3" -> 3).
inline TopKRun run_of(std::size_t n, const std::vector<std::vector<ItemIndex>>& one_based) {
  std::vector<std::vector<ItemIndex>> lists;
  for (const auto& l : one_based) {
    std::vector<ItemIndex> zero;
    for (auto i : l) zero.push_back(i - 1);
    lists.push_back(std::move(zero));
  }
  return TopKRun::from_lists(n, lists);
}

// The same run with item i renamed to perm[i].
inline TopKRun relabel(const TopKRun& run, const std::vector<ItemIndex>& perm) {
  std::vector<ItemIndex> slots;
  for (auto i : run.slots()) slots.push_back(perm[i]);
  return TopKRun(run.k(), run.num_users(), run.num_rounds(), run.num_items(), std::move(slots));
}

inline std::vector<ItemIndex> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<ItemIndex> perm(n);
  std::iota(perm.begin(), perm.end(), ItemIndex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace itemfair::testing

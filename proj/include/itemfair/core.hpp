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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "itemfair/error.hpp"

namespace itemfair {

using ItemIndex = std::size_t;
using UserIndex = std::size_t;

// An ordered set of unique string identifiers with O(1) lookup. Iteration
// order is insertion order, and indices are positions in that order.
template <typename Tag>
class IdSet {
 public:
  IdSet() = default;

  explicit IdSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    if (ids_.empty()) {
      throw ValidationError(std::string(Tag::kName) + " set must not be empty");
    }
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (ids_[i].empty()) {
        throw ValidationError(std::string("empty ") + Tag::kName + " identifier");
      }
      if (!index_.emplace(ids_[i], i).second) {
        throw ValidationError(std::string("duplicate ") + Tag::kName +
                              " identifier '" + ids_[i] + "'");
      }
    }
  }

  // Identifiers prefix1 .. prefixN.
  static IdSet numbered(std::size_t count, const std::string& prefix) {
    std::vector<std::string> ids;
    ids.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
      ids.push_back(prefix + std::to_string(i));
    }
    return IdSet(std::move(ids));
  }

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t index) const { return ids_.at(index); }
  const std::vector<std::string>& ids() const { return ids_; }

  std::optional<std::size_t> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(const std::string& id) const {
    auto found = find(id);
    if (!found) {
      throw ValidationError(std::string("unknown ") + Tag::kName + " '" + id + "'");
    }
    return *found;
  }

  bool operator==(const IdSet& other) const { return ids_ == other.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ItemTag {
  static constexpr const char* kName = "item";
};
struct UserTag {
  static constexpr const char* kName = "user";
};

using ItemCatalog = IdSet<ItemTag>;
using UserSet = IdSet<UserTag>;

// Top-k recommendation lists for every (user, round). Lists are stored
// contiguously; the item at position j of a list has rank j + 1.
class TopKRun {
 public:
  TopKRun(std::size_t k, std::size_t num_users, std::size_t num_rounds,
          std::size_t num_items, std::vector<ItemIndex> slots)
      : k_(k),
        num_users_(num_users),
        num_rounds_(num_rounds),
        num_items_(num_items),
        slots_(std::move(slots)) {
    validate();
  }

  // Single-round run from one list per user.
  static TopKRun from_lists(std::size_t num_items,
                            const std::vector<std::vector<ItemIndex>>& lists) {
    if (lists.empty()) throw ValidationError("run has no users");
    const std::size_t k = lists.front().size();
    std::vector<ItemIndex> slots;
    slots.reserve(k * lists.size());
    for (const auto& list : lists) {
      if (list.size() != k) {
        throw ValidationError("all lists of a run must have the same length k");
      }
      slots.insert(slots.end(), list.begin(), list.end());
    }
    return TopKRun(k, lists.size(), 1, num_items, std::move(slots));
  }

  std::size_t k() const { return k_; }
  std::size_t num_users() const { return num_users_; }
  std::size_t num_rounds() const { return num_rounds_; }
  std::size_t num_items() const { return num_items_; }
  std::size_t num_lists() const { return num_users_ * num_rounds_; }
  std::size_t total_slots() const { return slots_.size(); }
  const std::vector<ItemIndex>& slots() const { return slots_; }

  // round is 0-based.
  std::span<const ItemIndex> list(UserIndex user, std::size_t round = 0) const {
    return {slots_.data() + (user * num_rounds_ + round) * k_, k_};
  }

  bool operator==(const TopKRun&) const = default;

 private:
  void validate() const {
    if (k_ == 0) throw ValidationError("cutoff k must be positive");
    if (num_users_ == 0) throw ValidationError("run must contain at least one user");
    if (num_rounds_ == 0) throw ValidationError("number of rounds must be positive");
    if (num_items_ == 0) throw ValidationError("item catalog must not be empty");
    if (k_ > num_items_) {
      throw ValidationError("cutoff k=" + std::to_string(k_) +
                            " exceeds catalog size n=" + std::to_string(num_items_));
    }
    if (slots_.size() != k_ * num_users_ * num_rounds_) {
      throw ValidationError("run holds " + std::to_string(slots_.size()) +
                            " slots, expected k*m*W=" +
                            std::to_string(k_ * num_users_ * num_rounds_));
    }
    std::vector<ItemIndex> sorted(k_);
    for (std::size_t l = 0; l < num_lists(); ++l) {
      auto first = slots_.begin() + static_cast<std::ptrdiff_t>(l * k_);
      std::copy(first, first + static_cast<std::ptrdiff_t>(k_), sorted.begin());
      std::sort(sorted.begin(), sorted.end());
      if (sorted.back() >= num_items_) {
        throw ValidationError("item index " + std::to_string(sorted.back()) +
                              " outside catalog of size " + std::to_string(num_items_));
      }
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("duplicate item in the list of user " +
                              std::to_string(l / num_rounds_) + ", round " +
                              std::to_string(l % num_rounds_ + 1));
      }
    }
  }

  std::size_t k_;
  std::size_t num_users_;
  std::size_t num_rounds_;
  std::size_t num_items_;
  std::vector<ItemIndex> slots_;
};

// Binary relevance r(u, i). Absent pairs are irrelevant.
class RelevanceJudgments {
 public:
  RelevanceJudgments(std::size_t num_users, std::size_t num_items)
      : num_items_(num_items), relevant_(num_users) {}

  void set(UserIndex user, ItemIndex item, bool relevant) {
    if (user >= relevant_.size() || item >= num_items_) {
      throw ValidationError("relevance judgment references unknown user or item");
    }
    if (relevant) {
      relevant_[user].insert(item);
    } else {
      relevant_[user].erase(item);
    }
  }

  bool is_relevant(UserIndex user, ItemIndex item) const {
    return relevant_.at(user).contains(item);
  }
  std::size_t relevant_count(UserIndex user) const { return relevant_.at(user).size(); }
  std::size_t num_users() const { return relevant_.size(); }
  std::size_t num_items() const { return num_items_; }

  std::size_t total_relevant() const {
    std::size_t total = 0;
    for (const auto& s : relevant_) total += s.size();
    return total;
  }

 private:
  std::size_t num_items_;
  std::vector<std::unordered_set<ItemIndex>> relevant_;
};

}  // namespace itemfair

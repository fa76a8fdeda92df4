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

// Exhaustive enumeration of every top-k run of a tiny shape. Used to obtain the
// exact achievable min/max of a measure and to check closed-form bounds.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itemfair/core.hpp"
#include "itemfair/error.hpp"
#include "itemfair/evaluation.hpp"
#include "itemfair/exposure.hpp"
#include "itemfair/fairness.hpp"

namespace itemfair {

struct EnumerationSpec {
  static constexpr std::uint64_t kDefaultCap = 10'000'000;

  std::size_t k = 1;
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t rounds = 1;
  std::uint64_t cap = kDefaultCap;
};

struct ExtremeResult {
  double min_value = std::numeric_limits<double>::quiet_NaN();
  double max_value = std::numeric_limits<double>::quiet_NaN();
  std::optional<TopKRun> argmin;
  std::optional<TopKRun> argmax;
  std::uint64_t evaluated = 0;
  // Runs on which the measure was undefined (skipped).
  std::uint64_t undefined = 0;
};

// All ordered selections of k distinct items out of n, in lexicographic order.
inline std::vector<std::vector<ItemIndex>> ordered_selections(std::size_t n, std::size_t k) {
  std::vector<std::vector<ItemIndex>> out;
  std::vector<ItemIndex> current;
  std::vector<bool> used(n, false);
  std::function<void()> extend = [&] {
    if (current.size() == k) {
      out.push_back(current);
      return;
    }
    for (ItemIndex i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      current.push_back(i);
      extend();
      current.pop_back();
      used[i] = false;
    }
  };
  extend();
  return out;
}

// (n (n-1) ... (n-k+1))^(mW), or nullopt if it does not fit in 64 bits.
inline std::optional<std::uint64_t> search_space_size(const EnumerationSpec& spec) {
  if (spec.k > spec.n) return 0;
  std::uint64_t per_list = 1;
  for (std::size_t i = 0; i < spec.k; ++i) {
    const std::uint64_t f = spec.n - i;
    if (per_list > std::numeric_limits<std::uint64_t>::max() / f) return std::nullopt;
    per_list *= f;
  }
  std::uint64_t total = 1;
  for (std::size_t l = 0; l < spec.m * spec.rounds; ++l) {
    if (total > std::numeric_limits<std::uint64_t>::max() / per_list) return std::nullopt;
    total *= per_list;
  }
  return total;
}

inline void check_enumerable(const EnumerationSpec& spec) {
  if (spec.k == 0 || spec.m == 0 || spec.n == 0 || spec.rounds == 0) {
    throw ValidationError("k, m, n and rounds must be positive");
  }
  if (spec.k > spec.n) throw ValidationError("k must not exceed n");
  const auto size = search_space_size(spec);
  if (!size || *size > spec.cap) {
    throw SpaceTooLarge("search space of " +
                        (size ? std::to_string(*size) : std::string("> 2^64")) +
                        " runs exceeds the cap of " + std::to_string(spec.cap));
  }
}

// Calls visit(const TopKRun&) for every run of the shape, odometer style with
// the last list varying fastest.
template <typename Visit>
void for_each_run(const EnumerationSpec& spec, Visit&& visit) {
  check_enumerable(spec);
  const auto selections = ordered_selections(spec.n, spec.k);
  const std::size_t lists = spec.m * spec.rounds;
  std::vector<std::size_t> digits(lists, 0);
  std::vector<ItemIndex> slots(lists * spec.k);
  for (std::size_t l = 0; l < lists; ++l) {
    std::copy(selections[0].begin(), selections[0].end(), slots.begin() + l * spec.k);
  }
  while (true) {
    visit(TopKRun(spec.k, spec.m, spec.rounds, spec.n, slots));
    std::size_t pos = lists;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < selections.size()) break;
      digits[pos] = 0;
    }
    const bool wrapped = digits[pos] == 0 && pos == 0;
    // Refresh the lists that changed (pos .. end).
    for (std::size_t l = pos; l < lists; ++l) {
      const auto& sel = selections[digits[l]];
      std::copy(sel.begin(), sel.end(), slots.begin() + l * spec.k);
    }
    if (wrapped) return;
  }
}

// measure(const TopKRun&) -> std::optional<double>; nullopt marks an
// undefined value, which is skipped. Ties keep the first witness.
template <typename Measure>
ExtremeResult enumerate_extremes(const EnumerationSpec& spec, Measure&& measure) {
  ExtremeResult result;
  for_each_run(spec, [&](const TopKRun& run) {
    const std::optional<double> v = measure(run);
    if (!v) {
      ++result.undefined;
      return;
    }
    ++result.evaluated;
    if (!result.argmin || *v < result.min_value) {
      result.min_value = *v;
      result.argmin = run;
    }
    if (!result.argmax || *v > result.max_value) {
      result.max_value = *v;
      result.argmax = run;
    }
  });
  if (result.evaluated == 0) throw Error("measure is undefined on every enumerated run");
  return result;
}

inline std::function<std::optional<double>(const TopKRun&)> measure_function(
    MeasureId id, const EvalParams& params) {
  return [id, params](const TopKRun& run) -> std::optional<double> {
    const auto r = original_measure(id, run, params);
    if (!r.defined) return std::nullopt;
    return r.value;
  };
}

inline ExtremeResult enumerate_extremes(const EnumerationSpec& spec, MeasureId id,
                                        const EvalParams& params = {}) {
  return enumerate_extremes(spec, measure_function(id, params));
}

enum class Extreme { kMin, kMax };

// True iff the enumerated extreme lies within tol of the closed form.
template <typename Measure>
bool verify_bound(const EnumerationSpec& spec, Measure&& measure, double closed_form,
                  Extreme which, double tol) {
  const auto result = enumerate_extremes(spec, std::forward<Measure>(measure));
  const double got = which == Extreme::kMin ? result.min_value : result.max_value;
  return std::abs(got - closed_form) <= tol;
}

struct VocdSweepResult {
  double max_value = -std::numeric_limits<double>::infinity();
  std::optional<TopKRun> witness;
  std::vector<std::pair<ItemIndex, ItemIndex>> witness_pairs;
  std::uint64_t runs = 0;
  std::uint64_t similarity_sets = 0;
};

// Largest VoCD over every run and every nonempty set A of recommended item
// pairs.
inline VocdSweepResult vocd_similarity_sweep(const EnumerationSpec& spec, double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw ValidationError("beta must lie in [0, 1)");
  VocdSweepResult result;
  for_each_run(spec, [&](const TopKRun& run) {
    ++result.runs;
    const auto table = build_exposure(run, ExaminationFunction::uniform());
    std::vector<ItemIndex> rec;
    for (ItemIndex i = 0; i < table.num_items(); ++i) {
      if (table.counts[i] > 0) rec.push_back(i);
    }
    std::vector<std::pair<ItemIndex, ItemIndex>> pairs;
    std::vector<double> violation;
    for (std::size_t a = 0; a < rec.size(); ++a) {
      for (std::size_t b = a + 1; b < rec.size(); ++b) {
        pairs.emplace_back(rec[a], rec[b]);
        violation.push_back(std::max(
            coverage_disparity(table.counts[rec[a]], table.counts[rec[b]]) - beta, 0.0));
      }
    }
    if (pairs.size() > 24) throw SpaceTooLarge("too many recommended pairs for a subset sweep");
    const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      ++result.similarity_sets;
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (mask & (std::uint64_t{1} << p)) {
          sum += violation[p];
          ++count;
        }
      }
      const double value = sum / static_cast<double>(count);
      if (value > result.max_value) {
        result.max_value = value;
        result.witness = run;
        result.witness_pairs.clear();
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          if (mask & (std::uint64_t{1} << p)) result.witness_pairs.push_back(pairs[p]);
        }
      }
    }
  });
  return result;
}

}  // namespace itemfair

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
#include <optional>
#include <span>
#include <vector>

#include "itemfair/core.hpp"
#include "itemfair/error.hpp"

namespace itemfair {

// Binary-relevance accuracy of one top-k list.
struct RelevanceScores {
  double hr = 0.0;
  double mrr = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double map = 0.0;
  double ndcg = 0.0;
};

struct RelevanceReport {
  // nullopt for users without any relevant item; they are skipped in the mean.
  std::vector<std::optional<RelevanceScores>> per_user;
  RelevanceScores mean;
  std::size_t evaluated_users = 0;
};

// Standard top-k definitions. AP is normalized by min(k, #relevant) and the
// ideal DCG holds min(k, #relevant) relevant items.
template <typename IsRelevant>
RelevanceScores score_list(std::span<const ItemIndex> list, IsRelevant&& is_relevant,
                           std::size_t num_relevant) {
  RelevanceScores s;
  const std::size_t k = list.size();
  std::size_t hits = 0;
  double ap_sum = 0.0;
  double dcg = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    if (!is_relevant(list[r])) continue;
    ++hits;
    if (hits == 1) s.mrr = 1.0 / static_cast<double>(r + 1);
    ap_sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
  }
  if (num_relevant == 0) return s;
  const std::size_t ideal = std::min(k, num_relevant);
  double idcg = 0.0;
  for (std::size_t r = 0; r < ideal; ++r) idcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
  s.hr = hits > 0 ? 1.0 : 0.0;
  s.precision = static_cast<double>(hits) / static_cast<double>(k);
  s.recall = static_cast<double>(hits) / static_cast<double>(num_relevant);
  s.map = ap_sum / static_cast<double>(ideal);
  s.ndcg = dcg / idcg;
  return s;
}

// HR, MRR, P, R, MAP and NDCG at the run's cutoff, per user and averaged over
// users that have at least one relevant item. Single-round runs only.
inline RelevanceReport evaluate_relevance(const TopKRun& run, const RelevanceJudgments& qrels) {
  if (run.num_rounds() != 1) {
    throw ValidationError("relevance measures are defined for single-round runs");
  }
  if (qrels.num_users() != run.num_users() || qrels.num_items() != run.num_items()) {
    throw ValidationError("relevance judgments do not match the run's users and items");
  }
  if (qrels.total_relevant() == 0) {
    throw ValidationError("relevance judgments contain no relevant item");
  }
  RelevanceReport report;
  report.per_user.resize(run.num_users());
  for (UserIndex u = 0; u < run.num_users(); ++u) {
    const std::size_t relevant = qrels.relevant_count(u);
    if (relevant == 0) continue;
    const auto s = score_list(
        run.list(u), [&](ItemIndex i) { return qrels.is_relevant(u, i); }, relevant);
    report.per_user[u] = s;
    report.mean.hr += s.hr;
    report.mean.mrr += s.mrr;
    report.mean.precision += s.precision;
    report.mean.recall += s.recall;
    report.mean.map += s.map;
    report.mean.ndcg += s.ndcg;
    ++report.evaluated_users;
  }
  const double denom = static_cast<double>(report.evaluated_users);
  report.mean.hr /= denom;
  report.mean.mrr /= denom;
  report.mean.precision /= denom;
  report.mean.recall /= denom;
  report.mean.map /= denom;
  report.mean.ndcg /= denom;
  return report;
}

}  // namespace itemfair

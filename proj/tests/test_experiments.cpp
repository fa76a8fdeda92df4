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
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <gtest/gtest.h>

#include "itemfair/bounds.hpp"
#include "itemfair/experiments.hpp"
#include "support.hpp"

namespace itemfair {
namespace {

std::vector<std::int64_t> sorted_counts(const TopKRun& run) {
  auto c = build_exposure(run, ExaminationFunction::uniform()).counts;
  std::sort(c.begin(), c.end());
  return c;
}

TEST(MostFair, RepeatableSpreadsEvenly) {
  EXPECT_EQ(sorted_counts(most_fair(2, 3, 3, Repeatability::kRepeatable)),
            (std::vector<std::int64_t>{2, 2, 2}));
  EXPECT_EQ(sorted_counts(most_fair(2, 2, 3, Repeatability::kRepeatable)),
            (std::vector<std::int64_t>{1, 1, 2}));
  for (std::size_t k : {1u, 3u, 5u}) {
    for (auto [m, n] : {std::pair{5u, 20u}, {10u, 7u}, {4u, 40u}}) {
      if (k >= n) continue;
      const auto c = sorted_counts(most_fair(k, m, n, Repeatability::kRepeatable));
      const std::int64_t q = std::int64_t(k * m / n), r = std::int64_t(k * m % n);
      EXPECT_EQ(std::count(c.begin(), c.end(), q + 1), r == 0 ? 0 : r);
      EXPECT_EQ(std::count(c.begin(), c.end(), q), std::int64_t(n) - r);
    }
  }
}

TEST(MostFair, NonrepeatableNeverRepeatsBeforeCovering) {
  const auto c = sorted_counts(most_fair(3, 4, 15, Repeatability::kNonrepeatable));
  EXPECT_LE(c.back(), 1);
  const auto d = sorted_counts(most_fair(3, 4, 5, Repeatability::kNonrepeatable));
  EXPECT_LE(d.back() - d.front(), 1);
}

TEST(MostFair, NonrepeatableRespectsExclusions) {
  ExclusionSets ex(2, 4);
  ex.exclude(0, 0);
  ex.exclude(1, 1);
  const auto run = most_fair(2, 2, 4, Repeatability::kNonrepeatable, &ex);
  EXPECT_EQ(run.list(0)[0], 1u);
  EXPECT_EQ(run.list(0)[1], 2u);
  EXPECT_EQ(run.list(1)[0], 0u);
  EXPECT_EQ(run.list(1)[1], 3u);
  ExclusionSets tight(1, 3);
  tight.exclude(0, 0);
  tight.exclude(0, 1);
  EXPECT_THROW(most_fair(2, 1, 3, Repeatability::kNonrepeatable, &tight), ValidationError);
}

TEST(MostUnfair, RepeatableIsPopularityLike) {
  const auto run = most_unfair(3, 4, 10, Repeatability::kRepeatable);
  const auto t = build_exposure(run, ExaminationFunction::uniform());
  EXPECT_EQ(t.recommended, 3u);
  EXPECT_NEAR(jain_ori(t).value, 0.3, 1e-15);
  EXPECT_NEAR(gini_ori(t).value, 0.7, 1e-15);
  EXPECT_EQ(most_unfair(3, 4, 10, Repeatability::kNonrepeatable), run);
}

TEST(MostUnfair, SubstitutesExcludedItems) {
  ExclusionSets ex(2, 5);
  ex.exclude(1, 0);
  const auto run = most_unfair(2, 2, 5, Repeatability::kNonrepeatable, &ex);
  EXPECT_EQ(run.list(0)[0], 0u);
  EXPECT_EQ(run.list(1)[0], 1u);
  EXPECT_EQ(run.list(1)[1], 2u);
}

TEST(Generators, CorrectedEndpoints) {
  for (std::size_t k : {1u, 2u, 3u}) {
    for (auto [m, n] : {std::pair{5u, 20u}, {10u, 7u}}) {
      const Shape s{std::int64_t(k), std::int64_t(m), std::int64_t(n)};
      const auto fair = build_exposure(most_fair(k, m, n, Repeatability::kRepeatable),
                                       ExaminationFunction::uniform());
      const auto unfair = build_exposure(most_unfair(k, m, n, Repeatability::kRepeatable),
                                         ExaminationFunction::uniform());
      EXPECT_NEAR(jain_our(jain_ori(fair).value, s), 1.0, 1e-9);
      EXPECT_NEAR(jain_our(jain_ori(unfair).value, s), 0.0, 1e-9);
      EXPECT_NEAR(qf_our(fair.recommended, s), 1.0, 1e-9);
      EXPECT_NEAR(qf_our(unfair.recommended, s), 0.0, 1e-9);
      EXPECT_NEAR(ent_our(fair), 1.0, 1e-9);
      EXPECT_NEAR(ent_our(unfair), 0.0, 1e-9);
      EXPECT_NEAR(gini_our(gini_ori(fair).value, s), 0.0, 1e-9);
      EXPECT_NEAR(gini_our(gini_ori(unfair).value, s), 1.0, 1e-9);
    }
  }
}

TEST(SlidingWindow, CutsAndReranks) {
  std::vector<std::vector<ItemIndex>> deep = {{0, 1, 2, 3, 4, 5, 6, 7, 8},
                                              {8, 7, 6, 5, 4, 3, 2, 1, 0}};
  const auto first = sliding_window(deep, 9, 1);
  EXPECT_EQ(first.k(), 5u);
  EXPECT_EQ(first.list(0)[4], 4u);
  const auto second = sliding_window(deep, 9, 2);
  EXPECT_EQ(second.list(0)[0], 1u);
  EXPECT_EQ(second.list(0)[4], 5u);
  EXPECT_EQ(second.list(1)[0], 7u);
  EXPECT_NO_THROW(sliding_window(deep, 9, 5));
  EXPECT_THROW(sliding_window(deep, 9, 6), ValidationError);
  EXPECT_THROW(sliding_window(deep, 9, 0), ValidationError);
}

TEST(SlidingWindow, RelevanceFallsAsTheWindowMovesDown) {
  // Relevant items concentrate at the top of every deep ranking.
  std::vector<std::vector<ItemIndex>> deep;
  RelevanceJudgments q(6, 30);
  for (UserIndex u = 0; u < 6; ++u) {
    std::vector<ItemIndex> r;
    for (std::size_t j = 0; j < 9; ++j) r.push_back((u * 3 + j) % 30);
    for (std::size_t j = 0; j < 4 + u % 2; ++j) q.set(u, r[j], true);
    deep.push_back(r);
  }
  RelevanceScores prev{2, 2, 2, 2, 2, 2};
  for (std::size_t a = 1; a <= 5; ++a) {
    const auto s = evaluate_relevance(sliding_window(deep, 30, a), q).mean;
    EXPECT_LE(s.hr, prev.hr);
    EXPECT_LE(s.mrr, prev.mrr);
    EXPECT_LE(s.precision, prev.precision);
    EXPECT_LE(s.recall, prev.recall);
    EXPECT_LE(s.map, prev.map);
    EXPECT_LE(s.ndcg, prev.ndcg);
    prev = s;
  }
}

TEST(Insertion, ScenarioShape) {
  InsertionConfig cfg;
  cfg.num_users = 4;
  cfg.k = 3;
  const auto sc = build_insertion_scenario(cfg);
  EXPECT_EQ(sc.num_items, 12u);
  ASSERT_EQ(sc.runs.size(), 4u);
  EXPECT_EQ(sc.fractions.back(), 1.0);
  // P = 0: identical lists; P = 1: all km items distinct and each relevant to its user.
  EXPECT_EQ(build_exposure(sc.runs.front(), ExaminationFunction::uniform()).recommended, 3u);
  EXPECT_EQ(build_exposure(sc.runs.back(), ExaminationFunction::uniform()).recommended, 12u);
  for (UserIndex u = 0; u < 4; ++u) {
    for (auto i : sc.runs.back().list(u)) EXPECT_TRUE(sc.qrels.is_relevant(u, i));
  }
  for (const auto& run : sc.runs) {
    EXPECT_TRUE(std::equal(run.list(0).begin(), run.list(0).end(), sc.runs[0].list(0).begin()));
  }
}

TEST(Insertion, MostExposedModeRunsBackwards) {
  InsertionConfig le;
  le.num_users = 5;
  le.k = 4;
  InsertionConfig me = le;
  me.mode = InsertionMode::kMostExposedIrrelevant;
  const auto a = build_insertion_scenario(le);
  const auto b = build_insertion_scenario(me);
  for (std::size_t j = 0; j <= 4; ++j) {
    EXPECT_EQ(build_exposure(a.runs[j], ExaminationFunction::uniform()).recommended,
              build_exposure(b.runs[4 - j], ExaminationFunction::uniform()).recommended);
  }
}

TEST(Insertion, SweepIsMonotoneAndMeetsTheEndpoints) {
  InsertionConfig cfg;
  cfg.num_users = 50;
  cfg.k = 5;
  const auto points = insertion_sweep(cfg);
  ASSERT_EQ(points.size(), 6u);
  std::map<MeasureId, double> prev;
  for (const auto& p : points) {
    const auto& ev = p.evaluation;
    EXPECT_EQ(ev.at(MeasureId::kQf).original.value, ev.at(MeasureId::kFsat).original.value);
    EXPECT_NEAR(*ev.at(MeasureId::kQf).corrected, *ev.at(MeasureId::kEnt).corrected, 1e-9);
    EXPECT_NEAR(*ev.at(MeasureId::kQf).corrected, *ev.at(MeasureId::kFsat).corrected, 1e-9);
    for (auto id : {MeasureId::kJain, MeasureId::kQf, MeasureId::kEnt, MeasureId::kFsat}) {
      const double v = *ev.at(id).corrected;
      if (prev.contains(id)) {
        EXPECT_GE(v, prev[id] - 1e-12);
      }
      prev[id] = v;
    }
    for (auto id : {MeasureId::kGini, MeasureId::kGiniW}) {
      const double v = *ev.at(id).corrected;
      if (prev.contains(id)) {
        EXPECT_LE(v, prev[id] + 1e-12);
      }
      prev[id] = v;
    }
  }
  const auto& last = points.back().evaluation;
  EXPECT_NEAR(*last.at(MeasureId::kJain).corrected, 1.0, 1e-9);
  EXPECT_NEAR(*last.at(MeasureId::kGini).corrected, 0.0, 1e-9);
  EXPECT_NEAR(*last.at(MeasureId::kGiniW).corrected, 0.0, 1e-9);
  EXPECT_NEAR(last.relevance->mean.precision, 1.0, 1e-12);
}

TEST(Insertion, SeedOnlyRenamesItems) {
  InsertionConfig plain;
  plain.num_users = 8;
  plain.k = 3;
  InsertionConfig seeded = plain;
  seeded.seed = 99;
  const auto a = insertion_sweep(plain);
  const auto b = insertion_sweep(seeded);
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (auto id : kAllMeasures) {
      const auto& x = a[s].evaluation.at(id).original;
      const auto& y = b[s].evaluation.at(id).original;
      EXPECT_EQ(x.defined, y.defined);
      if (x.defined) {
        EXPECT_NEAR(x.value, y.value, 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace itemfair

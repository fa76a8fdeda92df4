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
#include <functional>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "itemfair/bounds.hpp"
#include "itemfair/experiments.hpp"
#include "support.hpp"

namespace itemfair {
namespace {

using testing::run_of;

// Every run of the given shape, by plain recursion over list positions.
void brute_force(std::size_t k, std::size_t m, std::size_t n,
                 const std::function<void(const TopKRun&)>& visit) {
  std::vector<ItemIndex> slots(k * m);
  std::function<void(std::size_t)> fill = [&](std::size_t pos) {
    if (pos == slots.size()) {
      visit(TopKRun(k, m, 1, n, slots));
      return;
    }
    const std::size_t list_start = pos - pos % k;
    for (ItemIndex i = 0; i < n; ++i) {
      if (std::find(slots.begin() + std::ptrdiff_t(list_start), slots.begin() + std::ptrdiff_t(pos),
                    i) != slots.begin() + std::ptrdiff_t(pos)) {
        continue;
      }
      slots[pos] = i;
      fill(pos + 1);
    }
  };
  fill(0);
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

ExposureTable uniform(const TopKRun& run) {
  return build_exposure(run, ExaminationFunction::uniform());
}

TEST(Shape, Arithmetic) {
  const Shape s{3, 5, 7};
  EXPECT_EQ(s.slots(), 15);
  EXPECT_EQ(s.share(), 2);
  EXPECT_EQ(s.remainder(), 1);
  EXPECT_THROW((Shape{4, 1, 3}).validate(), ValidationError);
  EXPECT_THROW((Shape{0, 1, 3}).validate(), ValidationError);
}

TEST(JainBounds, ClosedForms) {
  EXPECT_NEAR(jain_max({2, 2, 3}), 16.0 / 18.0, 1e-15);
  EXPECT_DOUBLE_EQ(jain_max({2, 3, 6}), 1.0);
  EXPECT_NEAR(jain_max({3, 2, 10}), 0.6, 1e-15);
  EXPECT_DOUBLE_EQ(jain_min({3, 2, 10}), 0.3);
}

TEST(JainOur, Endpoints) {
  EXPECT_NEAR(jain_our(0.6, {3, 2, 10}), 1.0, 1e-12);
  EXPECT_EQ(jain_our(0.3, {3, 2, 10}), 0.0);
  EXPECT_THROW(jain_our(1.0, {3, 2, 3}), NormalizationDegenerate);
}

TEST(QfOur, Branches) {
  EXPECT_EQ(qf_our(3, {3, 4, 10}), 0.0);
  EXPECT_DOUBLE_EQ(qf_our(10, {3, 4, 10}), 1.0);
  EXPECT_DOUBLE_EQ(qf_our(6, {3, 2, 10}), 1.0);
  EXPECT_DOUBLE_EQ(qf_our(4, {2, 3, 10}), 0.5);
  EXPECT_THROW(qf_our(2, {2, 1, 10}), NormalizationDegenerate);
}

TEST(EntBounds, ClosedForms) {
  EXPECT_NEAR(ent_max({2, 2, 3}, 2.0), 1.5, 1e-15);
  EXPECT_NEAR(ent_min({2, 2, 3}, 2.0), 1.0, 1e-15);
  EXPECT_NEAR(ent_max({3, 2, 10}, 2.0), std::log2(6.0), 1e-15);
  EXPECT_EQ(ent_min({1, 4, 5}), 0.0);
  EXPECT_NEAR(ent_max({2, 3, 6}), 1.0, 1e-15);
}

TEST(EntOur, FiniteWhenOriginalIsUndefinedAndBaseFree) {
  const auto t = uniform(run_of(6, {{1, 2}, {1, 3}, {4, 1}}));
  EXPECT_FALSE(ent_ori(t).defined);
  const double v = ent_our(t);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GE(v, 0.0);
  EXPECT_LE(v, 1.0);
  const Shape s = Shape::of(t);
  for (double base : {2.0, 10.0, 6.0}) {
    EXPECT_NEAR(ent_our(ent_def(t, base), s, base), v, 1e-14);
  }
}

TEST(EntOur, MatchesOriginalScaleWhenEverythingIsRecommended) {
  const auto t = uniform(run_of(3, {{1, 2}, {3, 1}}));
  const Shape s = Shape::of(t);
  EXPECT_NEAR(ent_our(t), normalize(ent_ori(t).value, ent_min(s), ent_max(s)), 1e-14);
  EXPECT_NEAR(ent_our(t), 1.0, 1e-14);
}

TEST(GiniBounds, ClosedForms) {
  EXPECT_EQ(gini_min({2, 3, 6}), 0.0);
  EXPECT_NEAR(gini_min({2, 2, 3}), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(gini_max({2, 2, 3}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(gini_our(1.0 - 2.0 / 7.0, {2, 4, 7}), 1.0, 1e-12);
}

TEST(GiniWBounds, ClosedForms) {
  EXPECT_NEAR(giniw_max({3, 2, 3}), 0.1564262, 1e-6);
  ASSERT_TRUE(giniw_min({1, 2, 3}));
  EXPECT_NEAR(*giniw_min({1, 2, 3}), 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(giniw_min({2, 3, 5}));
  EXPECT_NEAR(*giniw_min({3, 2, 6}), giniw_ori(build_exposure(run_of(6, {{1, 2, 3}, {4, 5, 6}}),
                                                              ExaminationFunction::dcg()))
                                         .value,
              1e-12);
  const Shape s{2, 2, 5};
  EXPECT_NEAR(giniw_our(*giniw_min(s), s), 0.0, 1e-12);
  EXPECT_NEAR(giniw_our(giniw_max(s), s), 1.0, 1e-12);
  const Shape over{2, 4, 5};
  EXPECT_NEAR(giniw_our(giniw_max(over) / 2.0, over), 0.5, 1e-12);
}

TEST(FSatOur, Substitution) {
  EXPECT_EQ(fsat_our(1.0 / 6.0, {1, 6, 6}), 0.0);
  EXPECT_NEAR(fsat_our(5.0 / 6.0, {1, 8, 6}), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(fsat_our(1.0, {2, 4, 7}), 1.0);
}

TEST(VoCDBound, Values) {
  EXPECT_NEAR(vocd_max_bound(3, 0.0), 2.0 / 3.0, 1e-15);
  EXPECT_LE(vocd_max_bound(1, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(vocd_max_bound(4, 0.25), 0.5);
}

TEST(Normalize, Values) {
  EXPECT_DOUBLE_EQ(normalize(0.5, 0.0, 1.0), 0.5);
  EXPECT_EQ(normalize(0.2, 0.2, 0.9), 0.0);
  EXPECT_DOUBLE_EQ(normalize(0.6, 0.3, 0.6), 1.0);
  EXPECT_THROW(normalize(0.4, 0.4, 0.4), NormalizationDegenerate);
}

// Exhaustive extremes against the closed forms, with an enumerator that lives
// only in this test.
TEST(BoundsByBruteForce, SmallShapes) {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::size_t n = k + 1; n <= 4; ++n) {
        const Shape s{std::int64_t(k), std::int64_t(m), std::int64_t(n)};
        Range jain, qf, ent, gini, giniw, fsat;
        brute_force(k, m, n, [&](const TopKRun& run) {
          const auto t = uniform(run);
          jain.add(jain_ori(t).value);
          qf.add(qf_ori(t).value);
          ent.add(ent_def(t));
          gini.add(gini_ori(t).value);
          fsat.add(fsat_ori(t).value);
          giniw.add(giniw_ori(build_exposure(run, ExaminationFunction::dcg())).value);
        });
        SCOPED_TRACE(::testing::Message() << "k=" << k << " m=" << m << " n=" << n);
        EXPECT_NEAR(jain.lo, jain_min(s), 1e-9);
        EXPECT_NEAR(jain.hi, jain_max(s), 1e-9);
        EXPECT_NEAR(qf.lo, qf_min(s), 1e-9);
        EXPECT_NEAR(qf.hi, qf_max(s), 1e-9);
        EXPECT_NEAR(ent.lo, ent_min(s), 1e-9);
        EXPECT_NEAR(ent.hi, ent_max(s), 1e-9);
        EXPECT_NEAR(gini.hi, gini_max(s), 1e-9);
        EXPECT_NEAR(gini.lo, gini_min(s), 1e-9);
        EXPECT_NEAR(giniw.hi, giniw_max(s), 1e-9);
        if (auto lo = giniw_min(s)) {
          EXPECT_NEAR(giniw.lo, *lo, 1e-9);
        }
        EXPECT_NEAR(fsat.hi, 1.0, 1e-9);
        EXPECT_NEAR(fsat.lo, s.slots() < s.n ? 1.0 : fsat_min(s), 1e-9);
      }
    }
  }
}

TEST(Corrections, StrictlyIncreasingInTheOriginal) {
  const Shape s{2, 5, 7};
  double prev_j = -1, prev_g = -1, prev_w = -1, prev_f = -1;
  for (int step = 0; step <= 20; ++step) {
    const double x = 0.05 * step;
    const double j = jain_our(x, s), g = gini_our(x, s), w = giniw_our(x, s), f = fsat_our(x, s);
    if (step > 0) {
      EXPECT_GT(j, prev_j);
      EXPECT_GT(g, prev_g);
      EXPECT_GT(w, prev_w);
      EXPECT_GT(f, prev_f);
    }
    prev_j = j, prev_g = g, prev_w = w, prev_f = f;
  }
}

TEST(Corrections, DegenerateShapes) {
  const Shape full{3, 2, 3};
  EXPECT_THROW(gini_our(0.1, full), NormalizationDegenerate);
  EXPECT_THROW(giniw_our(0.1, full), NormalizationDegenerate);
  EXPECT_THROW(fsat_our(1.0, full), NormalizationDegenerate);
  EXPECT_THROW(ent_our(0.5, full), NormalizationDegenerate);
  EXPECT_THROW(jain_our(0.5, {2, 1, 9}), NormalizationDegenerate);
}

TEST(BoundsTable, RowsAndFlags) {
  const auto rows = bounds_table({10, 1859, 2823});
  ASSERT_EQ(rows.size(), 7u);
  const char* names[] = {"jain", "qf", "ent", "gini", "gini_w", "fsat", "vocd"};
  for (std::size_t r = 0; r < rows.size(); ++r) EXPECT_EQ(rows[r].measure, names[r]);
  EXPECT_FALSE(rows[4].applicable);
  for (const auto& row : rows) {
    if (!row.applicable || row.measure == "vocd") continue;
    if (row.direction == Direction::kHigherIsFairer) {
      EXPECT_LE(row.most_unfair, row.most_fair);
    } else {
      EXPECT_GE(row.most_unfair, row.most_fair);
    }
  }
  EXPECT_TRUE(bounds_table({2, 2, 5})[4].applicable);
  EXPECT_THROW(bounds_table({6, 2, 5}), ValidationError);
}

TEST(Generators, ReachTheBounds) {
  for (const Shape s : {Shape{2, 2, 3}, Shape{3, 4, 7}, Shape{1, 5, 20}, Shape{5, 10, 7}}) {
    const auto fair = most_fair(std::size_t(s.k), std::size_t(s.m), std::size_t(s.n),
                                Repeatability::kRepeatable);
    const auto unfair = most_unfair(std::size_t(s.k), std::size_t(s.m), std::size_t(s.n),
                                    Repeatability::kRepeatable);
    const auto tf = uniform(fair), tu = uniform(unfair);
    EXPECT_NEAR(jain_ori(tf).value, jain_max(s), 1e-12);
    EXPECT_NEAR(jain_ori(tu).value, jain_min(s), 1e-12);
    EXPECT_NEAR(gini_ori(tf).value, gini_min(s), 1e-12);
    EXPECT_NEAR(gini_ori(tu).value, gini_max(s), 1e-12);
    EXPECT_NEAR(ent_def(tf), ent_max(s), 1e-12);
    EXPECT_NEAR(ent_def(tu), ent_min(s), 1e-12);
    EXPECT_NEAR(giniw_ori(build_exposure(unfair, ExaminationFunction::dcg())).value, giniw_max(s),
                1e-12);
  }
}

}  // namespace
}  // namespace itemfair

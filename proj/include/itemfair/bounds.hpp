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

// Closed-form most-fair / most-unfair scores at cutoff k and the corrected
// (min-max normalized) measures built on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itemfair/core.hpp"
#include "itemfair/error.hpp"
#include "itemfair/exposure.hpp"
#include "itemfair/fairness.hpp"

namespace itemfair {

// Shape of a single-round run: cutoff k, m lists, n catalog items. Multi-round
// runs are mapped to m = users * rounds.
struct Shape {
  std::int64_t k = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;

  std::int64_t slots() const { return k * m; }
  // floor(km / n)
  std::int64_t share() const { return slots() / n; }
  // km mod n
  std::int64_t remainder() const { return slots() % n; }

  static Shape of(const TopKRun& run) {
    return {static_cast<std::int64_t>(run.k()), static_cast<std::int64_t>(run.num_lists()),
            static_cast<std::int64_t>(run.num_items())};
  }
  static Shape of(const ExposureTable& table) {
    return {static_cast<std::int64_t>(table.k), static_cast<std::int64_t>(table.num_lists),
            static_cast<std::int64_t>(table.num_items())};
  }

  void validate() const {
    if (k < 1 || m < 1 || n < 1) throw ValidationError("k, m and n must be positive");
    if (k > n) throw ValidationError("cutoff k must not exceed the number of items n");
  }
};

namespace detail {

inline double d(std::int64_t v) { return static_cast<double>(v); }

// log_{l+1} 2
inline double dcg_weight_at(std::int64_t rank) { return std::log(2.0) / std::log(d(rank) + 1.0); }

inline double log_in(double x, std::optional<double> base, std::int64_t n) {
  return std::log(x) / std::log(base.value_or(d(n)));
}

}  // namespace detail

inline double jain_min(const Shape& s) { return detail::d(s.k) / detail::d(s.n); }

inline double jain_max(const Shape& s) {
  const double q = detail::d(s.share());
  const double r = detail::d(s.remainder());
  const double km = detail::d(s.slots());
  const double n = detail::d(s.n);
  return km * km / (n * (n * q * q + r * (2.0 * q + 1.0)));
}

inline double qf_min(const Shape& s) { return detail::d(s.k) / detail::d(s.n); }
inline double qf_max(const Shape& s) {
  return std::min(detail::d(s.slots()) / detail::d(s.n), 1.0);
}

// Entropy bounds in the given log base (default n).
inline double ent_min(const Shape& s, std::optional<double> base = std::nullopt) {
  if (s.k == 1) return 0.0;
  return detail::log_in(detail::d(s.k), base, s.n);
}

inline double ent_max(const Shape& s, std::optional<double> base = std::nullopt) {
  const double km = detail::d(s.slots());
  if (s.slots() < s.n) return detail::log_in(km, base, s.n);
  const double q = detail::d(s.share());
  const double r = detail::d(s.remainder());
  const double n = detail::d(s.n);
  const double p_low = q / km;
  const double p_high = (q + 1.0) / km;
  double h = -(n - r) * p_low * std::log(p_low);
  if (r > 0) h -= r * p_high * std::log(p_high);
  if (h == 0.0) return 0.0;
  return h / std::log(base.value_or(n));
}

inline double gini_max(const Shape& s) { return 1.0 - detail::d(s.k) / detail::d(s.n); }

inline double gini_min(const Shape& s) {
  const double r = detail::d(s.remainder());
  return (detail::d(s.n) - r) * r / (detail::d(s.slots()) * detail::d(s.n));
}

// Most-unfair Gini-w: the same k items at the same ranks for every user.
inline double giniw_max(const Shape& s) {
  double num = 0.0;
  double den = 0.0;
  for (std::int64_t l = 1; l <= s.k; ++l) {
    const double w = detail::dcg_weight_at(l);
    num += (detail::d(s.n) - 2.0 * detail::d(l) + 1.0) * w;
    den += w;
  }
  return num / (detail::d(s.n) * den);
}

// Most-fair Gini-w, known in closed form only when km <= n (all km slots hold
// distinct items).
inline std::optional<double> giniw_min(const Shape& s) {
  if (s.slots() > s.n) return std::nullopt;
  double num = 0.0;
  double den = 0.0;
  for (std::int64_t l = 1; l <= s.k; ++l) {
    const double w = detail::dcg_weight_at(l);
    for (std::int64_t j = s.n - l * s.m + 1; j <= s.n - l * s.m + s.m; ++j) {
      num += (2.0 * detail::d(j) - detail::d(s.n) - 1.0) * w;
    }
    den += w;
  }
  return num / (detail::d(s.m) * detail::d(s.n) * den);
}

inline double fsat_min(const Shape& s) { return detail::d(s.k) / detail::d(s.n); }
inline double fsat_max(const Shape&) { return 1.0; }

// Upper bound on VoCD for any similarity set: (m - 1) / m - beta.
inline double vocd_max_bound(std::int64_t m, double beta) {
  return (detail::d(m) - 1.0) / detail::d(m) - beta;
}

inline bool degenerate_range(double lo, double hi) {
  return std::abs(hi - lo) <= 1e-12 * std::max(1.0, std::abs(hi));
}

// (x - lo) / (hi - lo). Throws NormalizationDegenerate when hi == lo.
inline double normalize(double x, double lo, double hi) {
  if (degenerate_range(lo, hi)) {
    throw NormalizationDegenerate("most-fair and most-unfair scores coincide");
  }
  return (x - lo) / (hi - lo);
}

namespace detail {

inline void require_correctable(const Shape& s) {
  s.validate();
  if (s.k >= s.n) {
    throw NormalizationDegenerate("corrections are undefined for k = n (k=" +
                                  std::to_string(s.k) + ", n=" + std::to_string(s.n) + ")");
  }
}

}  // namespace detail

inline double jain_our(double jain, const Shape& s) {
  detail::require_correctable(s);
  return normalize(jain, jain_min(s), jain_max(s));
}

// Both branches reduce to (|R| - k) / (min(km, n) - k).
inline double qf_our(std::size_t recommended, const Shape& s) {
  detail::require_correctable(s);
  const double r = static_cast<double>(recommended);
  const double k = detail::d(s.k);
  if (s.slots() >= s.n) return (r - k) / (detail::d(s.n) - k);
  if (s.m == 1) {
    throw NormalizationDegenerate("QF correction is undefined for a single user when km < n");
  }
  return (r - k) / (k * (detail::d(s.m) - 1.0));
}

// Corrected entropy from Ent_def expressed in `base`. The result does not
// depend on the base.
inline double ent_our(double ent_def_value, const Shape& s,
                      std::optional<double> base = std::nullopt) {
  detail::require_correctable(s);
  return normalize(ent_def_value, ent_min(s, base), ent_max(s, base));
}

inline double ent_our(const ExposureTable& table) {
  const Shape s = Shape::of(table);
  const double e = std::exp(1.0);
  return ent_our(ent_def(table, e), s, e);
}

inline double gini_our(double gini, const Shape& s) {
  detail::require_correctable(s);
  return normalize(gini, gini_min(s), gini_max(s));
}

// km <= n: normalized between the closed-form min and max. Otherwise only the
// max is known and the score is divided by it, so 0 may be unreachable.
inline double giniw_our(double giniw, const Shape& s) {
  detail::require_correctable(s);
  if (auto lo = giniw_min(s)) return normalize(giniw, *lo, giniw_max(s));
  return normalize(giniw, 0.0, giniw_max(s));
}

inline double fsat_our(double fsat, const Shape& s) {
  detail::require_correctable(s);
  return normalize(fsat, fsat_min(s), fsat_max(s));
}

// One row of the bounds table.
struct BoundsReport {
  std::string measure;
  Direction direction = Direction::kHigherIsFairer;
  double most_unfair = 0.0;
  double most_fair = 0.0;
  // false when the bound is not known in closed form for this shape.
  bool applicable = true;
  std::string note;
};

inline std::vector<BoundsReport> bounds_table(const Shape& s,
                                              std::optional<double> log_base = std::nullopt,
                                              double beta = 0.0) {
  s.validate();
  using enum Direction;
  std::vector<BoundsReport> rows;
  rows.push_back({"jain", kHigherIsFairer, jain_min(s), jain_max(s), true, ""});
  rows.push_back({"qf", kHigherIsFairer, qf_min(s), qf_max(s), true, ""});
  rows.push_back({"ent", kHigherIsFairer, ent_min(s, log_base), ent_max(s, log_base), true, ""});
  rows.push_back({"gini", kLowerIsFairer, gini_max(s), gini_min(s), true, ""});
  if (auto lo = giniw_min(s)) {
    rows.push_back({"gini_w", kLowerIsFairer, giniw_max(s), *lo, true, ""});
  } else {
    rows.push_back({"gini_w", kLowerIsFairer, giniw_max(s), 0.0, false,
                    "most-fair Gini-w has no closed form when km > n"});
  }
  if (s.slots() < s.n) {
    rows.push_back({"fsat", kHigherIsFairer, fsat_min(s), fsat_max(s), true,
                    "km < n: maximin share is 0, every run scores 1"});
  } else {
    rows.push_back({"fsat", kHigherIsFairer, fsat_min(s), fsat_max(s), true, ""});
  }
  rows.push_back({"vocd", kLowerIsFairer, vocd_max_bound(s.m, beta), 0.0, true,
                  "upper bound over all similarity sets"});
  return rows;
}

}  // namespace itemfair

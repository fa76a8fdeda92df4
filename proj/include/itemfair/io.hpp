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

// Tab-separated run / qrels / catalog / exclusion / embedding files and the
// score-matrix CSV. Every error names the source, the line and the violated
// rule.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "itemfair/analysis.hpp"
#include "itemfair/core.hpp"
#include "itemfair/error.hpp"
#include "itemfair/experiments.hpp"

namespace itemfair::io {

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Reads lines, strips a trailing '\r', tracks 1-based line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  std::size_t line_no() const { return line_no_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(line_no_, what); }
  [[noreturn]] void fail_at(std::size_t line, const std::string& what) const {
    throw ValidationError(source_ + ":" + std::to_string(line) + ": " + what);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

inline std::size_t parse_positive(const LineReader& reader, std::string_view text,
                                  std::string_view what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    reader.fail(std::string(what) + " must be a positive integer, got '" + std::string(text) +
                "'");
  }
  return value;
}

inline double parse_double(const LineReader& reader, std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    reader.fail(std::string(what) + " is not a number: '" + std::string(text) + "'");
  }
  return value;
}

inline bool is_header(std::string_view line) { return line.starts_with("user_id"); }

}  // namespace detail

// Shortest round-trip text for a double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// One item identifier per line; blank lines are ignored.
inline ItemCatalog read_catalog(std::istream& in, const std::string& source) {
  detail::LineReader reader(in, source);
  std::vector<std::string> ids;
  std::set<std::string> seen;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    if (line.find('\t') != std::string::npos) reader.fail("catalog lines hold a single item id");
    if (!seen.insert(line).second) reader.fail("duplicate item id '" + line + "'");
    ids.push_back(line);
  }
  if (ids.empty()) throw ValidationError(source + ": catalog is empty");
  return ItemCatalog(std::move(ids));
}

struct LoadedRun {
  UserSet users;
  TopKRun run;
};

// Header `user_id<TAB>item_id<TAB>rank[<TAB>round]`. Users are indexed in
// order of first appearance. With k given, every (user, round) must hold
// ranks 1..k exactly once; without it, k is the largest rank seen.
inline LoadedRun read_run(std::istream& in, const std::string& source, const ItemCatalog& catalog,
                          std::optional<std::size_t> k = std::nullopt) {
  detail::LineReader reader(in, source);
  std::string line;
  if (!reader.next(line)) throw ValidationError(source + ": empty run file");
  const auto header = detail::split(line, '\t');
  const bool has_round = header.size() == 4 && header[3] == "round";
  if (!(header.size() == 3 || has_round) || header[0] != "user_id" || header[1] != "item_id" ||
      header[2] != "rank") {
    reader.fail("expected header 'user_id<TAB>item_id<TAB>rank[<TAB>round]'");
  }

  struct Cell {
    ItemIndex item;
    std::size_t line;
  };
  // (user, round) -> rank -> cell
  std::map<std::pair<UserIndex, std::size_t>, std::map<std::size_t, Cell>> lists;
  std::vector<std::string> user_ids;
  std::map<std::string, UserIndex, std::less<>> user_index;
  std::size_t max_rank = 0;
  std::size_t max_round = 1;

  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != header.size()) {
      reader.fail("expected " + std::to_string(header.size()) + " tab-separated fields, got " +
                  std::to_string(fields.size()));
    }
    if (fields[0].empty()) reader.fail("empty user id");
    const auto item = catalog.find(std::string(fields[1]));
    if (!item) reader.fail("item '" + std::string(fields[1]) + "' is not in the catalog");
    const std::size_t rank = detail::parse_positive(reader, fields[2], "rank");
    const std::size_t round = has_round ? detail::parse_positive(reader, fields[3], "round") : 1;
    if (k && rank > *k) {
      reader.fail("rank " + std::to_string(rank) + " exceeds cutoff k=" + std::to_string(*k));
    }
    auto [it, inserted] = user_index.try_emplace(std::string(fields[0]), user_ids.size());
    if (inserted) user_ids.emplace_back(fields[0]);
    auto& list = lists[{it->second, round}];
    if (list.contains(rank)) {
      reader.fail("rank " + std::to_string(rank) + " repeated for user '" +
                  std::string(fields[0]) + "' round " + std::to_string(round));
    }
    for (const auto& [r, cell] : list) {
      if (cell.item == *item) {
        reader.fail("item '" + std::string(fields[1]) + "' listed twice for user '" +
                    std::string(fields[0]) + "' round " + std::to_string(round) +
                    " (first on line " + std::to_string(cell.line) + ")");
      }
    }
    list.emplace(rank, Cell{*item, reader.line_no()});
    max_rank = std::max(max_rank, rank);
    max_round = std::max(max_round, round);
  }
  if (user_ids.empty()) throw ValidationError(source + ": run file has no rows");
  const std::size_t cutoff = k.value_or(max_rank);

  std::vector<ItemIndex> slots;
  slots.reserve(user_ids.size() * max_round * cutoff);
  for (UserIndex u = 0; u < user_ids.size(); ++u) {
    for (std::size_t w = 1; w <= max_round; ++w) {
      auto it = lists.find({u, w});
      if (it == lists.end()) {
        throw ValidationError(source + ": user '" + user_ids[u] + "' has no list for round " +
                              std::to_string(w) + " (runs must cover rounds 1.." +
                              std::to_string(max_round) + " for every user)");
      }
      const auto& list = it->second;
      if (list.size() != cutoff) {
        reader.fail_at(list.begin()->second.line,
                       "user '" + user_ids[u] + "' round " + std::to_string(w) + " has " +
                           std::to_string(list.size()) + " ranked items, expected exactly k=" +
                           std::to_string(cutoff));
      }
      for (const auto& [rank, cell] : list) slots.push_back(cell.item);
    }
  }
  return LoadedRun{UserSet(std::move(user_ids)),
                   TopKRun(cutoff, user_index.size(), max_round, catalog.size(), std::move(slots))};
}

inline void write_run(std::ostream& out, const TopKRun& run, const UserSet& users,
                      const ItemCatalog& catalog) {
  const bool rounds = run.num_rounds() > 1;
  out << "user_id\titem_id\trank" << (rounds ? "\tround" : "") << '\n';
  for (UserIndex u = 0; u < run.num_users(); ++u) {
    for (std::size_t w = 0; w < run.num_rounds(); ++w) {
      const auto list = run.list(u, w);
      for (std::size_t r = 0; r < list.size(); ++r) {
        out << users.id(u) << '\t' << catalog.id(list[r]) << '\t' << (r + 1);
        if (rounds) out << '\t' << (w + 1);
        out << '\n';
      }
    }
  }
}

// Rows `user_id<TAB>item_id<TAB>rel` with rel in {0, 1}; optional header.
inline RelevanceJudgments read_qrels(std::istream& in, const std::string& source,
                                     const UserSet& users, const ItemCatalog& catalog) {
  detail::LineReader reader(in, source);
  RelevanceJudgments qrels(users.size(), catalog.size());
  std::set<std::pair<UserIndex, ItemIndex>> seen;
  std::string line;
  while (reader.next(line)) {
    if (line.empty() || (reader.line_no() == 1 && detail::is_header(line))) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 3) reader.fail("expected 'user_id<TAB>item_id<TAB>rel'");
    const auto user = users.find(std::string(fields[0]));
    if (!user) reader.fail("user '" + std::string(fields[0]) + "' does not appear in the run");
    const auto item = catalog.find(std::string(fields[1]));
    if (!item) reader.fail("item '" + std::string(fields[1]) + "' is not in the catalog");
    if (fields[2] != "0" && fields[2] != "1") {
      reader.fail("relevance must be 0 or 1, got '" + std::string(fields[2]) + "'");
    }
    if (!seen.emplace(*user, *item).second) {
      reader.fail("duplicate judgment for user '" + std::string(fields[0]) + "' and item '" +
                  std::string(fields[1]) + "'");
    }
    qrels.set(*user, *item, fields[2] == "1");
  }
  return qrels;
}

// Rows `user_id<TAB>item_id`; optional header.
inline ExclusionSets read_exclusions(std::istream& in, const std::string& source,
                                     const UserSet& users, const ItemCatalog& catalog) {
  detail::LineReader reader(in, source);
  ExclusionSets exclusions(users.size(), catalog.size());
  std::string line;
  while (reader.next(line)) {
    if (line.empty() || (reader.line_no() == 1 && detail::is_header(line))) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 2) reader.fail("expected 'user_id<TAB>item_id'");
    const auto user = users.find(std::string(fields[0]));
    if (!user) reader.fail("unknown user '" + std::string(fields[0]) + "'");
    const auto item = catalog.find(std::string(fields[1]));
    if (!item) reader.fail("item '" + std::string(fields[1]) + "' is not in the catalog");
    exclusions.exclude(*user, *item);
  }
  return exclusions;
}

// Rows `item_id<TAB>v1<TAB>...<TAB>vd`. Returns one vector per catalog item,
// empty for items without a row.
inline std::vector<std::vector<double>> read_embeddings(std::istream& in, const std::string& source,
                                                        const ItemCatalog& catalog) {
  detail::LineReader reader(in, source);
  std::vector<std::vector<double>> vectors(catalog.size());
  std::size_t dim = 0;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() < 2) reader.fail("expected 'item_id<TAB>v1<TAB>...'");
    const auto item = catalog.find(std::string(fields[0]));
    if (!item) reader.fail("item '" + std::string(fields[0]) + "' is not in the catalog");
    if (!vectors[*item].empty()) reader.fail("duplicate embedding for '" + std::string(fields[0]) + "'");
    if (dim == 0) dim = fields.size() - 1;
    if (fields.size() - 1 != dim) {
      reader.fail("embedding dimension " + std::to_string(fields.size() - 1) +
                  " differs from " + std::to_string(dim));
    }
    std::vector<double> v;
    double sq = 0.0;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      v.push_back(detail::parse_double(reader, fields[f], "embedding component"));
      sq += v.back() * v.back();
    }
    if (!(sq > 0.0)) reader.fail("embedding of '" + std::string(fields[0]) + "' is the zero vector");
    vectors[*item] = std::move(v);
  }
  return vectors;
}

// CSV with header `measure,direction,<system>,...`; direction is `higher` or
// `lower`; `nan` or an empty cell is an undefined score.
inline ScoreMatrix read_score_matrix(std::istream& in, const std::string& source) {
  detail::LineReader reader(in, source);
  std::string line;
  if (!reader.next(line)) throw ValidationError(source + ": empty score matrix");
  const auto header = detail::split(line, ',');
  if (header.size() < 4 || header[0] != "measure" || header[1] != "direction") {
    reader.fail("expected header 'measure,direction,<system>,<system>,...' with >= 2 systems");
  }
  ScoreMatrix matrix;
  for (std::size_t c = 2; c < header.size(); ++c) matrix.systems.emplace_back(header[c]);
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() != header.size()) {
      reader.fail("expected " + std::to_string(header.size()) + " comma-separated fields");
    }
    ScoreMatrix::Row row;
    row.measure = std::string(fields[0]);
    if (fields[1] == "higher") {
      row.direction = Direction::kHigherIsFairer;
    } else if (fields[1] == "lower") {
      row.direction = Direction::kLowerIsFairer;
    } else {
      reader.fail("direction must be 'higher' or 'lower'");
    }
    for (std::size_t c = 2; c < fields.size(); ++c) {
      if (fields[c].empty() || fields[c] == "nan" || fields[c] == "NaN") {
        row.scores.push_back(std::nullopt);
      } else {
        row.scores.push_back(detail::parse_double(reader, fields[c], "score"));
      }
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace itemfair::io

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

// JSON and CSV renderings of evaluations, bounds tables and correlation
// matrices. Key order is fixed so identical inputs give identical bytes.

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "itemfair/analysis.hpp"
#include "itemfair/bounds.hpp"
#include "itemfair/evaluation.hpp"
#include "itemfair/io.hpp"

namespace itemfair::report {

using Json = nlohmann::ordered_json;

inline std::string_view direction_name(Direction d) {
  return d == Direction::kHigherIsFairer ? "higher" : "lower";
}

namespace detail {

inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
inline Json number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

inline std::string cell(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? io::format_double(*v) : "";
}

inline std::string_view similarity_name(const EvalParams& p) {
  if (!p.similarity) return "all";
  switch (p.similarity->kind()) {
    case SimilarityProvider::Kind::kAllSimilar:
      return "all";
    case SimilarityProvider::Kind::kEmbeddings:
      return "embeddings";
    case SimilarityProvider::Kind::kExplicitPairs:
      return "pairs";
  }
  return "all";
}

inline Json relevance_json(const RelevanceScores& s) {
  Json j;
  j["hr"] = s.hr;
  j["mrr"] = s.mrr;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["map"] = s.map;
  j["ndcg"] = s.ndcg;
  return j;
}

}  // namespace detail

inline Json to_json(const Evaluation& ev) {
  const auto sim = ev.params.similarity_or_default();
  Json meta;
  meta["k"] = ev.shape.k;
  meta["m"] = ev.num_users;
  meta["n"] = ev.shape.n;
  meta["rounds"] = ev.num_rounds;
  meta["gamma"] = ev.params.gamma;
  meta["log_base"] = ev.params.log_base ? Json(*ev.params.log_base) : Json("n");
  meta["alpha"] = sim.alpha();
  meta["beta"] = sim.beta();
  meta["similarity"] = detail::similarity_name(ev.params);

  Json measures = Json::object();
  for (const auto& e : ev.measures) {
    Json j;
    j["value"] = e.original.defined ? detail::number(e.original.value) : Json(nullptr);
    j["defined"] = e.original.defined;
    j["direction"] = direction_name(e.original.direction);
    if (e.bounds) {
      j["most_unfair"] = detail::number(e.bounds->first);
      j["most_fair"] = detail::number(e.bounds->second);
    } else {
      j["most_unfair"] = nullptr;
      j["most_fair"] = nullptr;
    }
    j["corrected_value"] = detail::number(e.corrected);
    if (!e.note.empty()) j["note"] = e.note;
    measures[std::string(measure_name(e.id))] = std::move(j);
  }

  Json out;
  out["metadata"] = std::move(meta);
  out["fairness"] = std::move(measures);
  out["corrections_degenerate"] = ev.corrections_degenerate;
  if (ev.relevance) {
    Json rel = detail::relevance_json(ev.relevance->mean);
    rel["evaluated_users"] = ev.relevance->evaluated_users;
    out["relevance"] = std::move(rel);
  }
  return out;
}

inline void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// measure,direction,value,defined,corrected_value,most_unfair,most_fair
inline void write_csv(std::ostream& out, const Evaluation& ev) {
  out << "measure,direction,value,defined,corrected_value,most_unfair,most_fair\n";
  for (const auto& e : ev.measures) {
    out << measure_name(e.id) << ',' << direction_name(e.original.direction) << ','
        << (e.original.defined ? detail::cell(e.original.value) : "") << ','
        << (e.original.defined ? "true" : "false") << ',' << detail::cell(e.corrected) << ','
        << (e.bounds ? detail::cell(e.bounds->first) : "") << ','
        << (e.bounds ? detail::cell(e.bounds->second) : "") << '\n';
  }
  if (ev.relevance) {
    const auto& s = ev.relevance->mean;
    const std::pair<const char*, double> rows[] = {{"hr", s.hr},         {"mrr", s.mrr},
                                                   {"precision", s.precision},
                                                   {"recall", s.recall}, {"map", s.map},
                                                   {"ndcg", s.ndcg}};
    for (const auto& [name, v] : rows) {
      out << name << ",higher," << io::format_double(v) << ",true,,,\n";
    }
  }
}

inline Json to_json(const Shape& s, const std::vector<BoundsReport>& rows) {
  Json out;
  out["k"] = s.k;
  out["m"] = s.m;
  out["n"] = s.n;
  Json table = Json::object();
  for (const auto& r : rows) {
    Json j;
    j["direction"] = direction_name(r.direction);
    j["most_unfair"] = detail::number(r.most_unfair);
    j["most_fair"] = r.applicable ? detail::number(r.most_fair) : Json(nullptr);
    j["applicable"] = r.applicable;
    if (!r.note.empty()) j["note"] = r.note;
    table[r.measure] = std::move(j);
  }
  out["bounds"] = std::move(table);
  return out;
}

inline void write_csv(std::ostream& out, const std::vector<BoundsReport>& rows) {
  out << "measure,direction,most_unfair,most_fair,applicable\n";
  for (const auto& r : rows) {
    out << r.measure << ',' << direction_name(r.direction) << ','
        << io::format_double(r.most_unfair) << ','
        << (r.applicable ? io::format_double(r.most_fair) : "") << ','
        << (r.applicable ? "true" : "false") << '\n';
  }
}

inline Json to_json(const CorrelationMatrix& cm) {
  Json out;
  out["measures"] = cm.measures;
  out["dropped"] = cm.dropped;
  Json pairs = Json::array();
  for (std::size_t a = 0; a < cm.measures.size(); ++a) {
    for (std::size_t b = a + 1; b < cm.measures.size(); ++b) {
      const auto& c = cm.cells[a][b];
      Json j;
      j["a"] = cm.measures[a];
      j["b"] = cm.measures[b];
      j["tau"] = c.tau;
      j["p"] = c.p;
      j["significant_bh"] = c.significant;
      j["significant_bonferroni"] = c.significant_bonferroni;
      j["significant_holm"] = c.significant_holm;
      pairs.push_back(std::move(j));
    }
  }
  out["pairs"] = std::move(pairs);
  return out;
}

inline void write_csv(std::ostream& out, const CorrelationMatrix& cm) {
  out << "measure_a,measure_b,tau,p,significant_bh,significant_bonferroni,significant_holm\n";
  auto flag = [](bool b) { return b ? "true" : "false"; };
  for (std::size_t a = 0; a < cm.measures.size(); ++a) {
    for (std::size_t b = a + 1; b < cm.measures.size(); ++b) {
      const auto& c = cm.cells[a][b];
      out << cm.measures[a] << ',' << cm.measures[b] << ',' << io::format_double(c.tau) << ','
          << io::format_double(c.p) << ',' << flag(c.significant) << ','
          << flag(c.significant_bonferroni) << ',' << flag(c.significant_holm) << '\n';
    }
  }
}

// One row per fraction; columns are measure values then corrected values.
inline void write_sweep_csv(std::ostream& out, const std::vector<double>& fractions,
                            const std::vector<Evaluation>& evals) {
  out << "fraction";
  for (auto id : kAllMeasures) out << ',' << measure_name(id);
  for (auto id : kAllMeasures) out << ',' << measure_name(id) << "_our";
  out << ",hr,mrr,precision,recall,map,ndcg\n";
  for (std::size_t s = 0; s < evals.size(); ++s) {
    const auto& ev = evals[s];
    out << io::format_double(fractions[s]);
    for (auto id : kAllMeasures) {
      const auto& e = ev.at(id);
      out << ',' << (e.original.defined ? detail::cell(e.original.value) : "");
    }
    for (auto id : kAllMeasures) out << ',' << detail::cell(ev.at(id).corrected);
    if (ev.relevance) {
      const auto& r = ev.relevance->mean;
      for (double v : {r.hr, r.mrr, r.precision, r.recall, r.map, r.ndcg}) {
        out << ',' << io::format_double(v);
      }
    } else {
      out << ",,,,,,";
    }
    out << '\n';
  }
}

}  // namespace itemfair::report

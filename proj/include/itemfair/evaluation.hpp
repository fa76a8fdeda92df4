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

// Evaluates every fairness measure (original, corrected, bounds) and,
// optionally, the relevance measures on one run.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "itemfair/bounds.hpp"
#include "itemfair/core.hpp"
#include "itemfair/exposure.hpp"
#include "itemfair/fairness.hpp"
#include "itemfair/relevance.hpp"

namespace itemfair {

enum class MeasureId { kJain, kQf, kEnt, kEntDef, kGini, kGiniW, kFsat, kVocd, kIid, kAid };

inline constexpr std::array<MeasureId, 10> kAllMeasures = {
    MeasureId::kJain, MeasureId::kQf,    MeasureId::kEnt,  MeasureId::kEntDef, MeasureId::kGini,
    MeasureId::kGiniW, MeasureId::kFsat, MeasureId::kVocd, MeasureId::kIid,    MeasureId::kAid};

inline std::string_view measure_name(MeasureId id) {
  switch (id) {
    case MeasureId::kJain: return "jain";
    case MeasureId::kQf: return "qf";
    case MeasureId::kEnt: return "ent";
    case MeasureId::kEntDef: return "ent_def";
    case MeasureId::kGini: return "gini";
    case MeasureId::kGiniW: return "gini_w";
    case MeasureId::kFsat: return "fsat";
    case MeasureId::kVocd: return "vocd";
    case MeasureId::kIid: return "ii_d";
    case MeasureId::kAid: return "ai_d";
  }
  return "?";
}

inline MeasureId parse_measure(std::string_view name) {
  for (auto id : kAllMeasures) {
    if (measure_name(id) == name) return id;
  }
  throw ValidationError("unknown measure '" + std::string(name) + "'");
}

inline Direction measure_direction(MeasureId id) {
  switch (id) {
    case MeasureId::kGini:
    case MeasureId::kGiniW:
    case MeasureId::kVocd:
    case MeasureId::kIid:
    case MeasureId::kAid:
      return Direction::kLowerIsFairer;
    default:
      return Direction::kHigherIsFairer;
  }
}

struct EvalParams {
  double gamma = ExaminationFunction::kDefaultPatience;
  // nullopt means base n.
  std::optional<double> log_base;
  double alpha = 2.0;
  double beta = 0.0;
  // nullopt means every recommended pair is similar (alpha = 2).
  std::optional<SimilarityProvider> similarity;

  SimilarityProvider similarity_or_default() const {
    return similarity ? *similarity : SimilarityProvider::all_similar(beta);
  }
};

// One original measure on a run. VoCD without similar pairs is reported as
// undefined.
inline MeasureResult original_measure(MeasureId id, const TopKRun& run, const EvalParams& params) {
  switch (id) {
    case MeasureId::kJain:
      return jain_ori(build_exposure(run, ExaminationFunction::uniform()));
    case MeasureId::kQf:
      return qf_ori(build_exposure(run, ExaminationFunction::uniform()));
    case MeasureId::kEnt:
      return ent_ori(build_exposure(run, ExaminationFunction::uniform()), params.log_base);
    case MeasureId::kEntDef:
      return MeasureResult::of(
          ent_def(build_exposure(run, ExaminationFunction::uniform()), params.log_base),
          Direction::kHigherIsFairer);
    case MeasureId::kGini:
      return gini_ori(build_exposure(run, ExaminationFunction::uniform()));
    case MeasureId::kGiniW:
      return giniw_ori(build_exposure(run, ExaminationFunction::dcg()));
    case MeasureId::kFsat:
      return fsat_ori(build_exposure(run, ExaminationFunction::uniform()));
    case MeasureId::kVocd:
      try {
        return vocd_ori(build_exposure(run, ExaminationFunction::uniform()),
                        params.similarity_or_default());
      } catch (const NoSimilarPairs&) {
        return MeasureResult::undefined(Direction::kLowerIsFairer);
      }
    case MeasureId::kIid:
      return iid_ori(build_user_item_exposure(run, params.gamma));
    case MeasureId::kAid:
      return aid_ori(build_user_item_exposure(run, params.gamma));
  }
  throw ValidationError("unhandled measure");
}

struct MeasureEntry {
  MeasureId id = MeasureId::kJain;
  MeasureResult original;
  // Corrected score; nullopt when the measure has no correction or the
  // normalization is degenerate for this shape.
  std::optional<double> corrected;
  // (most unfair, most fair) at this shape, when known.
  std::optional<std::pair<double, double>> bounds;
  std::string note;

  static MeasureEntry of(MeasureId id, MeasureResult original) {
    MeasureEntry e;
    e.id = id;
    e.original = original;
    return e;
  }
};

struct Evaluation {
  Shape shape;
  std::size_t num_users = 0;
  std::size_t num_rounds = 1;
  EvalParams params;
  std::vector<MeasureEntry> measures;
  std::optional<RelevanceReport> relevance;
  // True when corrections could not be computed because most-fair equals
  // most-unfair (k = n and similar).
  bool corrections_degenerate = false;

  const MeasureEntry& at(MeasureId id) const {
    for (const auto& e : measures) {
      if (e.id == id) return e;
    }
    throw ValidationError("measure not evaluated: " + std::string(measure_name(id)));
  }
};

inline Evaluation evaluate(const TopKRun& run, const EvalParams& params,
                           const RelevanceJudgments* qrels = nullptr) {
  Evaluation ev;
  ev.shape = Shape::of(run);
  ev.num_users = run.num_users();
  ev.num_rounds = run.num_rounds();
  ev.params = params;
  const Shape& s = ev.shape;

  const auto uniform = build_exposure(run, ExaminationFunction::uniform());
  const auto dcg = build_exposure(run, ExaminationFunction::dcg());
  const auto uie = build_user_item_exposure(run, params.gamma);

  // Runs a correction, recording degeneracy instead of propagating it.
  auto correct = [&](MeasureEntry& entry, auto&& fn) {
    try {
      entry.corrected = fn();
    } catch (const NormalizationDegenerate& e) {
      ev.corrections_degenerate = true;
      entry.note = e.what();
    }
  };

  auto jain = MeasureEntry::of(MeasureId::kJain, jain_ori(uniform));
  jain.bounds = std::pair{jain_min(s), jain_max(s)};
  correct(jain, [&] { return jain_our(jain.original.value, s); });
  ev.measures.push_back(jain);

  auto qf = MeasureEntry::of(MeasureId::kQf, qf_ori(uniform));
  qf.bounds = std::pair{qf_min(s), qf_max(s)};
  correct(qf, [&] { return qf_our(uniform.recommended, s); });
  ev.measures.push_back(qf);

  auto ent = MeasureEntry::of(MeasureId::kEnt, ent_ori(uniform, params.log_base));
  ent.bounds = std::pair{ent_min(s, params.log_base), ent_max(s, params.log_base)};
  correct(ent, [&] { return ent_our(uniform); });
  if (!ent.original.defined && ent.note.empty()) {
    ent.note = "unrecommended catalog items make log p(i) undefined";
  }
  ev.measures.push_back(ent);

  auto entdef = MeasureEntry::of(
      MeasureId::kEntDef,
      MeasureResult::of(ent_def(uniform, params.log_base), Direction::kHigherIsFairer));
  entdef.bounds = ent.bounds;
  ev.measures.push_back(entdef);

  auto gini = MeasureEntry::of(MeasureId::kGini, gini_ori(uniform));
  gini.bounds = std::pair{gini_max(s), gini_min(s)};
  correct(gini, [&] { return gini_our(gini.original.value, s); });
  ev.measures.push_back(gini);

  auto giniw = MeasureEntry::of(MeasureId::kGiniW, giniw_ori(dcg));
  if (auto lo = giniw_min(s)) {
    giniw.bounds = std::pair{giniw_max(s), *lo};
  } else {
    giniw.note = "km > n: most-fair Gini-w unknown, corrected score divides by the max only";
  }
  correct(giniw, [&] { return giniw_our(giniw.original.value, s); });
  ev.measures.push_back(giniw);

  auto fsat = MeasureEntry::of(MeasureId::kFsat, fsat_ori(uniform));
  fsat.bounds = std::pair{fsat_min(s), fsat_max(s)};
  if (s.slots() < s.n) fsat.note = "km < n: always fair";
  correct(fsat, [&] { return fsat_our(fsat.original.value, s); });
  ev.measures.push_back(fsat);

  auto vocd =
      MeasureEntry::of(MeasureId::kVocd, MeasureResult::undefined(Direction::kLowerIsFairer));
  try {
    vocd.original = vocd_ori(uniform, params.similarity_or_default());
  } catch (const NoSimilarPairs& e) {
    vocd.note = e.what();
  }
  vocd.bounds = std::pair{vocd_max_bound(s.m, params.similarity_or_default().beta()), 0.0};
  ev.measures.push_back(vocd);

  ev.measures.push_back(MeasureEntry::of(MeasureId::kIid, iid_ori(uie)));
  ev.measures.push_back(MeasureEntry::of(MeasureId::kAid, aid_ori(uie)));

  if (qrels != nullptr) ev.relevance = evaluate_relevance(run, *qrels);
  return ev;
}

}  // namespace itemfair

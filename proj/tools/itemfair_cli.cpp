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
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "itemfair/itemfair.hpp"

namespace {

using namespace itemfair;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitSpaceTooLarge = 3;

struct ParamFlags {
  double gamma = ExaminationFunction::kDefaultPatience;
  std::optional<double> log_base;
  double alpha = 2.0;
  double beta = 0.0;

  void attach(CLI::App* app) {
    app->add_option("--gamma", gamma, "RBP patience for II-D and AI-D")->capture_default_str();
    app->add_option("--log-base", log_base, "Entropy log base (default: n)");
    app->add_option("--alpha", alpha, "VoCD cosine-distance threshold")->capture_default_str();
    app->add_option("--beta", beta, "VoCD coverage-disparity tolerance")->capture_default_str();
  }

  EvalParams params() const {
    if (log_base && !(*log_base > 0.0 && *log_base != 1.0)) {
      throw ValidationError("--log-base must be positive and different from 1");
    }
    ExaminationFunction::rbp(gamma);
    EvalParams p;
    p.gamma = gamma;
    p.log_base = log_base;
    p.alpha = alpha;
    p.beta = beta;
    return p;
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  return in;
}

// Writes to the named file, or stdout when the name is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ValidationError(path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

ItemCatalog load_catalog(const std::string& path) {
  auto in = open_input(path);
  return io::read_catalog(in, path);
}

void emit(const std::string& format, const std::string& output, const report::Json& json,
          const std::function<void(std::ostream&)>& csv) {
  Output out(output);
  if (format == "json") {
    report::write_json(out.stream(), json);
  } else {
    csv(out.stream());
  }
}

CLI::Option* add_format(CLI::App* app, std::string& format, const std::string& fallback) {
  format = fallback;
  return app->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

struct EvalCommand {
  std::string run, catalog, qrels, embeddings, format, output;
  std::size_t k = 0;
  ParamFlags flags;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("eval", "Fairness, bounds and corrected scores of a run");
    app->add_option("--run", run, "Run file")->required();
    app->add_option("--catalog", catalog, "Catalog file")->required();
    app->add_option("-k,--k", k, "Cutoff, checked against the run")->required();
    app->add_option("--qrels", qrels, "Relevance judgments");
    app->add_option("--embeddings", embeddings, "Item embeddings for VoCD similarity");
    add_format(app, format, "json");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    flags.attach(app);
    app->callback([this] { code = execute(); });
  }

  int execute() const {
    const auto items = load_catalog(catalog);
    auto run_in = open_input(run);
    const auto loaded = io::read_run(run_in, run, items, k);
    auto params = flags.params();
    if (!embeddings.empty()) {
      auto in = open_input(embeddings);
      params.similarity = SimilarityProvider::embeddings(io::read_embeddings(in, embeddings, items),
                                                         params.alpha, params.beta);
    } else if (params.alpha != 2.0) {
      throw ValidationError("--alpha other than 2 needs --embeddings");
    }
    std::optional<RelevanceJudgments> judgments;
    if (!qrels.empty()) {
      auto in = open_input(qrels);
      judgments = io::read_qrels(in, qrels, loaded.users, items);
    }
    const auto ev = evaluate(loaded.run, params, judgments ? &*judgments : nullptr);
    emit(format, output, report::to_json(ev), [&](std::ostream& os) { report::write_csv(os, ev); });
    if (ev.corrections_degenerate) {
      std::cerr << "itemfair: most-fair and most-unfair coincide for this shape; corrected "
                   "scores left empty\n";
      return kExitDegenerate;
    }
    return kExitOk;
  }

  int code = kExitOk;
};

struct BoundsCommand {
  std::int64_t k = 0, m = 0, n = 0;
  std::optional<double> log_base;
  double beta = 0.0;
  std::string format, output;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("bounds", "Most-unfair and most-fair values for a shape");
    app->add_option("-k,--k", k, "Cutoff")->required();
    app->add_option("-m,--m", m, "Number of users")->required();
    app->add_option("-n,--n", n, "Catalog size")->required();
    app->add_option("--log-base", log_base, "Entropy log base (default: n)");
    app->add_option("--beta", beta, "VoCD coverage-disparity tolerance")->capture_default_str();
    add_format(app, format, "csv");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    app->callback([this] { execute(); });
  }

  void execute() const {
    const Shape s{k, m, n};
    const auto rows = bounds_table(s, log_base, beta);
    emit(format, output, report::to_json(s, rows),
         [&](std::ostream& os) { report::write_csv(os, rows); });
  }
};

struct CorrelateCommand {
  std::string scores, format, output;
  double alpha = 0.05;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("correlate", "Kendall tau between measures over systems");
    app->add_option("--scores", scores, "Score matrix CSV")->required();
    app->add_option("--alpha", alpha, "Significance level")->capture_default_str();
    add_format(app, format, "csv");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    app->callback([this] { execute(); });
  }

  void execute() const {
    auto in = open_input(scores);
    const auto cm = correlation_matrix(io::read_score_matrix(in, scores), alpha);
    for (const auto& name : cm.dropped) {
      std::cerr << "itemfair: dropped '" << name << "' (undefined or constant scores)\n";
    }
    emit(format, output, report::to_json(cm), [&](std::ostream& os) { report::write_csv(os, cm); });
  }
};

struct SynthCommand {
  std::string kind, mode, catalog, catalog_out, exclusions, output;
  std::size_t k = 0, m = 0, n = 0;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("synth", "Generate a most-fair or most-unfair run");
    app->add_option("kind", kind)->required()->check(CLI::IsMember({"mostfair", "mostunfair"}));
    app->add_option("mode", mode)->required()->check(
        CLI::IsMember({"repeatable", "nonrepeatable"}));
    app->add_option("-k,--k", k, "Cutoff")->required();
    app->add_option("-m,--m", m, "Number of users")->required();
    app->add_option("-n,--n", n, "Catalog size (ignored with --catalog)");
    app->add_option("--catalog", catalog, "Catalog file supplying item ids");
    app->add_option("--catalog-out", catalog_out, "Write the generated catalog here");
    app->add_option("--exclusions", exclusions, "Per-user excluded items (users u1..um)");
    app->add_option("-o,--output", output, "Run file (default stdout)");
    app->callback([this] { execute(); });
  }

  void execute() const {
    const auto items = catalog.empty() ? ItemCatalog::numbered(n, "i") : load_catalog(catalog);
    const auto users = UserSet::numbered(m, "u");
    std::optional<ExclusionSets> excl;
    if (!exclusions.empty()) {
      auto in = open_input(exclusions);
      excl = io::read_exclusions(in, exclusions, users, items);
    }
    const auto repeat = mode == "repeatable" ? Repeatability::kRepeatable
                                             : Repeatability::kNonrepeatable;
    const auto run = kind == "mostfair" ? most_fair(k, m, items.size(), repeat, excl ? &*excl : nullptr)
                                        : most_unfair(k, m, items.size(), repeat, excl ? &*excl : nullptr);
    Output out(output);
    io::write_run(out.stream(), run, users, items);
    if (!catalog_out.empty()) {
      Output cat(catalog_out);
      for (const auto& id : items.ids()) cat.stream() << id << '\n';
    }
  }
};

struct WindowCommand {
  std::string run, catalog, output;
  std::size_t start = 1, width = 5;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("window", "Cut a rank window out of a deeper run");
    app->add_option("--run", run, "Deep single-round run file")->required();
    app->add_option("--catalog", catalog, "Catalog file")->required();
    app->add_option("--start", start, "First rank of the window (1-based)")->required();
    app->add_option("--width", width, "Window width")->capture_default_str();
    app->add_option("-o,--output", output, "Output file (default stdout)");
    app->callback([this] { execute(); });
  }

  void execute() const {
    const auto items = load_catalog(catalog);
    auto in = open_input(run);
    const auto loaded = io::read_run(in, run, items);
    if (loaded.run.num_rounds() != 1) throw ValidationError(run + ": window needs a single round");
    std::vector<std::vector<ItemIndex>> rankings;
    for (UserIndex u = 0; u < loaded.run.num_users(); ++u) {
      const auto list = loaded.run.list(u);
      rankings.emplace_back(list.begin(), list.end());
    }
    const auto cut = sliding_window(rankings, items.size(), start, width);
    Output out(output);
    io::write_run(out.stream(), cut, loaded.users, items);
  }
};

struct InsertCommand {
  std::string mode, format, output;
  std::size_t users = 1000, k = 10;
  std::optional<std::uint64_t> seed;
  ParamFlags flags;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("insert", "Artificial insertion sweep");
    app->add_option("mode", mode)->required()->check(
        CLI::IsMember({"le-relevant", "me-irrelevant"}));
    app->add_option("--users", users, "Number of users")->capture_default_str();
    app->add_option("-k,--k", k, "Cutoff")->capture_default_str();
    app->add_option("--seed", seed, "Shuffle item labels with this seed");
    add_format(app, format, "csv");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    flags.attach(app);
    app->callback([this] { execute(); });
  }

  void execute() const {
    InsertionConfig config;
    config.num_users = users;
    config.k = k;
    config.seed = seed;
    config.mode = mode == "le-relevant" ? InsertionMode::kLeastExposedRelevant
                                        : InsertionMode::kMostExposedIrrelevant;
    const auto points = insertion_sweep(config, flags.params());
    std::vector<double> fractions;
    std::vector<Evaluation> evals;
    report::Json json = report::Json::array();
    for (const auto& p : points) {
      fractions.push_back(p.fraction);
      evals.push_back(p.evaluation);
      report::Json j;
      j["fraction"] = p.fraction;
      j["report"] = report::to_json(p.evaluation);
      json.push_back(std::move(j));
    }
    emit(format, output, json,
         [&](std::ostream& os) { report::write_sweep_csv(os, fractions, evals); });
  }
};

struct OracleCommand {
  std::string measure, format, output;
  EnumerationSpec spec;
  bool similarity_sweep = false;
  ParamFlags flags;

  void attach(CLI::App& root) {
    auto* app = root.add_subcommand("oracle", "Exhaustive extremes of a measure on a small shape");
    app->add_option("--measure", measure, "jain, qf, ent, ent_def, gini, gini_w, fsat, vocd, ii_d or ai_d")->required();
    app->add_option("-k,--k", spec.k, "Cutoff")->required();
    app->add_option("-m,--m", spec.m, "Number of users")->required();
    app->add_option("-n,--n", spec.n, "Catalog size")->required();
    app->add_option("--rounds", spec.rounds, "Rounds per user")->capture_default_str();
    app->add_option("--cap", spec.cap, "Largest search space accepted")->capture_default_str();
    app->add_flag("--similarity-sweep", similarity_sweep,
                  "VoCD only: also enumerate every set of similar pairs");
    add_format(app, format, "json");
    app->add_option("-o,--output", output, "Output file (default stdout)");
    flags.attach(app);
    app->callback([this] { execute(); });
  }

  static report::Json lists_json(const std::optional<TopKRun>& run) {
    if (!run) return nullptr;
    report::Json lists = report::Json::array();
    for (std::size_t l = 0; l < run->num_lists(); ++l) {
      report::Json list = report::Json::array();
      for (std::size_t r = 0; r < run->k(); ++r) {
        list.push_back("i" + std::to_string(run->slots()[l * run->k() + r] + 1));
      }
      lists.push_back(std::move(list));
    }
    return lists;
  }

  void execute() const {
    const auto id = parse_measure(measure);
    const auto params = flags.params();
    report::Json j;
    j["measure"] = measure_name(id);
    j["k"] = spec.k;
    j["m"] = spec.m;
    j["n"] = spec.n;
    j["rounds"] = spec.rounds;
    if (similarity_sweep) {
      if (id != MeasureId::kVocd) throw ValidationError("--similarity-sweep applies to vocd only");
      check_enumerable(spec);
      const auto sweep = vocd_similarity_sweep(spec, params.beta);
      j["max"] = sweep.max_value;
      j["bound"] = vocd_max_bound(static_cast<std::int64_t>(spec.m * spec.rounds), params.beta);
      j["runs"] = sweep.runs;
      j["similarity_sets"] = sweep.similarity_sets;
      j["argmax"] = lists_json(sweep.witness);
      emit(format, output, j, [&](std::ostream& os) {
        os << "measure,max,bound,runs,similarity_sets\nvocd," << io::format_double(sweep.max_value)
           << ',' << io::format_double(j["bound"].get<double>()) << ',' << sweep.runs << ','
           << sweep.similarity_sets << '\n';
      });
      return;
    }
    const auto result = enumerate_extremes(spec, id, params);
    const bool any = result.evaluated > result.undefined;
    j["min"] = any ? report::Json(result.min_value) : report::Json(nullptr);
    j["max"] = any ? report::Json(result.max_value) : report::Json(nullptr);
    j["evaluated"] = result.evaluated;
    j["undefined"] = result.undefined;
    j["argmin"] = lists_json(result.argmin);
    j["argmax"] = lists_json(result.argmax);
    emit(format, output, j, [&](std::ostream& os) {
      os << "measure,min,max,evaluated,undefined\n"
         << measure_name(id) << ',' << (any ? io::format_double(result.min_value) : "") << ','
         << (any ? io::format_double(result.max_value) : "") << ',' << result.evaluated << ','
         << result.undefined << '\n';
    });
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Item exposure fairness measures for top-k recommendation runs"};
  app.require_subcommand(1);
  EvalCommand eval;
  BoundsCommand bounds;
  CorrelateCommand correlate;
  SynthCommand synth;
  WindowCommand window;
  InsertCommand insert;
  OracleCommand oracle;
  eval.attach(app);
  bounds.attach(app);
  correlate.attach(app);
  synth.attach(app);
  window.attach(app);
  insert.attach(app);
  oracle.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const SpaceTooLarge& e) {
    std::cerr << "itemfair: " << e.what() << '\n';
    return kExitSpaceTooLarge;
  } catch (const NormalizationDegenerate& e) {
    std::cerr << "itemfair: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "itemfair: " << e.what() << '\n';
    return kExitValidation;
  }
  return eval.code;
}

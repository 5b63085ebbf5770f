/*
 * Copyright 2026 The dialectid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "dialectid/corpus.hpp"
#include "dialectid/ensemble.hpp"
#include "dialectid/error.hpp"
#include "dialectid/eval.hpp"
#include "dialectid/io.hpp"
#include "dialectid/model_io.hpp"
#include "dialectid/pipeline.hpp"
#include "dialectid/predfile.hpp"
#include "dialectid/preprocess.hpp"
#include "dialectid/run_config.hpp"
#include "dialectid/trainer.hpp"

namespace dialectid::cli {
namespace {

namespace fs = std::filesystem;

TableFormat format_for(const std::string& name, const fs::path& path) {
  return name.empty() ? format_from_extension(path) : parse_table_format(name);
}

// ---------------------------------------------------------------- clean

struct CleanOptions {
  std::string input;
  std::string output;
  std::string format;
  std::vector<std::string> noise_tokens;
  bool no_collapse = false;
  bool no_trim = false;
  bool keep_empty = false;
  bool drop_empty = false;
};

void cmd_clean(const CleanOptions& o, std::ostream& out) {
  if (o.keep_empty && o.drop_empty) {
    throw ValidationError("--keep-empty and --drop-empty are exclusive");
  }
  CleaningConfig config;
  if (!o.noise_tokens.empty()) config.noise_tokens = o.noise_tokens;
  config.collapse_whitespace = !o.no_collapse;
  config.trim = !o.no_trim;
  config.validate();

  const Corpus corpus = load_corpus(o.input, format_for(o.format, o.input));
  CleaningStats stats;
  const Corpus cleaned = clean_corpus(corpus, config, &stats, o.drop_empty);
  save_corpus(cleaned, o.output, format_for(o.format, o.output));
  out << fmt::format(
      "examples processed: {}\nnoise tokens removed: {}\ncontents emptied: {}\n"
      "rows dropped: {}\nrows written: {}\n",
      stats.examples, stats.tokens_removed, stats.emptied, stats.dropped,
      cleaned.size());
}

// ---------------------------------------------------------------- split

struct SplitOptions {
  std::string input;
  std::string train_out;
  std::string dev_out;
  std::string test_out;
  std::string fractions = "0.8,0.1,0.1";
  std::uint64_t seed = 0;
};

void cmd_split(const SplitOptions& o, std::ostream& out) {
  std::vector<double> values;
  std::string_view rest = o.fractions;
  while (true) {
    const auto comma = rest.find(',');
    values.push_back(parse_fraction(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (values.size() != 3) {
    throw ValidationError("--fractions needs three comma-separated values");
  }
  const SplitSpec spec{values[0], values[1], values[2], o.seed};
  const Corpus corpus = load_corpus(o.input);
  const auto [train, dev, test] = split_corpus(corpus, spec);
  save_corpus(train, o.train_out);
  save_corpus(dev, o.dev_out);
  save_corpus(test, o.test_out);
  out << fmt::format("train: {}\ndev: {}\ntest: {}\n", train.size(), dev.size(),
                     test.size());
}

// ------------------------------------------------------- train-baseline

struct TrainOptions {
  std::vector<std::string> train;
  std::string model;
  std::string model_id;
  std::string profile = "baseline";
  int ngram_min = 2;
  int ngram_max = 4;
  std::size_t max_features = 50000;
  std::optional<int> epochs;
  std::optional<double> learning_rate;
  std::optional<int> batch_size;
  std::optional<double> beta1;
  std::optional<double> beta2;
  std::optional<double> epsilon;
  std::optional<double> weight_decay;
  std::uint64_t seed = 0;
};

void cmd_train(const TrainOptions& o, std::ostream& out) {
  BackendConfig backend;
  backend.model_id = o.model_id.empty() ? fs::path(o.model).stem().string()
                                        : o.model_id;
  if (o.profile == "baseline") {
    backend.train.learning_rate = kBaselineLearningRate;
  } else if (o.profile != "finetune") {
    throw ValidationError("--profile must be baseline or finetune");
  }
  backend.ngram = {o.ngram_min, o.ngram_max, o.max_features};
  TrainConfig& t = backend.train;
  if (o.epochs) t.epochs = *o.epochs;
  if (o.learning_rate) t.learning_rate = *o.learning_rate;
  if (o.batch_size) t.batch_size = *o.batch_size;
  if (o.beta1) t.optimizer.beta1 = *o.beta1;
  if (o.beta2) t.optimizer.beta2 = *o.beta2;
  if (o.epsilon) t.optimizer.epsilon = *o.epsilon;
  if (o.weight_decay) t.optimizer.weight_decay = *o.weight_decay;
  t.seed = o.seed;
  t.validate();

  std::vector<Corpus> parts;
  for (const auto& p : o.train) parts.push_back(load_corpus(p));
  const Corpus corpus = concatenate(parts);
  std::vector<std::string> texts;
  for (const auto& ex : corpus.examples()) texts.push_back(ex.content);

  BaselineModel model;
  model.vocabulary = fit_vocabulary(texts, o.ngram_min, o.ngram_max,
                                    o.max_features);
  TrainResult result = train(corpus, model.vocabulary, t);
  model.classifier = std::move(result.model);
  auto meta = nlohmann::ordered_json::parse(backend_config_json(backend));
  meta["model_id"] = backend.model_id;
  meta["profile"] = o.profile;
  meta["loss_history"] = result.loss_history;
  model.metadata_json = meta.dump();
  save_model(model, o.model);
  write_manifest(make_manifest(backend.model_id, BackendKind::kNativeBaseline,
                               backend_config_json(backend)),
                 o.model + ".manifest.json");

  out << fmt::format("examples: {}\nclasses: {}\nvocabulary: {}\n",
                     corpus.size(), corpus.label_space().size(),
                     model.vocabulary.size());
  for (std::size_t e = 0; e < result.loss_history.size(); ++e) {
    out << fmt::format("epoch {:>3}  loss {:.6f}\n", e + 1,
                       result.loss_history[e]);
  }
  out << fmt::format("training accuracy: {:.2f}\n",
                     100.0 * training_accuracy(model.classifier,
                                               model.vocabulary, corpus));
}

// -------------------------------------------------------------- predict

struct PredictOptions {
  std::string model;
  std::string input;
  std::string output;
  std::string model_id;
  std::string submission;
  bool no_probabilities = false;
};

void cmd_predict(const PredictOptions& o, std::ostream& out) {
  const BaselineModel model = load_model(o.model);
  const Corpus corpus = load_corpus(o.input);
  PredictionSet set;
  set.model_id = o.model_id;
  if (set.model_id.empty()) {
    const auto meta = nlohmann::json::parse(model.metadata_json, nullptr, false);
    set.model_id = meta.is_object() && meta.contains("model_id")
                       ? meta["model_id"].get<std::string>()
                       : fs::path(o.model).stem().string();
  }
  if (!o.no_probabilities) {
    set.label_space = model.classifier.label_space();
    set.probabilities.emplace();
  }
  for (const auto& ex : corpus.examples()) {
    Prediction p =
        predict(model.classifier, vectorize(ex.content, model.vocabulary));
    set.entries.push_back({ex.id, std::move(p.label)});
    if (set.probabilities) set.probabilities->push_back(std::move(p.probabilities));
  }
  write_predictions(set, o.output);
  if (!o.submission.empty()) write_submission(set, o.submission);
  out << fmt::format("wrote {} predictions for model '{}'\n", set.entries.size(),
                     set.model_id);
}

// ------------------------------------------------------------- ensemble

struct EnsembleOptions {
  std::vector<std::string> predictions;
  std::string strategy = "hard";
  std::string tie_break = "model-priority";
  std::vector<std::string> priority;
  std::string ids_from;
  std::string output;
  std::string agreement;
  std::string submission;
};

void cmd_ensemble(const EnsembleOptions& o, std::ostream& out) {
  std::vector<PredictionSet> sets;
  std::optional<std::vector<std::string>> expected;
  if (!o.ids_from.empty()) expected = load_corpus(o.ids_from).ids();
  for (const auto& p : o.predictions) {
    sets.push_back(expected ? read_predictions(p, *expected)
                            : read_predictions(p));
  }
  VotePolicy policy;
  policy.strategy = parse_vote_strategy(o.strategy);
  policy.tie_break = parse_tie_break(o.tie_break);
  policy.model_priority = o.priority;
  if (policy.model_priority.empty()) {
    // Default: the order the files were given in.
    for (const auto& s : sets) policy.model_priority.push_back(s.model_id);
  }
  const PredictionSet combined = vote(sets, policy);
  write_predictions(combined, o.output);
  if (!o.submission.empty()) write_submission(combined, o.submission);
  const AgreementReport report = agreement_report(sets);
  if (!o.agreement.empty()) {
    io::write_file_atomic(o.agreement + ".tsv", format_agreement_tsv(report));
    io::write_file_atomic(o.agreement + ".txt", format_agreement_text(report));
  }
  out << format_agreement_text(report);
  out << fmt::format("wrote {} ensemble predictions ({} voting, {})\n",
                     combined.entries.size(), to_string(policy.strategy),
                     to_string(policy.tie_break));
}

// ------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string gold;
  std::string predictions;
  std::string average = "macro";
  int digits = 2;
  std::string format = "text";
  std::string confusion;
};

std::string render_report(const MetricsReport& report, const std::string& format,
                          int digits, Average average) {
  if (format == "text") return format_report_text(report, digits, average);
  if (format == "tsv") return format_report_tsv(report, digits);
  if (format == "json") return format_report_json(report, digits);
  throw ValidationError("--format must be text, tsv or json");
}

void cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  const Average average = parse_average(o.average);
  const Corpus gold = load_corpus(o.gold);
  const PredictionSet set = read_predictions(o.predictions, gold.ids());
  const ConfusionMatrix matrix = score_predictions(gold, set);
  if (!o.confusion.empty()) {
    io::write_file_atomic(o.confusion, format_confusion_tsv(matrix));
  }
  out << render_report(metrics_report(matrix), o.format, o.digits, average);
}

// ------------------------------------------------------------------ run

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
};

void cmd_run(const RunOptions& o, std::ostream& out) {
  RunConfig config = load_run_config(o.config);
  if (o.seed) override_seeds(config, *o.seed);
  if (!o.output_dir.empty()) {
    config.output_dir = o.output_dir;
  } else if (config.output_dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    config.output_dir = env && *env ? env : "dialectid-out";
  }
  const RunSummary summary = run_pipeline(config, out);
  out << fmt::format("outputs written to {}\n", summary.output_dir.string());
}

// --------------------------------------------------------------- report

struct ReportOptions {
  std::string gold;
  std::vector<std::string> predictions;
  std::string ensemble;
  std::string run_dir;
  std::string split = "test";
  std::string average = "macro";
  int digits = 2;
  std::string format = "text";
};

void cmd_report(const ReportOptions& o, std::ostream& out) {
  const Average average = parse_average(o.average);
  fs::path gold_path = o.gold;
  std::vector<fs::path> files(o.predictions.begin(), o.predictions.end());
  fs::path ensemble_file = o.ensemble;

  if (!o.run_dir.empty()) {
    const fs::path dir = o.run_dir;
    const auto manifest =
        nlohmann::json::parse(io::read_file(dir / "manifest.json"), nullptr, false);
    if (!manifest.is_object() || !manifest.contains("config")) {
      throw ParseError((dir / "manifest.json").string() + ": not a run manifest");
    }
    if (gold_path.empty()) {
      gold_path = dir / "data" / (o.split + ".tsv");
      if (!fs::exists(gold_path)) gold_path.replace_extension(".csv");
    }
    for (const auto& b : manifest["config"]["backends"]) {
      files.push_back(dir / o.split / "predictions" /
                      (b["id"].get<std::string>() + ".tsv"));
    }
    if (ensemble_file.empty()) {
      ensemble_file = dir / o.split / "predictions" / "ensemble.tsv";
    }
  }
  if (gold_path.empty()) throw ValidationError("--gold or --run-dir is required");
  if (files.empty() && ensemble_file.empty()) {
    throw ValidationError("no prediction files given");
  }

  const Corpus gold = load_corpus(gold_path);
  std::vector<NamedReport> reports;
  for (const auto& f : files) {
    const PredictionSet set = read_predictions(f, gold.ids());
    reports.push_back({set.model_id,
                       metrics_report(score_predictions(gold, set)), false, {}});
  }
  if (!ensemble_file.empty()) {
    const PredictionSet set = read_predictions(ensemble_file, gold.ids());
    reports.push_back({set.model_id, metrics_report(score_predictions(gold, set)),
                       true,
                       set.model_id == kEnsembleModelId
                           ? std::string("Ensemble")
                           : "Ensemble - " + set.model_id});
  }
  const ResultsTable table = compare_models(reports, average);
  if (o.format == "text") {
    out << format_results_text(table, o.digits);
  } else if (o.format == "tsv") {
    out << format_results_tsv(table, o.digits);
  } else if (o.format == "json") {
    out << format_results_json(table, o.digits);
  } else {
    throw ValidationError("--format must be text, tsv or json");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dialect identification pipeline: clean, split, train, predict, "
               "ensemble and evaluate tweet classifiers"};
  app.require_subcommand(1);
  std::function<void()> action;

  CleanOptions clean;
  auto* c = app.add_subcommand("clean", "Remove placeholder noise tokens");
  c->add_option("-i,--input", clean.input, "Input corpus")->required();
  c->add_option("-o,--output", clean.output, "Output corpus")->required();
  c->add_option("--format", clean.format, "tsv or csv (default: by extension)");
  c->add_option("--noise-token", clean.noise_tokens,
                "Token to delete (repeatable; default USER NUM URL)");
  c->add_flag("--no-collapse-whitespace", clean.no_collapse,
              "Keep whitespace runs as they are");
  c->add_flag("--no-trim", clean.no_trim, "Keep leading/trailing whitespace");
  c->add_flag("--keep-empty", clean.keep_empty,
              "Keep rows emptied by cleaning (default)");
  c->add_flag("--drop-empty", clean.drop_empty, "Drop rows emptied by cleaning");
  c->callback([&] { action = [&] { cmd_clean(clean, out); }; });

  SplitOptions split;
  auto* s = app.add_subcommand("split", "Seeded train/dev/test split");
  s->add_option("-i,--input", split.input, "Input corpus")->required();
  s->add_option("--train-out", split.train_out)->required();
  s->add_option("--dev-out", split.dev_out)->required();
  s->add_option("--test-out", split.test_out)->required();
  s->add_option("--fractions", split.fractions,
                "train,dev,test as decimals or ratios, e.g. 10/13,1/13,2/13");
  s->add_option("--seed", split.seed);
  s->callback([&] { action = [&] { cmd_split(split, out); }; });

  TrainOptions tr;
  auto* t = app.add_subcommand("train-baseline",
                               "Train the TF-IDF softmax baseline with AdamW");
  t->add_option("--train", tr.train, "Training corpus (repeatable)")->required();
  t->add_option("--model", tr.model, "Output model file")->required();
  t->add_option("--model-id", tr.model_id);
  t->add_option("--profile", tr.profile,
                "baseline (lr 1e-2) or finetune (lr 1e-5)");
  t->add_option("--ngram-min", tr.ngram_min);
  t->add_option("--ngram-max", tr.ngram_max);
  t->add_option("--max-features", tr.max_features);
  t->add_option("--epochs", tr.epochs);
  t->add_option("--lr", tr.learning_rate);
  t->add_option("--batch-size", tr.batch_size);
  t->add_option("--beta1", tr.beta1);
  t->add_option("--beta2", tr.beta2);
  t->add_option("--epsilon", tr.epsilon);
  t->add_option("--weight-decay", tr.weight_decay);
  t->add_option("--seed", tr.seed);
  t->callback([&] { action = [&] { cmd_train(tr, out); }; });

  PredictOptions pr;
  auto* p = app.add_subcommand("predict", "Write a prediction file");
  p->add_option("--model", pr.model)->required();
  p->add_option("-i,--input", pr.input, "Corpus to label")->required();
  p->add_option("-o,--output", pr.output, "Prediction TSV")->required();
  p->add_option("--model-id", pr.model_id);
  p->add_option("--submission", pr.submission, "Also write label-per-line file");
  p->add_flag("--no-probabilities", pr.no_probabilities);
  p->callback([&] { action = [&] { cmd_predict(pr, out); }; });

  EnsembleOptions en;
  auto* e = app.add_subcommand("ensemble", "Combine prediction files by voting");
  e->add_option("--pred", en.predictions, "Prediction file (repeatable)")
      ->required();
  e->add_option("--strategy", en.strategy, "hard or soft");
  e->add_option("--tie-break", en.tie_break, "model-priority or lexicographic");
  e->add_option("--priority", en.priority,
                "Model ids, strongest first (default: --pred order)")
      ->delimiter(',');
  e->add_option("--ids-from", en.ids_from,
                "Corpus whose id order every file must match");
  e->add_option("-o,--output", en.output)->required();
  e->add_option("--agreement", en.agreement,
                "Path prefix for agreement .tsv/.txt reports");
  e->add_option("--submission", en.submission);
  e->callback([&] { action = [&] { cmd_ensemble(en, out); }; });

  EvaluateOptions ev;
  auto* v = app.add_subcommand("evaluate", "Score a prediction file");
  v->add_option("--gold", ev.gold, "Labeled corpus")->required();
  v->add_option("--pred", ev.predictions, "Prediction file")->required();
  v->add_option("--average", ev.average, "macro or weighted");
  v->add_option("--digits", ev.digits)->check(CLI::Range(0, 12));
  v->add_option("--format", ev.format, "text, tsv or json");
  v->add_option("--confusion", ev.confusion, "Write the confusion matrix TSV");
  v->callback([&] { action = [&] { cmd_evaluate(ev, out); }; });

  RunOptions ru;
  auto* r = app.add_subcommand("run", "Run the full pipeline from a config");
  r->add_option("-c,--config", ru.config, "Run config (JSON)")->required();
  r->add_option("--seed", ru.seed, "Override every seed in the config");
  r->add_option("--output-dir", ru.output_dir,
                std::string("Output directory (default: config, then $") +
                    kOutputDirEnv + ")");
  r->callback([&] { action = [&] { cmd_run(ru, out); }; });

  ReportOptions re;
  auto* rp = app.add_subcommand("report", "Per-model results table");
  rp->add_option("--gold", re.gold);
  rp->add_option("--pred", re.predictions, "Model prediction file (repeatable)");
  rp->add_option("--ensemble", re.ensemble, "Ensemble prediction file");
  rp->add_option("--run-dir", re.run_dir, "Output directory of a previous run");
  rp->add_option("--split", re.split, "Split to report from --run-dir");
  rp->add_option("--average", re.average, "macro or weighted");
  rp->add_option("--digits", re.digits)->check(CLI::Range(0, 12));
  rp->add_option("--format", re.format, "text, tsv or json");
  rp->callback([&] { action = [&] { cmd_report(re, out); }; });

  std::vector<std::string> argv_storage{"dialectid"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
  }

  try {
    action();
    return static_cast<int>(ExitCode::kOk);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return static_cast<int>(exit_code_for(ex));
  }
}

}  // namespace dialectid::cli

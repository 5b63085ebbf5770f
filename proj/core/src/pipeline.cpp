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

#include "dialectid/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

#include "dialectid/error.hpp"
#include "dialectid/io.hpp"
#include "dialectid/model_io.hpp"

namespace dialectid {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct Split {
  std::string name;
  Corpus corpus;
};

struct BackendOutputs {
  const BackendConfig* config;
  std::optional<BaselineModel> model;
  std::map<std::string, PredictionSet> predictions;  // split -> set
};

class Run {
 public:
  Run(const RunConfig& config, std::ostream& log)
      : config_(config), log_(log), out_(config.output_dir) {}

  RunSummary execute() {
    set_status("running\n");
    stage("load", [&] { load(); });
    stage("clean", [&] { clean(); });
    for (const auto& b : config_.backends) {
      backends_.push_back({&b, std::nullopt, {}});
    }
    for (auto& b : backends_) {
      if (b.config->kind == BackendKind::kNativeBaseline) {
        stage("train[" + b.config->model_id + "]", [&] { train(b); });
      }
    }
    for (auto& b : backends_) {
      stage("predict[" + b.config->model_id + "]", [&] { predict(b); });
    }
    stage("rank", [&] { rank_models(); });
    for (const auto& split : eval_splits()) {
      stage("ensemble[" + split->name + "]", [&] { ensemble(*split); });
      if (split->corpus.fully_labeled() && !split->corpus.empty()) {
        stage("evaluate[" + split->name + "]", [&] { evaluate(*split); });
      }
    }
    stage("manifest", [&] { write_run_manifest(); });
    set_status("complete\n");
    return std::move(summary_);
  }

 private:
  template <typename Fn>
  void stage(const std::string& name, Fn&& fn) {
    log_ << "[" << name << "]\n" << std::flush;
    try {
      fn();
    } catch (const std::exception& e) {
      StageError failure(name, e);
      try {
        set_status(fmt::format("failed\nstage: {}\nerror: {}\n", name, e.what()));
      } catch (const std::exception&) {
        // The original failure is the one worth reporting.
      }
      throw failure;
    }
  }

  void set_status(const std::string& text) {
    io::write_file_atomic(out_ / "run.status", text);
  }

  void emit(const fs::path& relative, std::string_view contents) {
    io::write_file_atomic(out_ / relative, contents);
    outputs_.push_back(relative.generic_string());
  }

  void load() {
    const auto& src = config_.corpus;
    if (src.full) {
      inputs_.push_back(*src.full);
      const Corpus all = load_corpus(*src.full);
      auto [train, dev, test] = split_corpus(all, *src.split);
      splits_.push_back({std::string(kTrainSplit), std::move(train)});
      splits_.push_back({std::string(kDevSplit), std::move(dev)});
      splits_.push_back({std::string(kTestSplit), std::move(test)});
    } else {
      std::vector<Corpus> parts;
      for (const auto& p : src.train) {
        inputs_.push_back(p);
        parts.push_back(load_corpus(p));
      }
      splits_.push_back({std::string(kTrainSplit), concatenate(parts)});
      if (src.dev) {
        inputs_.push_back(*src.dev);
        splits_.push_back({std::string(kDevSplit), load_corpus(*src.dev)});
      }
      if (src.test) {
        inputs_.push_back(*src.test);
        splits_.push_back({std::string(kTestSplit), load_corpus(*src.test)});
      }
    }
    for (const auto& b : config_.backends) {
      for (const auto& [split, path] : b.predictions) inputs_.push_back(path);
    }
    for (const auto& s : splits_) {
      log_ << fmt::format("  {}: {} examples, {} labels\n", s.name,
                          s.corpus.size(), s.corpus.label_space().size());
    }
  }

  void clean() {
    for (auto& s : splits_) {
      CleaningStats stats;
      s.corpus = clean_corpus(s.corpus, config_.cleaning, &stats,
                              config_.drop_empty);
      log_ << fmt::format("  {}: removed {} noise tokens, {} emptied, {} dropped\n",
                          s.name, stats.tokens_removed, stats.emptied,
                          stats.dropped);
      std::string text;
      fs::path file = fs::path("data") / (s.name + ".tsv");
      try {
        text = format_corpus(s.corpus, TableFormat::kTsv);
      } catch (const ValidationError&) {
        file.replace_extension(".csv");
        text = format_corpus(s.corpus, TableFormat::kCsv);
      }
      emit(file, text);
    }
  }

  const Split& split_named(std::string_view name) const {
    for (const auto& s : splits_) {
      if (s.name == name) return s;
    }
    throw Error("no split named '" + std::string(name) + "'");
  }

  std::vector<const Split*> eval_splits() const {
    std::vector<const Split*> out;
    for (const auto& s : splits_) {
      if (s.name != kTrainSplit) out.push_back(&s);
    }
    return out;
  }

  void train(BackendOutputs& b) {
    const BackendConfig& cfg = *b.config;
    const Corpus& corpus = split_named(kTrainSplit).corpus;
    std::vector<std::string> texts;
    texts.reserve(corpus.size());
    for (const auto& ex : corpus.examples()) texts.push_back(ex.content);

    BaselineModel model;
    model.vocabulary = fit_vocabulary(texts, cfg.ngram.n_min, cfg.ngram.n_max,
                                      cfg.ngram.max_features);
    TrainResult result = train_model(corpus, model.vocabulary, cfg.train);
    model.classifier = std::move(result.model);

    ordered_json meta = ordered_json::parse(backend_config_json(cfg));
    meta["model_id"] = cfg.model_id;
    meta["loss_history"] = result.loss_history;
    model.metadata_json = meta.dump();

    log_ << fmt::format("  vocabulary {} n-grams, loss {:.4f} -> {:.4f}\n",
                        model.vocabulary.size(), result.loss_history.front(),
                        result.loss_history.back());
    const fs::path model_file = fs::path("models") / (cfg.model_id + ".model");
    emit(model_file, serialize_model(model));
    write_backend_manifest(cfg);
    b.model = std::move(model);
  }

  void write_backend_manifest(const BackendConfig& cfg) {
    emit(fs::path("models") / (cfg.model_id + ".manifest.json"),
         format_manifest(make_manifest(cfg.model_id, cfg.kind,
                                       backend_config_json(cfg))));
  }

  static TrainResult train_model(const Corpus& corpus,
                                 const NgramVocabulary& vocab,
                                 const TrainConfig& config) {
    return dialectid::train(corpus, vocab, config);
  }

  void predict(BackendOutputs& b) {
    const BackendConfig& cfg = *b.config;
    if (cfg.kind == BackendKind::kExternal) write_backend_manifest(cfg);
    for (const Split* split : eval_splits()) {
      PredictionSet set;
      if (cfg.kind == BackendKind::kNativeBaseline) {
        set.model_id = cfg.model_id;
        set.label_space = b.model->classifier.label_space();
        set.probabilities.emplace();
        for (const auto& ex : split->corpus.examples()) {
          Prediction p = predict_one(*b.model, ex.content);
          set.entries.push_back({ex.id, std::move(p.label)});
          set.probabilities->push_back(std::move(p.probabilities));
        }
      } else {
        set = read_predictions(cfg.predictions.at(split->name),
                               split->corpus.ids());
        set.model_id = cfg.model_id;
      }
      emit(fs::path(split->name) / "predictions" / (cfg.model_id + ".tsv"),
           format_predictions(set));
      b.predictions.emplace(split->name, std::move(set));
    }
  }

  static Prediction predict_one(const BaselineModel& model,
                                std::string_view text) {
    return dialectid::predict(model.classifier,
                              vectorize(text, model.vocabulary));
  }

  void rank_models() {
    std::vector<std::string> order;
    for (const auto& b : backends_) order.push_back(b.config->model_id);
    if (config_.explicit_priority) {
      order = config_.vote.model_priority;
    } else {
      const auto dev = std::find_if(splits_.begin(), splits_.end(),
                                    [](const Split& s) { return s.name == kDevSplit; });
      if (dev != splits_.end() && dev->corpus.fully_labeled() &&
          !dev->corpus.empty()) {
        std::vector<double> score;
        for (const auto& b : backends_) {
          score.push_back(metrics_report(score_predictions(
                              dev->corpus, b.predictions.at(dev->name)))
                              .f1(config_.evaluation.average));
        }
        std::vector<std::size_t> idx(order.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
          return score[a] > score[b];
        });
        std::vector<std::string> ranked;
        for (std::size_t i : idx) ranked.push_back(order[i]);
        order = std::move(ranked);
      }
    }
    policy_ = config_.vote;
    policy_.model_priority = order;
    summary_.model_priority = order;
    log_ << fmt::format("  model priority: {}\n", fmt::join(order, ", "));
  }

  std::vector<PredictionSet> sets_for(const std::string& split) const {
    std::vector<PredictionSet> sets;
    for (const auto& b : backends_) sets.push_back(b.predictions.at(split));
    return sets;
  }

  void ensemble(const Split& split) {
    const std::vector<PredictionSet> sets = sets_for(split.name);
    PredictionSet combined = vote(sets, policy_);
    const fs::path dir = split.name;
    emit(dir / "predictions" / (std::string(kEnsembleModelId) + ".tsv"),
         format_predictions(combined));
    emit(dir / "submission.txt", format_submission(combined));
    const AgreementReport agreement = agreement_report(sets);
    emit(dir / "agreement.tsv", format_agreement_tsv(agreement));
    emit(dir / "agreement.txt", format_agreement_text(agreement));
    ensembles_.emplace(split.name, std::move(combined));
  }

  void evaluate(const Split& split) {
    const int digits = config_.evaluation.digits;
    const Average average = config_.evaluation.average;
    const fs::path dir = fs::path(split.name) / "metrics";

    std::vector<NamedReport> reports;
    const auto score = [&](const PredictionSet& set, bool is_ensemble) {
      const ConfusionMatrix matrix = score_predictions(split.corpus, set);
      const MetricsReport report = metrics_report(matrix);
      emit(dir / (set.model_id + ".json"), format_report_json(report, digits));
      emit(dir / (set.model_id + ".txt"),
           format_report_text(report, digits, average));
      emit(dir / (set.model_id + ".confusion.tsv"), format_confusion_tsv(matrix));
      std::string display;
      if (is_ensemble) {
        display = policy_.strategy == VoteStrategy::kHard
                      ? "Ensemble - Hard Voting"
                      : "Ensemble - Soft Voting";
      }
      reports.push_back({set.model_id, report, is_ensemble, display});
    };
    for (const auto& b : backends_) score(b.predictions.at(split.name), false);
    score(ensembles_.at(split.name), true);

    const ResultsTable table = compare_models(reports, average);
    const std::string text = format_results_text(table, digits);
    emit(fs::path(split.name) / "results.txt", text);
    emit(fs::path(split.name) / "results.tsv", format_results_tsv(table, digits));
    emit(fs::path(split.name) / "results.json",
         format_results_json(table, digits));
    log_ << "  " << split.name << " results\n" << text;
    summary_.results.emplace(split.name, table);
  }

  void write_run_manifest() {
    ordered_json j;
    j["tool"] = "dialectid";
    j["created_at"] = utc_timestamp();
    j["config"] = ordered_json::parse(run_config_json(config_));
    ordered_json seeds;
    if (config_.corpus.split) seeds["split"] = config_.corpus.split->seed;
    for (const auto& b : config_.backends) {
      if (b.kind == BackendKind::kNativeBaseline) seeds[b.model_id] = b.train.seed;
    }
    j["seeds"] = seeds;
    j["model_priority"] = policy_.model_priority;
    ordered_json sizes;
    for (const auto& s : splits_) sizes[s.name] = s.corpus.size();
    j["split_sizes"] = sizes;
    ordered_json inputs = ordered_json::array();
    for (const auto& p : inputs_) {
      inputs.push_back({{"path", p.string()}, {"sha256", io::sha256_file(p)}});
    }
    j["inputs"] = inputs;
    ordered_json outputs = ordered_json::array();
    for (const auto& rel : outputs_) {
      outputs.push_back(
          {{"path", rel}, {"sha256", io::sha256_file(out_ / rel)}});
    }
    j["outputs"] = outputs;
    io::write_file_atomic(out_ / "manifest.json", j.dump(2) + "\n");
  }

  const RunConfig& config_;
  std::ostream& log_;
  fs::path out_;
  std::vector<Split> splits_;
  std::vector<BackendOutputs> backends_;
  std::map<std::string, PredictionSet> ensembles_;
  VotePolicy policy_;
  std::vector<fs::path> inputs_;
  std::vector<std::string> outputs_;
  RunSummary summary_;
};

}  // namespace

RunSummary run_pipeline(const RunConfig& config, std::ostream& log) {
  validate_run_config(config);
  Run run(config, log);
  RunSummary summary = run.execute();
  summary.output_dir = config.output_dir;
  return summary;
}

}  // namespace dialectid

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

#include "dialectid/run_config.hpp"

#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "dialectid/error.hpp"
#include "dialectid/io.hpp"

namespace dialectid {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void allow_keys(const json& object, std::string_view where,
                std::initializer_list<std::string_view> keys) {
  if (!object.is_object()) {
    throw ValidationError(fmt::format("{}: expected an object", where));
  }
  for (const auto& [key, value] : object.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ValidationError(fmt::format("{}: unknown key '{}'", where, key));
    }
  }
}

template <typename T>
T get_or(const json& object, const char* key, T fallback,
         std::string_view where) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(
        fmt::format("{}.{}: wrong type ({})", where, key, it->type_name()));
  }
}

fs::path resolve(const fs::path& base, const json& value,
                 std::string_view where) {
  if (!value.is_string()) {
    throw ValidationError(fmt::format("{}: expected a path string", where));
  }
  fs::path p = value.get<std::string>();
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

double fraction_value(const json& value, std::string_view where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_fraction(value.get<std::string>());
  throw ValidationError(
      fmt::format("{}: expected a number or \"a/b\" string", where));
}

CorpusSources parse_corpus_sources(const json& j, const fs::path& base) {
  allow_keys(j, "corpus", {"train", "dev", "test", "path", "split"});
  CorpusSources out;
  if (j.contains("path")) {
    if (j.contains("train") || j.contains("dev") || j.contains("test")) {
      throw ValidationError(
          "corpus: give either 'path' + 'split' or train/dev/test files");
    }
    out.full = resolve(base, j["path"], "corpus.path");
    const auto split = j.value("split", json::object());
    allow_keys(split, "corpus.split", {"train", "dev", "test", "seed"});
    SplitSpec spec;
    if (split.contains("train")) {
      spec.train_fraction = fraction_value(split["train"], "corpus.split.train");
    }
    if (split.contains("dev")) {
      spec.dev_fraction = fraction_value(split["dev"], "corpus.split.dev");
    }
    if (split.contains("test")) {
      spec.test_fraction = fraction_value(split["test"], "corpus.split.test");
    }
    spec.seed = get_or<std::uint64_t>(split, "seed", 0, "corpus.split");
    spec.validate();
    out.split = spec;
    return out;
  }
  if (!j.contains("train")) {
    throw ValidationError("corpus: 'train' (or 'path' + 'split') is required");
  }
  const json& train = j["train"];
  if (train.is_array()) {
    for (const auto& item : train) {
      out.train.push_back(resolve(base, item, "corpus.train[]"));
    }
    if (out.train.empty()) throw ValidationError("corpus.train is empty");
  } else {
    out.train.push_back(resolve(base, train, "corpus.train"));
  }
  if (j.contains("dev")) out.dev = resolve(base, j["dev"], "corpus.dev");
  if (j.contains("test")) out.test = resolve(base, j["test"], "corpus.test");
  return out;
}

CleaningConfig parse_cleaning(const json& j, bool& drop_empty) {
  allow_keys(j, "cleaning",
             {"noise_tokens", "collapse_whitespace", "trim", "drop_empty"});
  CleaningConfig out;
  out.noise_tokens =
      get_or(j, "noise_tokens", out.noise_tokens, "cleaning");
  out.collapse_whitespace =
      get_or(j, "collapse_whitespace", out.collapse_whitespace, "cleaning");
  out.trim = get_or(j, "trim", out.trim, "cleaning");
  drop_empty = get_or(j, "drop_empty", false, "cleaning");
  out.validate();
  return out;
}

BackendConfig parse_backend(const json& j, const fs::path& base,
                            std::size_t index) {
  const std::string where = fmt::format("backends[{}]", index);
  allow_keys(j, where, {"id", "kind", "profile", "ngram", "train", "predictions"});
  BackendConfig out;
  out.model_id = get_or<std::string>(j, "id", "", where);
  const std::string kind =
      get_or<std::string>(j, "kind", "native-baseline", where);
  if (kind == "native-baseline") {
    out.kind = BackendKind::kNativeBaseline;
  } else if (kind == "external") {
    out.kind = BackendKind::kExternal;
  } else {
    throw ValidationError(fmt::format(
        "{}.kind: '{}' (expected native-baseline or external)", where, kind));
  }

  if (out.kind == BackendKind::kExternal) {
    if (j.contains("ngram") || j.contains("train") || j.contains("profile")) {
      throw ValidationError(where +
                            ": external backends take only id and predictions");
    }
    const auto preds = j.value("predictions", json::object());
    allow_keys(preds, where + ".predictions", {"dev", "test"});
    for (const auto& [split, path] : preds.items()) {
      out.predictions[split] =
          resolve(base, path, where + ".predictions." + split);
    }
    return out;
  }
  if (j.contains("predictions")) {
    throw ValidationError(where + ": native backends do not take predictions");
  }

  const std::string profile = get_or<std::string>(j, "profile", "baseline", where);
  if (profile == "baseline") {
    out.train.learning_rate = kBaselineLearningRate;
  } else if (profile != "finetune") {
    throw ValidationError(fmt::format(
        "{}.profile: '{}' (expected baseline or finetune)", where, profile));
  }

  const auto ngram = j.value("ngram", json::object());
  allow_keys(ngram, where + ".ngram", {"min", "max", "max_features"});
  out.ngram.n_min = get_or(ngram, "min", out.ngram.n_min, where + ".ngram");
  out.ngram.n_max = get_or(ngram, "max", out.ngram.n_max, where + ".ngram");
  out.ngram.max_features =
      get_or(ngram, "max_features", out.ngram.max_features, where + ".ngram");
  if (out.ngram.n_min < 1 || out.ngram.n_max < out.ngram.n_min ||
      out.ngram.max_features < 1) {
    throw ValidationError(where + ".ngram: need 1 <= min <= max and max_features >= 1");
  }

  const auto train = j.value("train", json::object());
  const std::string tw = where + ".train";
  allow_keys(train, tw,
             {"epochs", "learning_rate", "batch_size", "beta1", "beta2",
              "epsilon", "weight_decay", "seed"});
  TrainConfig& t = out.train;
  t.epochs = get_or(train, "epochs", t.epochs, tw);
  t.learning_rate = get_or(train, "learning_rate", t.learning_rate, tw);
  t.batch_size = get_or(train, "batch_size", t.batch_size, tw);
  t.optimizer.beta1 = get_or(train, "beta1", t.optimizer.beta1, tw);
  t.optimizer.beta2 = get_or(train, "beta2", t.optimizer.beta2, tw);
  t.optimizer.epsilon = get_or(train, "epsilon", t.optimizer.epsilon, tw);
  t.optimizer.weight_decay =
      get_or(train, "weight_decay", t.optimizer.weight_decay, tw);
  t.seed = get_or<std::uint64_t>(train, "seed", index, tw);
  t.validate();
  return out;
}

ordered_json train_config_json(const TrainConfig& t) {
  return {{"epochs", t.epochs},
          {"learning_rate", t.learning_rate},
          {"batch_size", t.batch_size},
          {"optimizer",
           {{"name", "adamw"},
            {"beta1", t.optimizer.beta1},
            {"beta2", t.optimizer.beta2},
            {"epsilon", t.optimizer.epsilon},
            {"weight_decay", t.optimizer.weight_decay}}},
          {"seed", t.seed}};
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
  allow_keys(root, "run config",
             {"output_dir", "corpus", "cleaning", "backends", "ensemble",
              "evaluation"});

  RunConfig config;
  if (root.contains("output_dir")) {
    config.output_dir = resolve(base_dir, root["output_dir"], "output_dir");
  }
  if (!root.contains("corpus")) throw ValidationError("run config: 'corpus' is required");
  config.corpus = parse_corpus_sources(root["corpus"], base_dir);
  config.cleaning =
      parse_cleaning(root.value("cleaning", json::object()), config.drop_empty);

  const auto backends = root.value("backends", json::array());
  if (!backends.is_array()) throw ValidationError("backends: expected an array");
  for (std::size_t i = 0; i < backends.size(); ++i) {
    config.backends.push_back(parse_backend(backends[i], base_dir, i));
  }

  const auto ens = root.value("ensemble", json::object());
  allow_keys(ens, "ensemble", {"strategy", "tie_break", "model_priority"});
  config.vote.strategy =
      parse_vote_strategy(get_or<std::string>(ens, "strategy", "hard", "ensemble"));
  config.vote.tie_break = parse_tie_break(
      get_or<std::string>(ens, "tie_break", "model-priority", "ensemble"));
  config.vote.model_priority = get_or(ens, "model_priority",
                                      std::vector<std::string>{}, "ensemble");
  config.explicit_priority = !config.vote.model_priority.empty();

  const auto ev = root.value("evaluation", json::object());
  allow_keys(ev, "evaluation", {"average", "digits"});
  config.evaluation.average =
      parse_average(get_or<std::string>(ev, "average", "macro", "evaluation"));
  config.evaluation.digits = get_or(ev, "digits", 2, "evaluation");
  if (config.evaluation.digits < 0 || config.evaluation.digits > 12) {
    throw ValidationError("evaluation.digits must be in [0, 12]");
  }
  return config;
}

RunConfig load_run_config(const fs::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_run_config(text, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void validate_run_config(const RunConfig& config) {
  if (config.output_dir.empty()) {
    throw ValidationError("no output directory configured");
  }
  if (config.backends.size() < 2) {
    throw ValidationError(fmt::format(
        "ensemble requires at least 2 models, {} configured",
        config.backends.size()));
  }
  std::set<std::string> ids;
  for (const auto& b : config.backends) {
    if (b.model_id.empty()) throw ValidationError("backend without an id");
    if (b.model_id == kEnsembleModelId) {
      throw ValidationError("backend id 'ensemble' is reserved");
    }
    if (b.model_id.find_first_of("/\\\t\n\r ") != std::string::npos) {
      throw ValidationError("backend id '" + b.model_id +
                            "' must not contain whitespace or path separators");
    }
    if (!ids.insert(b.model_id).second) {
      throw ValidationError("duplicate backend id '" + b.model_id + "'");
    }
  }

  const auto require_file = [](const fs::path& p) {
    if (!fs::is_regular_file(p)) {
      throw IoError("input file '" + p.string() + "' does not exist");
    }
  };
  const auto& c = config.corpus;
  if (c.full) {
    require_file(*c.full);
  } else {
    for (const auto& p : c.train) require_file(p);
    if (c.dev) require_file(*c.dev);
    if (c.test) require_file(*c.test);
  }
  const bool has_dev = c.full.has_value() || c.dev.has_value();
  const bool has_test = c.full.has_value() || c.test.has_value();
  for (const auto& b : config.backends) {
    if (b.kind != BackendKind::kExternal) continue;
    for (const auto& [split, needed] :
         {std::pair<std::string_view, bool>{kDevSplit, has_dev},
          {kTestSplit, has_test}}) {
      const auto it = b.predictions.find(std::string(split));
      if (needed && it == b.predictions.end()) {
        throw ValidationError(fmt::format(
            "external backend '{}' has no predictions for the {} split",
            b.model_id, split));
      }
      if (it != b.predictions.end()) require_file(it->second);
    }
  }

  if (config.vote.tie_break == TieBreak::kModelPriority &&
      config.explicit_priority) {
    std::set<std::string> listed;
    for (const auto& id : config.vote.model_priority) {
      if (!listed.insert(id).second) {
        throw ValidationError("model '" + id +
                              "' listed twice in ensemble.model_priority");
      }
    }
    for (const auto& id : ids) {
      if (!listed.contains(id)) {
        throw ValidationError("model '" + id +
                              "' missing from ensemble.model_priority");
      }
    }
  }
}

void override_seeds(RunConfig& config, std::uint64_t seed) {
  if (config.corpus.split) config.corpus.split->seed = seed;
  for (std::size_t i = 0; i < config.backends.size(); ++i) {
    config.backends[i].train.seed = seed + i;
  }
}

std::string backend_config_json(const BackendConfig& backend) {
  ordered_json j;
  j["kind"] = to_string(backend.kind);
  if (backend.kind == BackendKind::kNativeBaseline) {
    j["ngram"] = {{"min", backend.ngram.n_min},
                  {"max", backend.ngram.n_max},
                  {"max_features", backend.ngram.max_features},
                  {"weighting", "tfidf-l2"}};
    j["train"] = train_config_json(backend.train);
  } else {
    ordered_json preds = ordered_json::object();
    for (const auto& [split, path] : backend.predictions) {
      preds[split] = path.string();
    }
    j["predictions"] = preds;
  }
  return j.dump();
}

std::string run_config_json(const RunConfig& config) {
  ordered_json j;
  j["output_dir"] = config.output_dir.string();
  ordered_json corpus;
  if (config.corpus.full) {
    const auto& s = *config.corpus.split;
    corpus["path"] = config.corpus.full->string();
    corpus["split"] = {{"train", s.train_fraction},
                       {"dev", s.dev_fraction},
                       {"test", s.test_fraction},
                       {"seed", s.seed}};
  } else {
    ordered_json train = ordered_json::array();
    for (const auto& p : config.corpus.train) train.push_back(p.string());
    corpus["train"] = train;
    if (config.corpus.dev) corpus["dev"] = config.corpus.dev->string();
    if (config.corpus.test) corpus["test"] = config.corpus.test->string();
  }
  j["corpus"] = corpus;
  j["cleaning"] = {{"noise_tokens", config.cleaning.noise_tokens},
                   {"collapse_whitespace", config.cleaning.collapse_whitespace},
                   {"trim", config.cleaning.trim},
                   {"drop_empty", config.drop_empty}};
  ordered_json backends = ordered_json::array();
  for (const auto& b : config.backends) {
    ordered_json entry;
    entry["id"] = b.model_id;
    const ordered_json details = ordered_json::parse(backend_config_json(b));
    for (const auto& [key, value] : details.items()) entry[key] = value;
    backends.push_back(entry);
  }
  j["backends"] = backends;
  j["ensemble"] = {{"strategy", to_string(config.vote.strategy)},
                   {"tie_break", to_string(config.vote.tie_break)},
                   {"model_priority", config.vote.model_priority}};
  j["evaluation"] = {{"average", to_string(config.evaluation.average)},
                     {"digits", config.evaluation.digits}};
  return j.dump(2);
}

}  // namespace dialectid

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

#include <iostream>

#include <CLI11.hpp>

#include "dialectid/corpus.hpp"
#include "dialectid/error.hpp"
#include "synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic labeled dialect corpus (TSV/CSV)"};
  dialectid::synth::SyntheticSpec spec;
  std::string output;
  app.add_option("-o,--output", output, "Output corpus file")->required();
  app.add_option("--classes", spec.num_classes, "Number of classes (2-18)");
  app.add_option("--per-class", spec.per_class, "Examples per class");
  app.add_option("--distractor-rate", spec.distractor_rate,
                 "Fraction of tweets with a second class marker");
  app.add_option("--noise-rate", spec.noise_token_rate,
                 "Geometric rate of USER/NUM/URL placeholders");
  app.add_option("--seed", spec.seed);
  CLI11_PARSE(app, argc, argv);
  try {
    dialectid::save_corpus(dialectid::synth::make_corpus(spec), output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(dialectid::exit_code_for(e));
  }
  return 0;
}

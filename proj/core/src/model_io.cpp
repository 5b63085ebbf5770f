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

#include "dialectid/model_io.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dialectid/error.hpp"
#include "dialectid/io.hpp"

namespace dialectid {
namespace {

constexpr std::string_view kMagic = "DIDMODEL";

class ByteWriter {
 public:
  void u32(std::uint32_t value) { little_endian(value, 4); }
  void u64(std::uint64_t value) { little_endian(value, 8); }
  void f64(double value) { u64(std::bit_cast<std::uint64_t>(value)); }
  void raw(std::string_view bytes) { out_.append(bytes); }
  void str(std::string_view s) {
    if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw ValidationError("string too long to serialize");
    }
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s);
  }
  std::string take() { return std::move(out_); }

 private:
  void little_endian(std::uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      out_.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
    }
  }
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(4)); }
  std::uint64_t u64() { return little_endian(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string_view raw(std::size_t n) {
    need(n);
    const auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::string str() { return std::string(raw(u32())); }
  bool at_end() const noexcept { return pos_ == bytes_.size(); }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw ParseError(fmt::format("model file truncated at byte {}", pos_));
    }
  }
  std::uint64_t little_endian(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t value = 0;
    for (int i = 0; i < bytes; ++i) {
      value |= static_cast<std::uint64_t>(
                   static_cast<unsigned char>(bytes_[pos_ + i]))
               << (8 * i);
    }
    pos_ += static_cast<std::size_t>(bytes);
    return value;
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_model(const BaselineModel& model) {
  const NgramVocabulary& vocab = model.vocabulary;
  const SoftmaxClassifier& clf = model.classifier;
  if (clf.num_features() != vocab.size()) {
    throw ValidationError("classifier width does not match vocabulary size");
  }
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kModelFormatVersion);
  w.str(model.metadata_json);
  w.u32(static_cast<std::uint32_t>(vocab.n_min()));
  w.u32(static_cast<std::uint32_t>(vocab.n_max()));
  w.u64(vocab.num_documents());
  w.u64(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    w.str(vocab.ngrams()[i]);
    w.u64(vocab.document_frequency()[i]);
  }
  w.u64(clf.num_classes());
  for (const auto& label : clf.label_space()) w.str(label);
  w.u64(clf.num_features());
  for (double p : clf.parameters()) w.f64(p);
  return w.take();
}

BaselineModel deserialize_model(std::string_view bytes) {
  ByteReader r(bytes);
  if (bytes.size() < kMagic.size() || r.raw(kMagic.size()) != kMagic) {
    throw ParseError("not a dialectid model file (bad magic)");
  }
  const std::uint32_t version = r.u32();
  if (version != kModelFormatVersion) {
    throw ValidationError(fmt::format(
        "model format version {} not supported (expected {})", version,
        kModelFormatVersion));
  }
  BaselineModel model;
  model.metadata_json = r.str();
  const auto n_min = static_cast<int>(r.u32());
  const auto n_max = static_cast<int>(r.u32());
  const std::uint64_t num_documents = r.u64();
  const std::uint64_t vocab_size = r.u64();
  // Each entry needs at least 12 bytes; reject absurd counts before
  // allocating.
  if (vocab_size > r.remaining() / 12) {
    throw ParseError("model file truncated in vocabulary");
  }
  std::vector<std::string> ngrams;
  std::vector<std::uint64_t> df;
  ngrams.reserve(vocab_size);
  df.reserve(vocab_size);
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    ngrams.push_back(r.str());
    df.push_back(r.u64());
  }
  model.vocabulary = NgramVocabulary(n_min, n_max, std::move(ngrams),
                                     std::move(df), num_documents);

  const std::uint64_t num_classes = r.u64();
  if (num_classes > r.remaining() / 4) {
    throw ParseError("model file truncated in label space");
  }
  std::vector<std::string> labels;
  labels.reserve(num_classes);
  for (std::uint64_t k = 0; k < num_classes; ++k) labels.push_back(r.str());
  const std::uint64_t num_features = r.u64();
  if (num_features != vocab_size) {
    throw ValidationError(fmt::format(
        "model dimension D={} does not match vocabulary size {}", num_features,
        vocab_size));
  }
  const std::uint64_t expected = num_classes * (num_features + 1);
  if (r.remaining() != expected * 8) {
    throw ParseError(fmt::format(
        "model parameter block has {} bytes, expected {}", r.remaining(),
        expected * 8));
  }
  model.classifier = SoftmaxClassifier(std::move(labels), num_features);
  for (double& p : model.classifier.parameters()) {
    p = r.f64();
    if (!std::isfinite(p)) throw ValidationError("non-finite model parameter");
  }
  return model;
}

void save_model(const BaselineModel& model, const std::filesystem::path& path) {
  io::write_file_atomic(path, serialize_model(model));
}

BaselineModel load_model(const std::filesystem::path& path) {
  const std::string bytes = io::read_file(path);
  try {
    return deserialize_model(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace dialectid

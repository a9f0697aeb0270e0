/*
 * Copyright 2026 The Skillmatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SKILLMATCH_VECTORIZE_H_
#define SKILLMATCH_VECTORIZE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace skillmatch {

struct ProfileVector {
  std::vector<double> values;
  // Name of the vectorizer that produced it.
  std::string source;
  // Set by averaging vectorizers when no token had an embedding.
  bool uncovered = false;

  std::size_t dim() const { return values.size(); }
  std::span<const double> view() const { return values; }
};

// What a vectorizer sees of a profile: a stable identifier plus the text.
// Only precomputed-embedding lookups use the key.
struct ProfileRef {
  std::string_view key;
  std::string_view text;
};

// Lowercased maximal runs of alphanumeric characters, at least two characters
// long. Bytes >= 0x80 count as word characters so UTF-8 letters stay inside
// tokens; length is measured in code points.
std::vector<std::string> tokenize(std::string_view text);

// Transparent hashing so lookups accept string_view.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

// Unigrams and adjacent bigrams ("w1 w2"), indexed in lexicographic order.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> sorted_terms);

  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  // Returns size() when the n-gram was not seen during fit.
  std::size_t index_of(std::string_view ngram) const;

  bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

 private:
  std::vector<std::string> terms_;
  StringMap<std::size_t> index_;
};

Vocabulary fit_bow(std::span<const std::string> corpus);

// Raw occurrence counts of each vocabulary n-gram in `text`.
ProfileVector transform_bow(const Vocabulary& vocab, std::string_view text);

class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dim, StringMap<std::vector<double>> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* find(std::string_view token) const;

 private:
  std::size_t dim_;
  StringMap<std::vector<double>> vectors_;
};

struct LoadedEmbeddings {
  EmbeddingTable table;
  // Tokens listed more than once; the last row wins.
  std::size_t duplicate_tokens = 0;
};

// word2vec/GloVe text format with an optional "<count> <dim>" header.
LoadedEmbeddings load_embeddings(const std::filesystem::path& path);

// Mean of the embeddings of covered tokens, counting repeats. Zero vector
// with `uncovered` set when nothing is covered.
ProfileVector transform_avg(const EmbeddingTable& table, std::string_view text);

// Vectors computed offline (e.g. by a sentence encoder), keyed by profile
// identifier.
class PrecomputedVectors {
 public:
  // JSON Lines of {"key": ..., "vector": [...]}. Duplicate keys and
  // inconsistent dimensions are errors.
  static PrecomputedVectors load(const std::filesystem::path& path);

  PrecomputedVectors(std::size_t dim, StringMap<std::vector<double>> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* find(std::string_view key) const;
  // Throws DataError naming the key.
  ProfileVector at(std::string_view key) const;

 private:
  std::size_t dim_;
  StringMap<std::vector<double>> vectors_;
};

// Common interface of the three vectorizers. Implementations are immutable
// after construction and safe to call concurrently.
class Vectorizer {
 public:
  virtual ~Vectorizer() = default;
  virtual std::string_view name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual ProfileVector transform(const ProfileRef& profile) const = 0;
};

class BowVectorizer final : public Vectorizer {
 public:
  explicit BowVectorizer(Vocabulary vocab) : vocab_(std::move(vocab)) {}
  std::string_view name() const override { return "bow"; }
  std::size_t dim() const override { return vocab_.size(); }
  ProfileVector transform(const ProfileRef& profile) const override {
    return transform_bow(vocab_, profile.text);
  }
  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  Vocabulary vocab_;
};

class AveragedEmbeddingVectorizer final : public Vectorizer {
 public:
  explicit AveragedEmbeddingVectorizer(EmbeddingTable table)
      : table_(std::move(table)) {}
  std::string_view name() const override { return "wordvec"; }
  std::size_t dim() const override { return table_.dim(); }
  ProfileVector transform(const ProfileRef& profile) const override {
    return transform_avg(table_, profile.text);
  }

 private:
  EmbeddingTable table_;
};

// Looks the profile up by key first and falls back to its text, so a
// vector file keyed by raw text also works.
class PrecomputedVectorizer final : public Vectorizer {
 public:
  explicit PrecomputedVectorizer(PrecomputedVectors vectors)
      : vectors_(std::move(vectors)) {}
  std::string_view name() const override { return "sentence"; }
  std::size_t dim() const override { return vectors_.dim(); }
  ProfileVector transform(const ProfileRef& profile) const override;

 private:
  PrecomputedVectors vectors_;
};

}  // namespace skillmatch

#endif  // SKILLMATCH_VECTORIZE_H_

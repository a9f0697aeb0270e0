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

#include "skillmatch/vectorize.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "skillmatch/error.h"
#include "skillmatch/text_util.h"

#include "json.hpp"

namespace skillmatch {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

std::size_t code_points(std::string_view s) {
  return std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  });
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool is_count(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_word_byte(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && is_word_byte(text[i])) ++i;
    if (i == start) continue;
    std::string_view run = text.substr(start, i - start);
    if (code_points(run) < 2) continue;
    std::string token(run);
    for (char& c : token) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> sorted_terms)
    : terms_(std::move(sorted_terms)) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

std::size_t Vocabulary::index_of(std::string_view ngram) const {
  auto it = index_.find(ngram);
  return it == index_.end() ? terms_.size() : it->second;
}

Vocabulary fit_bow(std::span<const std::string> corpus) {
  if (corpus.empty()) throw DataError("cannot fit a vocabulary on an empty corpus");
  std::set<std::string, std::less<>> ngrams;
  for (const std::string& doc : corpus) {
    const std::vector<std::string> tokens = tokenize(doc);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      ngrams.insert(tokens[i]);
      if (i + 1 < tokens.size()) ngrams.insert(tokens[i] + " " + tokens[i + 1]);
    }
  }
  if (ngrams.empty()) {
    throw DataError("corpus contains no tokens of two or more characters");
  }
  return Vocabulary(std::vector<std::string>(ngrams.begin(), ngrams.end()));
}

ProfileVector transform_bow(const Vocabulary& vocab, std::string_view text) {
  ProfileVector out;
  out.source = "bow";
  out.values.assign(vocab.size(), 0.0);
  const std::vector<std::string> tokens = tokenize(text);
  std::string bigram;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t idx = vocab.index_of(tokens[i]);
    if (idx < vocab.size()) out.values[idx] += 1.0;
    if (i + 1 < tokens.size()) {
      bigram.assign(tokens[i]);
      bigram.push_back(' ');
      bigram.append(tokens[i + 1]);
      idx = vocab.index_of(bigram);
      if (idx < vocab.size()) out.values[idx] += 1.0;
    }
  }
  return out;
}

EmbeddingTable::EmbeddingTable(std::size_t dim, StringMap<std::vector<double>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  if (dim_ == 0) throw DataError("embedding dimension must be positive");
  for (const auto& [token, v] : vectors_) {
    if (v.size() != dim_) {
      throw DataError("embedding for '" + token + "' has dimension " +
                      std::to_string(v.size()) + ", expected " + std::to_string(dim_));
    }
  }
}

const std::vector<double>* EmbeddingTable::find(std::string_view token) const {
  auto it = vectors_.find(token);
  return it == vectors_.end() ? nullptr : &it->second;
}

LoadedEmbeddings load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embeddings file " + path.string());

  StringMap<std::vector<double>> vectors;
  std::size_t dim = 0;
  std::size_t duplicates = 0;
  std::size_t line_no = 0;
  bool seen_content = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string_view> parts = split_ws(line);
    if (parts.empty()) continue;
    if (!seen_content) {
      seen_content = true;
      if (parts.size() == 2 && is_count(parts[0]) && is_count(parts[1])) continue;
    }
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (parts.size() < 2) throw DataError(where + ": row has no vector values");
    std::vector<double> v;
    v.reserve(parts.size() - 1);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      double x = 0.0;
      if (!parse_real(parts[i], x) || !std::isfinite(x)) {
        throw DataError(where + ": cannot parse float '" + std::string(parts[i]) + "'");
      }
      v.push_back(x);
    }
    if (dim == 0) {
      dim = v.size();
    } else if (v.size() != dim) {
      throw DataError(where + ": dimension " + std::to_string(v.size()) +
                      " differs from " + std::to_string(dim));
    }
    auto [it, inserted] = vectors.try_emplace(std::string(parts[0]), std::move(v));
    if (!inserted) {
      ++duplicates;
      it->second = std::move(v);
    }
  }
  if (vectors.empty()) throw DataError(path.string() + ": no embeddings found");
  return LoadedEmbeddings{EmbeddingTable(dim, std::move(vectors)), duplicates};
}

ProfileVector transform_avg(const EmbeddingTable& table, std::string_view text) {
  ProfileVector out;
  out.source = "wordvec";
  out.values.assign(table.dim(), 0.0);
  std::size_t covered = 0;
  for (const std::string& token : tokenize(text)) {
    const std::vector<double>* v = table.find(token);
    if (v == nullptr) continue;
    for (std::size_t i = 0; i < v->size(); ++i) out.values[i] += (*v)[i];
    ++covered;
  }
  if (covered == 0) {
    out.uncovered = true;
    return out;
  }
  for (double& x : out.values) x /= static_cast<double>(covered);
  return out;
}

PrecomputedVectors::PrecomputedVectors(std::size_t dim,
                                       StringMap<std::vector<double>> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  if (dim_ == 0) throw DataError("precomputed vector dimension must be positive");
  for (const auto& [key, v] : vectors_) {
    if (v.size() != dim_) {
      throw DataError("precomputed vector '" + key + "' has dimension " +
                      std::to_string(v.size()) + ", expected " + std::to_string(dim_));
    }
  }
}

PrecomputedVectors PrecomputedVectors::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open precomputed vectors " + path.string());
  StringMap<std::vector<double>> vectors;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": " + e.what());
    }
    if (!row.is_object() || !row.contains("key") || !row["key"].is_string() ||
        !row.contains("vector") || !row["vector"].is_array()) {
      throw DataError(where + ": expected {\"key\": string, \"vector\": [numbers]}");
    }
    std::vector<double> v;
    for (const auto& x : row["vector"]) {
      if (!x.is_number()) throw DataError(where + ": non-numeric vector entry");
      v.push_back(x.get<double>());
    }
    if (v.empty()) throw DataError(where + ": empty vector");
    if (dim == 0) {
      dim = v.size();
    } else if (v.size() != dim) {
      throw DataError(where + ": dimension " + std::to_string(v.size()) +
                      " differs from " + std::to_string(dim));
    }
    std::string key = row["key"].get<std::string>();
    if (!vectors.try_emplace(key, std::move(v)).second) {
      throw DataError(where + ": duplicate key '" + key + "'");
    }
  }
  if (vectors.empty()) throw DataError(path.string() + ": no vectors found");
  return PrecomputedVectors(dim, std::move(vectors));
}

const std::vector<double>* PrecomputedVectors::find(std::string_view key) const {
  auto it = vectors_.find(key);
  return it == vectors_.end() ? nullptr : &it->second;
}

ProfileVector PrecomputedVectors::at(std::string_view key) const {
  const std::vector<double>* v = find(key);
  if (v == nullptr) {
    throw DataError("no precomputed vector for key '" + std::string(key) + "'");
  }
  return ProfileVector{*v, "sentence", false};
}

ProfileVector PrecomputedVectorizer::transform(const ProfileRef& profile) const {
  if (const std::vector<double>* v = vectors_.find(profile.key)) {
    return ProfileVector{*v, "sentence", false};
  }
  if (const std::vector<double>* v = vectors_.find(profile.text)) {
    return ProfileVector{*v, "sentence", false};
  }
  return vectors_.at(profile.key);
}

}  // namespace skillmatch

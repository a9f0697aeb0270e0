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

#ifndef SKILLMATCH_PIPELINE_H_
#define SKILLMATCH_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "skillmatch/io.h"
#include "skillmatch/itml.h"
#include "skillmatch/simulation.h"
#include "skillmatch/taxonomy.h"

namespace skillmatch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitPartial = 3;

inline constexpr const char* kToolVersion = "skillmatch 1.0.0";

struct RunConfig {
  std::filesystem::path occupations;
  std::filesystem::path skills;
  std::filesystem::path gender;
  // Taxonomy written by `ingest`; used instead of the CSVs when set.
  std::filesystem::path taxonomy;
  std::filesystem::path embeddings;
  std::filesystem::path precomputed;
  // Pairs written by `simulate`; `evaluate` regenerates them when unset.
  std::filesystem::path pairs;
  std::filesystem::path out_dir = ".";

  int k = kDefaultSubsetSize;
  std::size_t n_pairs = kDefaultPairCount;
  std::size_t top_k = 10;
  std::uint64_t seed = 42;
  int gsr_repeats = 1;
  ItmlConfig itml;
  int itml_pca_dims = 0;

  std::vector<std::string> vectorizers = {"bow", "wordvec", "sentence"};
  std::vector<std::string> metrics = {"cosine", "euclidean", "metric"};
  // `project` only.
  std::string project_vectorizer = "bow";
  std::string pca_output = "pca.csv";

  // Throws UsageError.
  void validate() const;
};

// Seed, sizes, learning settings and SHA-256 of every input file in use.
OrderedJson config_fingerprint(const RunConfig& config);

// From `taxonomy` when set, else from the CSV trio.
LoadedTaxonomy load_configured_taxonomy(const RunConfig& config);

// Each command writes under config.out_dir and returns an exit code. Usage
// and data errors propagate as exceptions; the caller maps them to codes.
int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_project(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace skillmatch

#endif  // SKILLMATCH_PIPELINE_H_

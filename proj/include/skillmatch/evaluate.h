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

#ifndef SKILLMATCH_EVALUATE_H_
#define SKILLMATCH_EVALUATE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "skillmatch/itml.h"
#include "skillmatch/scoring.h"
#include "skillmatch/simulation.h"
#include "skillmatch/taxonomy.h"
#include "skillmatch/vectorize.h"

namespace skillmatch {

inline constexpr std::size_t kDefaultTopK = 10;

struct ScoredPair {
  MatchLabel label = MatchLabel::kBad;
  double score = 0.0;
};

// Probability that a random good pair outscores a random bad pair, ties
// counting one half. Exact: computed from integer pair counts.
double auc(std::span<const ScoredPair> scored);

// Pearson r clamped to [-1, 1]. Throws DataError on length mismatch, fewer
// than 2 points, or zero variance in either variable.
double pearson(std::span<const double> x, std::span<const double> y);

// The k codes whose profiles score highest against the query's, excluding
// the query itself; ties go to the smaller code.
std::vector<std::string> top_k_neighbors(
    std::string_view query_code,
    const std::map<std::string, ProfileVector, std::less<>>& profiles,
    const MatchModel& model, std::size_t k = kDefaultTopK);

struct GsrRecord {
  std::string code;
  double female_share = 0.0;
  std::vector<std::string> top_codes;
  double mean_neighbor_share = 0.0;
};

struct GsrAudit {
  // From the first repeat.
  std::vector<GsrRecord> records;
  // Mean over repeats.
  double gsr = 0.0;
  std::vector<double> repeat_gsr;
  std::size_t n_occupations_used = 0;
};

// Top-k retrieval and correlation on a precomputed score matrix.
GsrAudit gsr_from_scores(const Eigen::MatrixXd& scores,
                         std::span<const std::string> codes,
                         std::span<const double> female_shares, std::size_t k);

struct GsrOptions {
  std::size_t top_k = kDefaultTopK;
  int subset_k = kDefaultSubsetSize;
  std::uint64_t seed = 42;
  // Number of independent audit draws averaged into the reported GSR.
  int repeats = 1;
};

// Key under which an audit profile is looked up in precomputed vectors.
std::string audit_key(int repeat, std::string_view code);

// One random profile per gender-labelled occupation, in code order.
// Repeat r draws from substream "audit" (r == 0) or "audit/<r>".
std::vector<SkillProfile> audit_profiles(const Taxonomy& taxonomy, int subset_k,
                                         std::uint64_t seed, int repeat);

GsrAudit gsr_audit(const Taxonomy& taxonomy, const Vectorizer& vectorizer,
                   const MatchModel& model, const GsrOptions& options);

enum class VectorizerKind { kBow, kWordvec, kSentence };

std::string_view vectorizer_name(VectorizerKind kind);
// Accepts "bow", "wordvec", "sentence". Throws UsageError otherwise.
VectorizerKind parse_vectorizer_name(std::string_view name);

struct VectorizerSpec {
  VectorizerKind kind = VectorizerKind::kBow;
  // Word-vector file (wordvec) or precomputed JSONL (sentence).
  std::filesystem::path path;
};

// BoW is fitted on every occupation's full skill text.
std::unique_ptr<Vectorizer> build_vectorizer(const VectorizerSpec& spec,
                                             const Taxonomy& taxonomy,
                                             std::vector<std::string>* warnings);

struct EvaluationOptions {
  GsrOptions gsr;
  ItmlConfig itml;
  // When > 0 and the vector dimension exceeds it, metric learning first
  // projects onto this many principal axes of the training vectors.
  int itml_pca_dims = 0;
  // Metric learning refuses dimensions above this (the dense d x d updates
  // become impractical); use itml_pca_dims instead.
  std::size_t itml_max_dim = 2048;
  // Test pairs are vectorized and scored in chunks of this size.
  std::size_t chunk_size = 512;
};

struct ItmlSummary {
  int sweeps = 0;
  bool converged = false;
  std::size_t skipped_updates = 0;
  double upper_bound = 0.0;
  double lower_bound = 0.0;
  std::size_t input_dim = 0;
  std::size_t metric_dim = 0;
};

struct ReportRow {
  std::string vectorizer;
  std::string metric;
  std::optional<double> auc;
  std::optional<double> gsr;
  std::size_t n_test_pairs = 0;
  std::size_t n_occupations = 0;
  std::vector<std::string> warnings;
  std::optional<GsrAudit> audit;
  std::optional<ItmlSummary> itml;
  std::shared_ptr<const LearnedMetric> learned;

  bool ok() const { return auc.has_value() && gsr.has_value(); }
};

struct AuditReport {
  // Sorted by (vectorizer, metric).
  std::vector<ReportRow> rows;

  std::size_t failed_rows() const;
};

// Vectorizes the train split (keys "train/<i>/left|right"), optionally
// reduces it, and runs metric learning on the pair differences.
std::shared_ptr<const LearnedMetric> train_metric(const Vectorizer& vectorizer,
                                                  std::span<const MatchPair> train,
                                                  const EvaluationOptions& options,
                                                  ItmlSummary* summary);

// Every (vectorizer x metric) combination. A failing combination is reported
// with its error in `warnings` and does not stop the others.
AuditReport evaluate_all(const Taxonomy& taxonomy, const PairDataset& pairs,
                         std::span<const VectorizerSpec> vectorizers,
                         std::span<const MetricKind> metrics,
                         const EvaluationOptions& options);

}  // namespace skillmatch

#endif  // SKILLMATCH_EVALUATE_H_

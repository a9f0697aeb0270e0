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

#include "skillmatch/evaluate.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skillmatch/error.h"
#include "skillmatch/kernels.h"
#include "skillmatch/pca.h"

namespace skillmatch {

double auc(std::span<const ScoredPair> scored) {
  std::vector<ScoredPair> sorted(scored.begin(), scored.end());
  for (const ScoredPair& p : sorted) {
    if (std::isnan(p.score)) throw DataError("auc: NaN score");
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredPair& a, const ScoredPair& b) { return a.score < b.score; });
  // Twice the Mann-Whitney count, so ties stay integral.
  std::uint64_t twice_correct = 0;
  std::uint64_t bad_below = 0;
  std::uint64_t n_good = 0;
  std::uint64_t n_bad = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    std::uint64_t good = 0, bad = 0;
    for (; j < sorted.size() && sorted[j].score == sorted[i].score; ++j) {
      (sorted[j].label == MatchLabel::kGood ? good : bad) += 1;
    }
    twice_correct += 2 * good * bad_below + good * bad;
    bad_below += bad;
    n_good += good;
    n_bad += bad;
    i = j;
  }
  if (n_good == 0 || n_bad == 0) {
    throw DataError("auc needs at least one good and one bad pair");
  }
  return static_cast<double>(twice_correct) /
         (2.0 * static_cast<double>(n_good) * static_cast<double>(n_bad));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("pearson: length mismatch");
  if (x.size() < 2) throw DataError("pearson needs at least 2 points");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v[0]; });
  };
  if (constant(x) || constant(y)) {
    throw DataError("degenerate correlation: a variable has zero variance");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0 && syy > 0.0)) {
    throw DataError("degenerate correlation: a variable has zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<std::string> top_k_neighbors(
    std::string_view query_code,
    const std::map<std::string, ProfileVector, std::less<>>& profiles,
    const MatchModel& model, std::size_t k) {
  auto query = profiles.find(query_code);
  if (query == profiles.end()) {
    throw DataError("top_k_neighbors: unknown query '" + std::string(query_code) + "'");
  }
  if (profiles.size() < 2) throw DataError("top_k_neighbors needs at least 2 profiles");
  std::vector<std::pair<double, const std::string*>> scored;
  for (const auto& [code, vec] : profiles) {
    if (code == query->first) continue;
    scored.emplace_back(score_pair(model, query->second.values, vec.values).value, &code);
  }
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return *a.second < *b.second;
                    });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < take; ++i) out.push_back(*scored[i].second);
  return out;
}

GsrAudit gsr_from_scores(const Eigen::MatrixXd& scores,
                         std::span<const std::string> codes,
                         std::span<const double> female_shares, std::size_t k) {
  if (codes.size() != female_shares.size()) {
    throw DataError("gsr: codes and female shares differ in length");
  }
  const auto top = kernels::top_k_rows(scores, codes, k);
  GsrAudit audit;
  std::vector<double> neighbor_means;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    GsrRecord rec;
    rec.code = codes[i];
    rec.female_share = female_shares[i];
    double sum = 0.0;
    for (std::size_t j : top[i]) {
      rec.top_codes.push_back(codes[j]);
      sum += female_shares[j];
    }
    rec.mean_neighbor_share = top[i].empty() ? 0.0 : sum / static_cast<double>(top[i].size());
    neighbor_means.push_back(rec.mean_neighbor_share);
    audit.records.push_back(std::move(rec));
  }
  audit.gsr = pearson(female_shares, neighbor_means);
  audit.repeat_gsr = {audit.gsr};
  audit.n_occupations_used = codes.size();
  return audit;
}

std::string audit_key(int repeat, std::string_view code) {
  return "audit/" + std::to_string(repeat) + "/" + std::string(code);
}

std::vector<SkillProfile> audit_profiles(const Taxonomy& taxonomy, int subset_k,
                                         std::uint64_t seed, int repeat) {
  Rng rng = make_substream(seed, repeat == 0 ? std::string("audit")
                                             : "audit/" + std::to_string(repeat));
  std::vector<SkillProfile> out;
  for (const Occupation& occ : taxonomy.occupations()) {
    if (!occ.female_share) continue;
    out.push_back(sample_profile(occ, subset_k, rng));
  }
  return out;
}

namespace {

struct AuditDraw {
  std::vector<std::string> codes;
  std::vector<double> shares;
  std::vector<ProfileVector> vectors;
};

std::vector<AuditDraw> draw_audit_sets(const Taxonomy& taxonomy,
                                       const Vectorizer& vectorizer,
                                       const GsrOptions& options) {
  if (options.repeats < 1) throw UsageError("gsr repeats must be >= 1");
  if (options.top_k < 1) throw UsageError("top_k must be >= 1");
  const std::size_t labeled = taxonomy.labeled_count();
  if (labeled < options.top_k + 2) {
    throw DataError("gsr audit needs at least " + std::to_string(options.top_k + 2) +
                    " occupations with female_share, found " + std::to_string(labeled));
  }
  std::vector<double> shares;
  for (const Occupation& occ : taxonomy.occupations()) {
    if (occ.female_share) shares.push_back(*occ.female_share);
  }
  if (std::all_of(shares.begin(), shares.end(),
                  [&](double s) { return s == shares[0]; })) {
    throw DataError("gsr audit: female_share has zero variance across occupations");
  }

  std::vector<AuditDraw> draws;
  for (int r = 0; r < options.repeats; ++r) {
    AuditDraw draw;
    draw.shares = shares;
    const std::vector<SkillProfile> profiles =
        audit_profiles(taxonomy, options.subset_k, options.seed, r);
    std::vector<std::string> keys;
    for (const SkillProfile& p : profiles) {
      draw.codes.push_back(p.occupation_code);
      keys.push_back(audit_key(r, p.occupation_code));
    }
    std::vector<ProfileRef> refs;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      refs.push_back(ProfileRef{keys[i], profiles[i].text});
    }
    draw.vectors = kernels::vectorize(vectorizer, refs);
    draws.push_back(std::move(draw));
  }
  return draws;
}

GsrAudit audit_from_draws(const std::vector<AuditDraw>& draws, const MatchModel& model,
                          std::size_t k) {
  GsrAudit result;
  double total = 0.0;
  for (std::size_t r = 0; r < draws.size(); ++r) {
    const Eigen::MatrixXd scores = kernels::score_matrix(model, draws[r].vectors);
    GsrAudit one = gsr_from_scores(scores, draws[r].codes, draws[r].shares, k);
    total += one.gsr;
    if (r == 0) {
      result.records = std::move(one.records);
      result.n_occupations_used = one.n_occupations_used;
    }
    result.repeat_gsr.push_back(one.gsr);
  }
  result.gsr = total / static_cast<double>(draws.size());
  return result;
}

std::size_t count_uncovered(std::span<const ProfileVector> vectors) {
  return std::count_if(vectors.begin(), vectors.end(),
                       [](const ProfileVector& v) { return v.uncovered; });
}

}  // namespace

GsrAudit gsr_audit(const Taxonomy& taxonomy, const Vectorizer& vectorizer,
                   const MatchModel& model, const GsrOptions& options) {
  return audit_from_draws(draw_audit_sets(taxonomy, vectorizer, options), model,
                          options.top_k);
}

std::string_view vectorizer_name(VectorizerKind kind) {
  switch (kind) {
    case VectorizerKind::kBow:
      return "bow";
    case VectorizerKind::kWordvec:
      return "wordvec";
    case VectorizerKind::kSentence:
      return "sentence";
  }
  return "unknown";
}

VectorizerKind parse_vectorizer_name(std::string_view name) {
  if (name == "bow") return VectorizerKind::kBow;
  if (name == "wordvec") return VectorizerKind::kWordvec;
  if (name == "sentence") return VectorizerKind::kSentence;
  throw UsageError("unknown vectorizer '" + std::string(name) +
                   "' (expected bow, wordvec or sentence)");
}

std::unique_ptr<Vectorizer> build_vectorizer(const VectorizerSpec& spec,
                                             const Taxonomy& taxonomy,
                                             std::vector<std::string>* warnings) {
  switch (spec.kind) {
    case VectorizerKind::kBow: {
      std::vector<std::string> corpus;
      for (const Occupation& occ : taxonomy.occupations()) {
        corpus.push_back(occupation_skill_text(occ));
      }
      return std::make_unique<BowVectorizer>(fit_bow(corpus));
    }
    case VectorizerKind::kWordvec: {
      if (spec.path.empty()) throw UsageError("wordvec needs an embeddings file");
      LoadedEmbeddings loaded = load_embeddings(spec.path);
      if (loaded.duplicate_tokens > 0 && warnings != nullptr) {
        warnings->push_back(std::to_string(loaded.duplicate_tokens) +
                            " duplicate embedding tokens (last row kept)");
      }
      return std::make_unique<AveragedEmbeddingVectorizer>(std::move(loaded.table));
    }
    case VectorizerKind::kSentence: {
      if (spec.path.empty()) throw UsageError("sentence needs a precomputed vectors file");
      return std::make_unique<PrecomputedVectorizer>(PrecomputedVectors::load(spec.path));
    }
  }
  throw UsageError("unhandled vectorizer kind");
}

std::size_t AuditReport::failed_rows() const {
  return std::count_if(rows.begin(), rows.end(),
                       [](const ReportRow& r) { return !r.ok(); });
}

std::shared_ptr<const LearnedMetric> train_metric(const Vectorizer& vectorizer,
                                                  std::span<const MatchPair> train,
                                                  const EvaluationOptions& options,
                                                  ItmlSummary* summary) {
  const std::size_t dim = vectorizer.dim();
  const bool reduce = options.itml_pca_dims > 0 &&
                      dim > static_cast<std::size_t>(options.itml_pca_dims);
  const std::size_t metric_dim = reduce ? options.itml_pca_dims : dim;
  if (metric_dim > options.itml_max_dim) {
    throw DataError("metric learning on dimension " + std::to_string(dim) +
                    " exceeds the limit of " + std::to_string(options.itml_max_dim) +
                    "; enable PCA pre-reduction (itml_pca_dims)");
  }

  std::vector<std::string> keys;
  std::vector<ProfileRef> left_refs, right_refs;
  keys.reserve(2 * train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    keys.push_back(pair_side_key(Split::kTrain, i, true));
    keys.push_back(pair_side_key(Split::kTrain, i, false));
  }
  for (std::size_t i = 0; i < train.size(); ++i) {
    left_refs.push_back(ProfileRef{keys[2 * i], train[i].left.text});
    right_refs.push_back(ProfileRef{keys[2 * i + 1], train[i].right.text});
  }
  const Eigen::MatrixXd left = stack_rows(kernels::vectorize(vectorizer, left_refs));
  const Eigen::MatrixXd right = stack_rows(kernels::vectorize(vectorizer, right_refs));

  std::vector<MatchLabel> labels;
  for (const MatchPair& p : train) labels.push_back(p.label);

  std::optional<Eigen::MatrixXd> projection;
  Eigen::MatrixXd differences = left - right;
  if (reduce) {
    Eigen::MatrixXd both(left.rows() + right.rows(), left.cols());
    both << left, right;
    const PrincipalAxes axes =
        principal_axes(both, static_cast<Eigen::Index>(metric_dim), PcaMethod::kEigen);
    projection = axes.directions.transpose();
    differences = differences * axes.directions;
  }
  const ItmlResult result = train_itml(differences, labels, options.itml);
  if (summary != nullptr) {
    *summary = ItmlSummary{result.sweeps,      result.converged,
                           result.skipped_updates, result.upper_bound,
                           result.lower_bound, dim,
                           metric_dim};
  }
  return std::make_shared<const LearnedMetric>(
      LearnedMetric{result.metric, std::move(projection)});
}

namespace {

double test_auc(const Vectorizer& vectorizer, std::span<const MatchPair> test,
                const MatchModel& model, std::size_t chunk_size, ReportRow& row) {
  std::vector<ScoredPair> scored;
  scored.reserve(test.size());
  std::size_t uncovered = 0, degenerate = 0;
  chunk_size = std::max<std::size_t>(chunk_size, 1);
  for (std::size_t begin = 0; begin < test.size(); begin += chunk_size) {
    const std::size_t end = std::min(test.size(), begin + chunk_size);
    std::vector<std::string> keys;
    for (std::size_t i = begin; i < end; ++i) {
      keys.push_back(pair_side_key(Split::kTest, i, true));
      keys.push_back(pair_side_key(Split::kTest, i, false));
    }
    std::vector<ProfileRef> left_refs, right_refs;
    for (std::size_t i = begin; i < end; ++i) {
      left_refs.push_back(ProfileRef{keys[2 * (i - begin)], test[i].left.text});
      right_refs.push_back(ProfileRef{keys[2 * (i - begin) + 1], test[i].right.text});
    }
    const auto left = kernels::vectorize(vectorizer, left_refs);
    const auto right = kernels::vectorize(vectorizer, right_refs);
    uncovered += count_uncovered(left) + count_uncovered(right);
    const auto scores = kernels::score_pairs(model, left, right);
    for (std::size_t i = begin; i < end; ++i) {
      const MatchScore& s = scores[i - begin];
      if (s.degenerate) ++degenerate;
      if (!std::isfinite(s.value)) throw DataError("non-finite matching score");
      scored.push_back(ScoredPair{test[i].label, s.value});
    }
  }
  if (uncovered > 0) {
    row.warnings.push_back(std::to_string(uncovered) +
                           " test profiles had no embedded tokens (zero vector)");
  }
  if (degenerate > 0) {
    row.warnings.push_back(std::to_string(degenerate) +
                           " test pairs scored 0 because of a zero vector");
  }
  return auc(scored);
}

}  // namespace

AuditReport evaluate_all(const Taxonomy& taxonomy, const PairDataset& pairs,
                         std::span<const VectorizerSpec> vectorizers,
                         std::span<const MetricKind> metrics,
                         const EvaluationOptions& options) {
  AuditReport report;
  for (const VectorizerSpec& spec : vectorizers) {
    std::vector<std::string> shared_warnings;
    std::unique_ptr<Vectorizer> vectorizer;
    std::string setup_error;
    std::vector<AuditDraw> draws;
    try {
      vectorizer = build_vectorizer(spec, taxonomy, &shared_warnings);
      draws = draw_audit_sets(taxonomy, *vectorizer, options.gsr);
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    std::size_t audit_uncovered = 0;
    for (const AuditDraw& d : draws) audit_uncovered += count_uncovered(d.vectors);

    for (MetricKind kind : metrics) {
      ReportRow row;
      row.vectorizer = std::string(vectorizer_name(spec.kind));
      row.metric = std::string(metric_name(kind));
      row.n_test_pairs = pairs.test.size();
      row.warnings = shared_warnings;
      if (!setup_error.empty()) {
        row.warnings.push_back("error: " + setup_error);
        report.rows.push_back(std::move(row));
        continue;
      }
      try {
        MatchModel model = MatchModel::cosine();
        if (kind == MetricKind::kEuclidean) {
          model = MatchModel::euclidean();
        } else if (kind == MetricKind::kLearned) {
          ItmlSummary summary;
          row.learned = train_metric(*vectorizer, pairs.train, options, &summary);
          row.itml = summary;
          model = MatchModel::learned(row.learned);
          if (!summary.converged) {
            row.warnings.push_back("metric learning stopped at max_iter without converging");
          }
          if (summary.skipped_updates > 0) {
            row.warnings.push_back(std::to_string(summary.skipped_updates) +
                                   " metric-learning updates skipped (zero distance)");
          }
          if (summary.metric_dim != summary.input_dim) {
            row.warnings.push_back("metric learned on " +
                                   std::to_string(summary.metric_dim) +
                                   " principal axes of " +
                                   std::to_string(summary.input_dim) + " dimensions");
          }
        }
        row.auc = test_auc(*vectorizer, pairs.test, model, options.chunk_size, row);
        GsrAudit audit = audit_from_draws(draws, model, options.gsr.top_k);
        row.gsr = audit.gsr;
        row.n_occupations = audit.n_occupations_used;
        row.audit = std::move(audit);
        if (audit_uncovered > 0) {
          row.warnings.push_back(std::to_string(audit_uncovered) +
                                 " audit profiles had no embedded tokens (zero vector)");
        }
      } catch (const std::exception& e) {
        row.auc.reset();
        row.gsr.reset();
        row.warnings.push_back(std::string("error: ") + e.what());
      }
      report.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     if (a.vectorizer != b.vectorizer) return a.vectorizer < b.vectorizer;
                     return a.metric < b.metric;
                   });
  return report;
}

}  // namespace skillmatch

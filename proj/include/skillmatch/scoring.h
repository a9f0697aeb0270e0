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

#ifndef SKILLMATCH_SCORING_H_
#define SKILLMATCH_SCORING_H_

#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace skillmatch {

// Matching score, oriented so that higher always means a better match.
// Distances are negated.
struct MatchScore {
  double value = 0.0;
  // Cosine with a zero-norm operand; value is 0.
  bool degenerate = false;
};

// Symmetric positive-semidefinite matrix of a squared Mahalanobis distance.
class MahalanobisMetric {
 public:
  explicit MahalanobisMetric(Eigen::MatrixXd matrix);
  static MahalanobisMetric identity(Eigen::Index dim);

  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  double max_asymmetry() const;
  double min_eigenvalue() const;
  bool is_psd(double tolerance = -1e-8) const { return min_eigenvalue() >= tolerance; }

 private:
  Eigen::MatrixXd matrix_;
};

// A learned metric, optionally preceded by a linear reduction
// (rows = reduced axes) fitted on the training vectors.
struct LearnedMetric {
  MahalanobisMetric metric;
  std::optional<Eigen::MatrixXd> projection;

  Eigen::Index input_dim() const {
    return projection ? projection->cols() : metric.dim();
  }
};

MatchScore cosine_score(std::span<const double> a, std::span<const double> b);
MatchScore euclidean_score(std::span<const double> a, std::span<const double> b);
// -(a-b)^T M (a-b)
MatchScore mahalanobis_score(const MahalanobisMetric& metric,
                             std::span<const double> a, std::span<const double> b);
MatchScore learned_score(const LearnedMetric& learned, std::span<const double> a,
                         std::span<const double> b);

enum class MetricKind { kCosine, kEuclidean, kLearned };

std::string_view metric_name(MetricKind kind);
// Accepts "cosine", "euclidean", "metric". Throws UsageError otherwise.
MetricKind parse_metric_name(std::string_view name);

class MatchModel {
 public:
  static MatchModel cosine() { return MatchModel(MetricKind::kCosine, nullptr); }
  static MatchModel euclidean() { return MatchModel(MetricKind::kEuclidean, nullptr); }
  static MatchModel learned(std::shared_ptr<const LearnedMetric> metric);

  MetricKind kind() const { return kind_; }
  std::string_view name() const { return metric_name(kind_); }
  // Non-null only for kLearned.
  const LearnedMetric* metric() const { return learned_.get(); }

 private:
  MatchModel(MetricKind kind, std::shared_ptr<const LearnedMetric> learned)
      : kind_(kind), learned_(std::move(learned)) {}

  MetricKind kind_;
  std::shared_ptr<const LearnedMetric> learned_;
};

// Single scoring entry point used by evaluation. Throws DataError on a
// dimension mismatch.
MatchScore score_pair(const MatchModel& model, std::span<const double> a,
                      std::span<const double> b);

}  // namespace skillmatch

#endif  // SKILLMATCH_SCORING_H_

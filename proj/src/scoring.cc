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

#include "skillmatch/scoring.h"

#include <cmath>
#include <string>

#include "skillmatch/error.h"

namespace skillmatch {

namespace {

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DataError("dimension mismatch: " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

Eigen::Map<const Eigen::VectorXd> as_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

MahalanobisMetric::MahalanobisMetric(Eigen::MatrixXd matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DataError("metric matrix must be square and non-empty");
  }
  if (!matrix_.allFinite()) throw DataError("metric matrix has non-finite entries");
}

MahalanobisMetric MahalanobisMetric::identity(Eigen::Index dim) {
  return MahalanobisMetric(Eigen::MatrixXd::Identity(dim, dim));
}

double MahalanobisMetric::max_asymmetry() const {
  return (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
}

double MahalanobisMetric::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (matrix_ + matrix_.transpose()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

MatchScore cosine_score(std::span<const double> a, std::span<const double> b) {
  check_dims(a.size(), b.size());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return MatchScore{0.0, true};
  return MatchScore{dot / (std::sqrt(na) * std::sqrt(nb)), false};
}

MatchScore euclidean_score(std::span<const double> a, std::span<const double> b) {
  check_dims(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return MatchScore{-std::sqrt(sum), false};
}

MatchScore mahalanobis_score(const MahalanobisMetric& metric,
                             std::span<const double> a, std::span<const double> b) {
  check_dims(a.size(), b.size());
  check_dims(a.size(), static_cast<std::size_t>(metric.dim()));
  const Eigen::VectorXd diff = as_eigen(a) - as_eigen(b);
  return MatchScore{-diff.dot(metric.matrix() * diff), false};
}

MatchScore learned_score(const LearnedMetric& learned, std::span<const double> a,
                         std::span<const double> b) {
  if (!learned.projection) return mahalanobis_score(learned.metric, a, b);
  check_dims(a.size(), b.size());
  check_dims(a.size(), static_cast<std::size_t>(learned.projection->cols()));
  const Eigen::VectorXd diff = *learned.projection * (as_eigen(a) - as_eigen(b));
  return MatchScore{-diff.dot(learned.metric.matrix() * diff), false};
}

std::string_view metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kCosine:
      return "cosine";
    case MetricKind::kEuclidean:
      return "euclidean";
    case MetricKind::kLearned:
      return "metric";
  }
  return "unknown";
}

MetricKind parse_metric_name(std::string_view name) {
  if (name == "cosine") return MetricKind::kCosine;
  if (name == "euclidean") return MetricKind::kEuclidean;
  if (name == "metric") return MetricKind::kLearned;
  throw UsageError("unknown metric '" + std::string(name) +
                   "' (expected cosine, euclidean or metric)");
}

MatchModel MatchModel::learned(std::shared_ptr<const LearnedMetric> metric) {
  if (metric == nullptr) throw UsageError("learned model requires a metric");
  return MatchModel(MetricKind::kLearned, std::move(metric));
}

MatchScore score_pair(const MatchModel& model, std::span<const double> a,
                      std::span<const double> b) {
  switch (model.kind()) {
    case MetricKind::kCosine:
      return cosine_score(a, b);
    case MetricKind::kEuclidean:
      return euclidean_score(a, b);
    case MetricKind::kLearned:
      return learned_score(*model.metric(), a, b);
  }
  throw UsageError("unhandled metric kind");
}

}  // namespace skillmatch

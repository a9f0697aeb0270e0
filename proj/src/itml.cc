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

#include "skillmatch/itml.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "skillmatch/error.h"

namespace skillmatch {

namespace {
constexpr double kMinProjection = 1e-12;
// Zero bounds would make the projection step infinite.
constexpr double kMinBound = 1e-9;
}  // namespace

void ItmlConfig::validate() const {
  if (!(gamma > 0.0)) throw UsageError("itml gamma must be > 0");
  if (max_iter < 1) throw UsageError("itml max_iter must be >= 1");
  if (!(conv_tol > 0.0)) throw UsageError("itml conv_tol must be > 0");
  if (!(low_percentile > 0.0 && low_percentile < high_percentile &&
        high_percentile < 100.0)) {
    throw UsageError("itml percentiles must satisfy 0 < low < high < 100");
  }
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw DataError("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = p / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

ItmlResult train_itml(const Eigen::MatrixXd& differences,
                      std::span<const MatchLabel> labels, const ItmlConfig& config,
                      const ItmlObserver& observer) {
  config.validate();
  const Eigen::Index n = differences.rows();
  const Eigen::Index d = differences.cols();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw DataError("itml: " + std::to_string(n) + " difference rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  if (d == 0) throw DataError("itml: zero-dimensional vectors");
  const auto n_good = std::count(labels.begin(), labels.end(), MatchLabel::kGood);
  if (n_good == 0 || n_good == n) {
    throw DataError("itml needs both good and bad training pairs");
  }

  std::vector<double> distances(n);
  for (Eigen::Index c = 0; c < n; ++c) distances[c] = differences.row(c).squaredNorm();
  double upper = percentile(distances, config.low_percentile);
  double lower = percentile(distances, config.high_percentile);
  if (upper >= lower) {
    throw DataError("itml: similarity bound " + std::to_string(upper) +
                    " >= dissimilarity bound " + std::to_string(lower) +
                    "; training distances are degenerate, inspect the data");
  }
  upper = std::max(upper, kMinBound);

  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
  std::vector<double> lambda(n, 0.0);
  std::vector<double> lambda_prev(n, 0.0);
  std::vector<double> bound(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    bound[c] = labels[c] == MatchLabel::kGood ? upper : lower;
  }

  ItmlResult result{MahalanobisMetric::identity(d), upper, lower, 0, false, 0};
  const double gamma = config.gamma;
  const double gamma_proj = gamma / (gamma + 1.0);
  Eigen::VectorXd v(d), mv(d);
  for (int sweep = 1; sweep <= config.max_iter; ++sweep) {
    for (Eigen::Index c = 0; c < n; ++c) {
      v = differences.row(c).transpose();
      mv.noalias() = m * v;
      const double p = v.dot(mv);
      if (p <= kMinProjection) {
        ++result.skipped_updates;
        continue;
      }
      const double delta = labels[c] == MatchLabel::kGood ? 1.0 : -1.0;
      const double alpha =
          std::min(lambda[c], delta * gamma_proj * (1.0 / p - 1.0 / bound[c]));
      lambda[c] -= alpha;
      bound[c] = gamma * bound[c] / (gamma + delta * alpha * bound[c]);
      const double beta = delta * alpha / (1.0 - delta * alpha * p);
      m.noalias() += beta * mv * mv.transpose();
    }
    m = 0.5 * (m + m.transpose()).eval();
    result.sweeps = sweep;
    if (observer) observer(ItmlSweepState{sweep, m, lambda});

    double prev_norm = 0.0, change = 0.0, cur_norm = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
      prev_norm += lambda_prev[c] * lambda_prev[c];
      cur_norm += lambda[c] * lambda[c];
      change += (lambda[c] - lambda_prev[c]) * (lambda[c] - lambda_prev[c]);
    }
    const bool done = prev_norm == 0.0
                          ? cur_norm == 0.0
                          : std::sqrt(change) / std::sqrt(prev_norm) < config.conv_tol;
    lambda_prev = lambda;
    if (done) {
      result.converged = true;
      break;
    }
  }
  if (!m.allFinite()) throw DataError("itml diverged to a non-finite metric");
  result.metric = MahalanobisMetric(std::move(m));
  return result;
}

}  // namespace skillmatch

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

#ifndef SKILLMATCH_ITML_H_
#define SKILLMATCH_ITML_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "skillmatch/scoring.h"
#include "skillmatch/simulation.h"

namespace skillmatch {

// Information-theoretic metric learning settings. The defaults mirror the
// common reference implementation's defaults.
struct ItmlConfig {
  double gamma = 1.0;
  int max_iter = 1000;
  double conv_tol = 1e-3;
  double low_percentile = 5.0;
  double high_percentile = 95.0;

  // Throws UsageError.
  void validate() const;
};

struct ItmlSweepState {
  int sweep = 0;
  const Eigen::MatrixXd& metric;
  std::span<const double> multipliers;
};

using ItmlObserver = std::function<void(const ItmlSweepState&)>;

struct ItmlResult {
  MahalanobisMetric metric;
  // Similar pairs should end at squared distance <= upper_bound, dissimilar
  // pairs at >= lower_bound.
  double upper_bound = 0.0;
  double lower_bound = 0.0;
  int sweeps = 0;
  bool converged = false;
  // Updates skipped because the constraint's current distance was ~0.
  std::size_t skipped_updates = 0;
};

// Linear-interpolation percentile, p in [0,100].
double percentile(std::vector<double> values, double p);

// Learns M by cyclic Bregman projections onto one constraint per row of
// `differences` (x_i - x_j), starting from the identity. `labels[c]` says
// whether pair c is a good (similar) or bad (dissimilar) match.
// The observer, if set, runs after every sweep.
ItmlResult train_itml(const Eigen::MatrixXd& differences,
                      std::span<const MatchLabel> labels, const ItmlConfig& config,
                      const ItmlObserver& observer = {});

}  // namespace skillmatch

#endif  // SKILLMATCH_ITML_H_

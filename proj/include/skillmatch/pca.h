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

#ifndef SKILLMATCH_PCA_H_
#define SKILLMATCH_PCA_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skillmatch/taxonomy.h"
#include "skillmatch/vectorize.h"

namespace skillmatch {

enum class PcaMethod {
  // Symmetric eigendecomposition of the covariance, or of the Gram matrix
  // when there are fewer samples than dimensions.
  kEigen,
  // Singular value decomposition of the centred data.
  kSvd,
};

struct PrincipalAxes {
  Eigen::RowVectorXd mean;
  // d x m, unit-norm orthogonal columns. Each column's largest-magnitude
  // entry is positive.
  Eigen::MatrixXd directions;
  // Sample-covariance eigenvalues, descending, clamped at 0.
  Eigen::VectorXd variances;

  // (n x d) -> (n x m)
  Eigen::MatrixXd project(const Eigen::MatrixXd& data) const;
};

// Top `count` principal directions of the rows of `data` (n x d).
// Throws DataError when n < 2 or the data has zero total variance.
PrincipalAxes principal_axes(const Eigen::MatrixXd& data, Eigen::Index count,
                             PcaMethod method = PcaMethod::kEigen);

Eigen::MatrixXd stack_rows(std::span<const ProfileVector> vectors);

struct ProjectionRow {
  std::string code;
  std::string title;
  double x = 0.0;
  double y = 0.0;
  std::optional<double> female_share;
};

struct Projection2D {
  std::vector<ProjectionRow> rows;
  std::array<double, 2> explained_variance{};
  PrincipalAxes axes;
};

// Needs at least 3 vectors of a common dimension >= 2. Rows come out in key
// order with empty titles.
Projection2D pca2(const std::map<std::string, ProfileVector, std::less<>>& vectors,
                  PcaMethod method = PcaMethod::kEigen);

// Vectorizes each occupation's full skill text (keyed by code) and projects.
Projection2D emit_projection(const Taxonomy& taxonomy, const Vectorizer& vectorizer,
                             PcaMethod method = PcaMethod::kEigen);

}  // namespace skillmatch

#endif  // SKILLMATCH_PCA_H_

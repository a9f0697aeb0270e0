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

#include "skillmatch/pca.h"

#include <algorithm>
#include <cmath>

#include "skillmatch/error.h"
#include "skillmatch/kernels.h"

namespace skillmatch {

namespace {

void fix_sign(Eigen::Ref<Eigen::VectorXd> direction) {
  Eigen::Index arg = 0;
  direction.cwiseAbs().maxCoeff(&arg);
  if (direction[arg] < 0) direction = -direction;
}

// Unit vector orthogonal to the first `filled` columns; used when a requested
// component has zero variance and its direction is arbitrary.
Eigen::VectorXd orthogonal_complement(const Eigen::MatrixXd& basis, Eigen::Index filled) {
  const Eigen::Index d = basis.rows();
  Eigen::VectorXd best;
  double best_norm = -1.0;
  for (Eigen::Index e = 0; e < d; ++e) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(d, e);
    for (Eigen::Index c = 0; c < filled; ++c) v -= basis.col(c).dot(v) * basis.col(c);
    const double norm = v.norm();
    if (norm > best_norm + 1e-12) {
      best_norm = norm;
      best = v / norm;
    }
  }
  return best;
}

}  // namespace

Eigen::MatrixXd PrincipalAxes::project(const Eigen::MatrixXd& data) const {
  return (data.rowwise() - mean) * directions;
}

PrincipalAxes principal_axes(const Eigen::MatrixXd& data, Eigen::Index count,
                             PcaMethod method) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (n < 2) throw DataError("pca needs at least 2 samples");
  if (count < 1 || count > d) {
    throw DataError("pca: cannot extract " + std::to_string(count) +
                    " components from dimension " + std::to_string(d));
  }
  PrincipalAxes axes;
  axes.mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - axes.mean;
  const double total = centered.squaredNorm();
  if (!(total > 0.0)) throw DataError("pca: data has zero total variance");
  const double denom = static_cast<double>(n - 1);

  axes.directions.resize(d, count);
  axes.variances.resize(count);
  Eigen::Index filled = 0;

  if (method == PcaMethod::kSvd) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Eigen::Index rank_cap = std::min(count, svd.singularValues().size());
    for (; filled < rank_cap; ++filled) {
      const double s = svd.singularValues()[filled];
      axes.variances[filled] = s * s / denom;
      axes.directions.col(filled) = svd.matrixV().col(filled);
    }
  } else if (d <= n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centered.transpose() * centered / denom);
    for (; filled < count; ++filled) {
      const Eigen::Index src = d - 1 - filled;
      axes.variances[filled] = eig.eigenvalues()[src];
      axes.directions.col(filled) = eig.eigenvectors().col(src);
    }
  } else {
    // Gram route: eigenvectors u of Xc Xc^T / (n-1) map to directions Xc^T u.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centered * centered.transpose() / denom);
    const Eigen::Index usable = std::min(count, n);
    for (; filled < usable; ++filled) {
      const Eigen::Index src = n - 1 - filled;
      const double lambda = eig.eigenvalues()[src];
      Eigen::VectorXd dir = centered.transpose() * eig.eigenvectors().col(src);
      const double norm = dir.norm();
      if (!(lambda > 0.0) || norm <= 1e-12 * std::sqrt(total)) break;
      axes.variances[filled] = lambda;
      axes.directions.col(filled) = dir / norm;
    }
  }
  for (; filled < count; ++filled) {
    axes.variances[filled] = 0.0;
    axes.directions.col(filled) = orthogonal_complement(axes.directions, filled);
  }
  for (Eigen::Index c = 0; c < count; ++c) {
    axes.variances[c] = std::max(0.0, axes.variances[c]);
    fix_sign(axes.directions.col(c));
  }
  return axes;
}

Eigen::MatrixXd stack_rows(std::span<const ProfileVector> vectors) {
  if (vectors.empty()) return Eigen::MatrixXd(0, 0);
  const auto d = static_cast<Eigen::Index>(vectors.front().dim());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(vectors.size()), d);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<Eigen::Index>(vectors[i].dim()) != d) {
      throw DataError("vectors of different dimensions cannot be stacked");
    }
    out.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(vectors[i].values.data(), d);
  }
  return out;
}

Projection2D pca2(const std::map<std::string, ProfileVector, std::less<>>& vectors,
                  PcaMethod method) {
  if (vectors.size() < 3) {
    throw DataError("pca2 needs at least 3 vectors, got " + std::to_string(vectors.size()));
  }
  std::vector<ProfileVector> ordered;
  ordered.reserve(vectors.size());
  for (const auto& [code, v] : vectors) ordered.push_back(v);
  const Eigen::MatrixXd data = stack_rows(ordered);
  if (data.cols() < 2) throw DataError("pca2 needs vectors of dimension >= 2");

  Projection2D out;
  out.axes = principal_axes(data, 2, method);
  const Eigen::MatrixXd projected = out.axes.project(data);
  out.explained_variance = {out.axes.variances[0], out.axes.variances[1]};
  Eigen::Index i = 0;
  for (const auto& [code, v] : vectors) {
    ProjectionRow row;
    row.code = code;
    row.x = projected(i, 0);
    row.y = projected(i, 1);
    out.rows.push_back(std::move(row));
    ++i;
  }
  return out;
}

Projection2D emit_projection(const Taxonomy& taxonomy, const Vectorizer& vectorizer,
                             PcaMethod method) {
  std::vector<std::string> texts;
  std::vector<ProfileRef> refs;
  texts.reserve(taxonomy.size());
  for (const Occupation& occ : taxonomy.occupations()) {
    texts.push_back(occupation_skill_text(occ));
  }
  for (std::size_t i = 0; i < texts.size(); ++i) {
    refs.push_back(ProfileRef{taxonomy.occupations()[i].code, texts[i]});
  }
  std::vector<ProfileVector> vecs = kernels::vectorize(vectorizer, refs);
  std::map<std::string, ProfileVector, std::less<>> by_code;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    by_code.emplace(taxonomy.occupations()[i].code, std::move(vecs[i]));
  }
  Projection2D out = pca2(by_code, method);
  for (ProjectionRow& row : out.rows) {
    const Occupation& occ = taxonomy.at(row.code);
    row.title = occ.title;
    row.female_share = occ.female_share;
  }
  return out;
}

}  // namespace skillmatch

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

#include "skillmatch/kernels.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "skillmatch/error.h"

namespace skillmatch::kernels {

namespace {

// Keeps the exception of the lowest failing index so parallel and serial
// runs report the same error.
class FirstError {
 public:
  void capture(std::ptrdiff_t index) {
#pragma omp critical(skillmatch_first_error)
    {
      if (!error_ || index < index_) {
        error_ = std::current_exception();
        index_ = index;
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  std::ptrdiff_t index_ = 0;
};

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DataError("score_pairs: " + std::to_string(a) + " left vectors but " +
                    std::to_string(b) + " right vectors");
  }
}

// Per-vector precomputation for the all-against-all matrix.
struct Prepared {
  std::vector<Eigen::VectorXd> reduced;    // learned: P x (or x)
  std::vector<Eigen::VectorXd> transformed;  // learned: M P x
  std::vector<double> norms;                 // cosine
};

Prepared prepare(const MatchModel& model, std::span<const ProfileVector> vectors,
                 bool parallel) {
  Prepared prep;
  const auto n = static_cast<std::ptrdiff_t>(vectors.size());
  if (n > 0) {
    for (const ProfileVector& v : vectors) {
      if (v.dim() != vectors[0].dim()) {
        throw DataError("score_matrix: vectors of different dimensions");
      }
    }
  }
  if (model.kind() == MetricKind::kCosine) {
    prep.norms.resize(n);
#pragma omp parallel for if (parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (double x : vectors[i].values) s += x * x;
      prep.norms[i] = std::sqrt(s);
    }
  } else if (model.kind() == MetricKind::kLearned) {
    const LearnedMetric& learned = *model.metric();
    if (n > 0 && static_cast<Eigen::Index>(vectors[0].dim()) != learned.input_dim()) {
      throw DataError("score_matrix: vector dimension " +
                      std::to_string(vectors[0].dim()) + " does not match metric");
    }
    prep.reduced.resize(n);
    prep.transformed.resize(n);
#pragma omp parallel for if (parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      Eigen::Map<const Eigen::VectorXd> x(vectors[i].values.data(),
                                          static_cast<Eigen::Index>(vectors[i].dim()));
      prep.reduced[i] = learned.projection ? Eigen::VectorXd(*learned.projection * x)
                                           : Eigen::VectorXd(x);
      prep.transformed[i] = learned.metric.matrix() * prep.reduced[i];
    }
  }
  return prep;
}

double matrix_entry(const MatchModel& model, const Prepared& prep,
                    std::span<const ProfileVector> vectors, std::size_t i,
                    std::size_t j) {
  switch (model.kind()) {
    case MetricKind::kCosine: {
      if (prep.norms[i] == 0.0 || prep.norms[j] == 0.0) return 0.0;
      const auto& a = vectors[i].values;
      const auto& b = vectors[j].values;
      double dot = 0.0;
      for (std::size_t t = 0; t < a.size(); ++t) dot += a[t] * b[t];
      return dot / (prep.norms[i] * prep.norms[j]);
    }
    case MetricKind::kEuclidean:
      return euclidean_score(vectors[i].values, vectors[j].values).value;
    case MetricKind::kLearned: {
      const Eigen::VectorXd& yi = prep.reduced[i];
      const Eigen::VectorXd& yj = prep.reduced[j];
      const Eigen::VectorXd& zi = prep.transformed[i];
      const Eigen::VectorXd& zj = prep.transformed[j];
      double s = 0.0;
      for (Eigen::Index t = 0; t < yi.size(); ++t) s += (yi[t] - yj[t]) * (zi[t] - zj[t]);
      return -s;
    }
  }
  return 0.0;
}

Eigen::MatrixXd score_matrix_impl(const MatchModel& model,
                                  std::span<const ProfileVector> vectors) {
  const Prepared prep = prepare(model, vectors, true);
  const auto n = static_cast<std::ptrdiff_t>(vectors.size());
  Eigen::MatrixXd scores(n, n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    scores(i, i) = -std::numeric_limits<double>::infinity();
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      const double s = matrix_entry(model, prep, vectors, i, j);
      scores(i, j) = s;
      scores(j, i) = s;
    }
  }
  return scores;
}

std::vector<std::size_t> top_k_row(const Eigen::MatrixXd& scores,
                                   std::span<const std::string> codes,
                                   std::size_t row, std::size_t k) {
  std::vector<std::size_t> cols;
  cols.reserve(codes.size());
  for (std::size_t j = 0; j < codes.size(); ++j) {
    if (j != row) cols.push_back(j);
  }
  const std::size_t take = std::min(k, cols.size());
  auto better = [&](std::size_t a, std::size_t b) {
    const double sa = scores(row, a), sb = scores(row, b);
    if (sa != sb) return sa > sb;
    return codes[a] < codes[b];
  };
  std::partial_sort(cols.begin(), cols.begin() + take, cols.end(), better);
  cols.resize(take);
  return cols;
}

std::vector<std::vector<std::size_t>> top_k_impl(const Eigen::MatrixXd& scores,
                                                 std::span<const std::string> codes,
                                                 std::size_t k) {
  if (scores.rows() != scores.cols() ||
      static_cast<std::size_t>(scores.rows()) != codes.size()) {
    throw DataError("top_k_rows: score matrix does not match code list");
  }
  const auto n = static_cast<std::ptrdiff_t>(codes.size());
  std::vector<std::vector<std::size_t>> rows(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = top_k_row(scores, codes, i, k);
  return rows;
}

std::vector<ProfileVector> vectorize_impl(const Vectorizer& vectorizer,
                                          std::span<const ProfileRef> profiles) {
  const auto n = static_cast<std::ptrdiff_t>(profiles.size());
  std::vector<ProfileVector> out(n);
  FirstError error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = vectorizer.transform(profiles[i]);
    } catch (...) {
      error.capture(i);
    }
  }
  error.rethrow();
  return out;
}

std::vector<MatchScore> score_pairs_impl(const MatchModel& model,
                                         std::span<const ProfileVector> left,
                                         std::span<const ProfileVector> right) {
  check_same_size(left.size(), right.size());
  const auto n = static_cast<std::ptrdiff_t>(left.size());
  std::vector<MatchScore> out(n);
  FirstError error;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = score_pair(model, left[i].values, right[i].values);
    } catch (...) {
      error.capture(i);
    }
  }
  error.rethrow();
  return out;
}

}  // namespace

std::vector<ProfileVector> vectorize(const Vectorizer& vectorizer,
                                     std::span<const ProfileRef> profiles) {
  return vectorize_impl(vectorizer, profiles);
}

std::vector<MatchScore> score_pairs(const MatchModel& model,
                                    std::span<const ProfileVector> left,
                                    std::span<const ProfileVector> right) {
  return score_pairs_impl(model, left, right);
}

Eigen::MatrixXd score_matrix(const MatchModel& model,
                             std::span<const ProfileVector> vectors) {
  return score_matrix_impl(model, vectors);
}

std::vector<std::vector<std::size_t>> top_k_rows(const Eigen::MatrixXd& scores,
                                                 std::span<const std::string> codes,
                                                 std::size_t k) {
  return top_k_impl(scores, codes, k);
}

// Serial references. Straightforward loops with no symmetry shortcuts or
// partial sorting; tests compare the OpenMP kernels against these.

std::vector<ProfileVector> vectorize_serial(const Vectorizer& vectorizer,
                                            std::span<const ProfileRef> profiles) {
  std::vector<ProfileVector> out;
  out.reserve(profiles.size());
  for (const ProfileRef& p : profiles) out.push_back(vectorizer.transform(p));
  return out;
}

std::vector<MatchScore> score_pairs_serial(const MatchModel& model,
                                           std::span<const ProfileVector> left,
                                           std::span<const ProfileVector> right) {
  check_same_size(left.size(), right.size());
  std::vector<MatchScore> out;
  out.reserve(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    out.push_back(score_pair(model, left[i].values, right[i].values));
  }
  return out;
}

Eigen::MatrixXd score_matrix_serial(const MatchModel& model,
                                    std::span<const ProfileVector> vectors) {
  const Prepared prep = prepare(model, vectors, false);
  const auto n = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd scores(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      scores(i, j) = i == j ? -std::numeric_limits<double>::infinity()
                            : matrix_entry(model, prep, vectors, std::min(i, j),
                                           std::max(i, j));
    }
  }
  return scores;
}

std::vector<std::vector<std::size_t>> top_k_rows_serial(
    const Eigen::MatrixXd& scores, std::span<const std::string> codes, std::size_t k) {
  if (scores.rows() != scores.cols() ||
      static_cast<std::size_t>(scores.rows()) != codes.size()) {
    throw DataError("top_k_rows: score matrix does not match code list");
  }
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < codes.size(); ++j) {
      if (j != i) cols.push_back(j);
    }
    std::sort(cols.begin(), cols.end(), [&](std::size_t a, std::size_t b) {
      if (scores(i, a) != scores(i, b)) return scores(i, a) > scores(i, b);
      return codes[a] < codes[b];
    });
    cols.resize(std::min(k, cols.size()));
    rows.push_back(std::move(cols));
  }
  return rows;
}

}  // namespace skillmatch::kernels

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

#ifndef SKILLMATCH_KERNELS_H_
#define SKILLMATCH_KERNELS_H_

// Data-parallel inner loops of evaluation. Each kernel has an OpenMP version
// and a plain serial reference; both write every output slot from exactly one
// iteration, so their results are bitwise identical regardless of thread
// count or scheduling.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skillmatch/scoring.h"
#include "skillmatch/vectorize.h"

namespace skillmatch::kernels {

std::vector<ProfileVector> vectorize(const Vectorizer& vectorizer,
                                     std::span<const ProfileRef> profiles);
std::vector<ProfileVector> vectorize_serial(const Vectorizer& vectorizer,
                                            std::span<const ProfileRef> profiles);

// out[i] = score_pair(model, left[i], right[i])
std::vector<MatchScore> score_pairs(const MatchModel& model,
                                    std::span<const ProfileVector> left,
                                    std::span<const ProfileVector> right);
std::vector<MatchScore> score_pairs_serial(const MatchModel& model,
                                           std::span<const ProfileVector> left,
                                           std::span<const ProfileVector> right);

// Symmetric all-against-all score matrix with -inf on the diagonal. Learned
// metrics use a factored form (projection and M*x precomputed per vector)
// that agrees with score_pair up to rounding.
Eigen::MatrixXd score_matrix(const MatchModel& model,
                             std::span<const ProfileVector> vectors);
Eigen::MatrixXd score_matrix_serial(const MatchModel& model,
                                    std::span<const ProfileVector> vectors);

// Per row, the k best column indices excluding the row itself, ordered by
// descending score then ascending code.
std::vector<std::vector<std::size_t>> top_k_rows(const Eigen::MatrixXd& scores,
                                                 std::span<const std::string> codes,
                                                 std::size_t k);
std::vector<std::vector<std::size_t>> top_k_rows_serial(
    const Eigen::MatrixXd& scores, std::span<const std::string> codes, std::size_t k);

}  // namespace skillmatch::kernels

#endif  // SKILLMATCH_KERNELS_H_

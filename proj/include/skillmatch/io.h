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

#ifndef SKILLMATCH_IO_H_
#define SKILLMATCH_IO_H_

// File formats shared by the command-line tool and the tests.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "skillmatch/evaluate.h"
#include "skillmatch/pca.h"
#include "skillmatch/scoring.h"
#include "skillmatch/simulation.h"
#include "skillmatch/taxonomy.h"

namespace skillmatch {

using OrderedJson = nlohmann::ordered_json;

OrderedJson taxonomy_to_json(const Taxonomy& taxonomy);
Taxonomy taxonomy_from_json(const nlohmann::json& doc);
Taxonomy read_taxonomy_json(const std::filesystem::path& path);

// One MatchPair per line:
// {"left_code","left_skills","right_code","right_skills","label","split"}.
// Train pairs first, then test pairs, each in dataset order.
void write_pairs_jsonl(std::ostream& out, const PairDataset& data);
// Seed and k are not stored per line and come back as 0.
PairDataset read_pairs_jsonl(const std::filesystem::path& path);

// {"dim": d, "matrix": [[...], ...]} row-major, plus "projection" (m x d)
// when the metric was learned on reduced vectors.
OrderedJson metric_to_json(const LearnedMetric& metric);
LearnedMetric metric_from_json(const nlohmann::json& doc);

// Array of {"vectorizer","metric","auc","gsr","n_test_pairs","n_occupations",
// "warnings"}; failed rows carry null auc/gsr. `config` is attached to every
// row under "config" when not null.
OrderedJson report_to_json(const AuditReport& report, const OrderedJson& config);

// code,female_share,mean_neighbor_share
void write_audit_csv(std::ostream& out, const GsrAudit& audit);

// code,title,x,y,female_share (empty when unlabelled)
void write_pca_csv(std::ostream& out, const Projection2D& projection);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Writes `content` to `path`, creating parent directories. Throws DataError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace skillmatch

#endif  // SKILLMATCH_IO_H_

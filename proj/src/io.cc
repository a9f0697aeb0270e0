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

#include "skillmatch/io.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "skillmatch/csv.h"
#include "skillmatch/error.h"
#include "skillmatch/text_util.h"

namespace skillmatch {

namespace {

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

SkillProfile profile_from(const nlohmann::json& row, const char* code_field,
                          const char* skills_field) {
  SkillProfile p;
  p.occupation_code = row.at(code_field).get<std::string>();
  p.skill_texts = row.at(skills_field).get<std::vector<std::string>>();
  if (p.skill_texts.empty()) throw DataError(std::string(skills_field) + " is empty");
  p.text = join_words(p.skill_texts);
  return p;
}

}  // namespace

OrderedJson taxonomy_to_json(const Taxonomy& taxonomy) {
  OrderedJson doc;
  doc["provenance"] = taxonomy.provenance();
  OrderedJson occs = OrderedJson::array();
  for (const Occupation& o : taxonomy.occupations()) {
    OrderedJson row;
    row["code"] = o.code;
    row["title"] = o.title;
    row["skills"] = o.skills;
    row["female_share"] = o.female_share ? OrderedJson(*o.female_share) : OrderedJson();
    occs.push_back(std::move(row));
  }
  doc["occupations"] = std::move(occs);
  return doc;
}

Taxonomy taxonomy_from_json(const nlohmann::json& doc) {
  try {
    std::vector<Occupation> occs;
    for (const auto& row : doc.at("occupations")) {
      Occupation o;
      o.code = row.at("code").get<std::string>();
      o.title = row.value("title", std::string());
      o.skills = row.at("skills").get<std::vector<std::string>>();
      std::sort(o.skills.begin(), o.skills.end());
      if (row.contains("female_share") && !row["female_share"].is_null()) {
        o.female_share = row["female_share"].get<double>();
      }
      if (o.skills.empty()) throw DataError("occupation '" + o.code + "' has no skills");
      occs.push_back(std::move(o));
    }
    return Taxonomy(std::move(occs), doc.value("provenance", std::string()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("taxonomy json: ") + e.what());
  }
}

Taxonomy read_taxonomy_json(const std::filesystem::path& path) {
  return taxonomy_from_json(parse_json_file(path));
}

void write_pairs_jsonl(std::ostream& out, const PairDataset& data) {
  for (Split split : {Split::kTrain, Split::kTest}) {
    for (const MatchPair& p : data.pairs(split)) {
      OrderedJson row;
      row["left_code"] = p.left.occupation_code;
      row["left_skills"] = p.left.skill_texts;
      row["right_code"] = p.right.occupation_code;
      row["right_skills"] = p.right.skill_texts;
      row["label"] = label_name(p.label);
      row["split"] = split_name(split);
      out << row.dump() << '\n';
    }
  }
}

PairDataset read_pairs_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open pairs file " + path.string());
  PairDataset data;
  data.k = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    try {
      const nlohmann::json row = nlohmann::json::parse(line);
      MatchPair p;
      p.left = profile_from(row, "left_code", "left_skills");
      p.right = profile_from(row, "right_code", "right_skills");
      const std::string label = row.at("label").get<std::string>();
      if (label == "good") {
        p.label = MatchLabel::kGood;
      } else if (label == "bad") {
        p.label = MatchLabel::kBad;
      } else {
        throw DataError("label must be good or bad");
      }
      if ((p.label == MatchLabel::kGood) !=
          (p.left.occupation_code == p.right.occupation_code)) {
        throw DataError("label contradicts occupation codes");
      }
      const std::string split = row.at("split").get<std::string>();
      if (split == "train") {
        data.train.push_back(std::move(p));
      } else if (split == "test") {
        data.test.push_back(std::move(p));
      } else {
        throw DataError("split must be train or test");
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(where + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  return data;
}

OrderedJson metric_to_json(const LearnedMetric& learned) {
  const Eigen::MatrixXd& m = learned.metric.matrix();
  OrderedJson doc;
  doc["dim"] = m.rows();
  OrderedJson rows = OrderedJson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) r[j] = m(i, j);
    rows.push_back(r);
  }
  doc["matrix"] = std::move(rows);
  if (learned.projection) {
    const Eigen::MatrixXd& p = *learned.projection;
    OrderedJson prows = OrderedJson::array();
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      std::vector<double> r(p.cols());
      for (Eigen::Index j = 0; j < p.cols(); ++j) r[j] = p(i, j);
      prows.push_back(r);
    }
    doc["projection"] = std::move(prows);
  }
  return doc;
}

LearnedMetric metric_from_json(const nlohmann::json& doc) {
  try {
    const auto dim = doc.at("dim").get<Eigen::Index>();
    const auto& rows = doc.at("matrix");
    if (dim <= 0 || static_cast<Eigen::Index>(rows.size()) != dim) {
      throw DataError("metric json: matrix row count does not match dim");
    }
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto r = rows[i].get<std::vector<double>>();
      if (static_cast<Eigen::Index>(r.size()) != dim) {
        throw DataError("metric json: row " + std::to_string(i) + " has wrong length");
      }
      for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = r[j];
    }
    LearnedMetric learned{MahalanobisMetric(std::move(m)), std::nullopt};
    if (doc.contains("projection")) {
      const auto& prows = doc["projection"];
      if (static_cast<Eigen::Index>(prows.size()) != dim || dim == 0) {
        throw DataError("metric json: projection must have dim rows");
      }
      const auto first = prows[0].get<std::vector<double>>();
      Eigen::MatrixXd p(dim, static_cast<Eigen::Index>(first.size()));
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto r = prows[i].get<std::vector<double>>();
        if (r.size() != first.size()) throw DataError("metric json: ragged projection");
        for (Eigen::Index j = 0; j < p.cols(); ++j) p(i, j) = r[j];
      }
      learned.projection = std::move(p);
    }
    return learned;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("metric json: ") + e.what());
  }
}

OrderedJson report_to_json(const AuditReport& report, const OrderedJson& config) {
  OrderedJson rows = OrderedJson::array();
  for (const ReportRow& r : report.rows) {
    OrderedJson row;
    row["vectorizer"] = r.vectorizer;
    row["metric"] = r.metric;
    row["auc"] = r.auc ? OrderedJson(*r.auc) : OrderedJson();
    row["gsr"] = r.gsr ? OrderedJson(*r.gsr) : OrderedJson();
    row["n_test_pairs"] = r.n_test_pairs;
    row["n_occupations"] = r.n_occupations;
    row["warnings"] = r.warnings;
    if (r.audit && r.audit->repeat_gsr.size() > 1) row["gsr_repeats"] = r.audit->repeat_gsr;
    if (r.itml) {
      OrderedJson itml;
      itml["sweeps"] = r.itml->sweeps;
      itml["converged"] = r.itml->converged;
      itml["skipped_updates"] = r.itml->skipped_updates;
      itml["upper_bound"] = r.itml->upper_bound;
      itml["lower_bound"] = r.itml->lower_bound;
      itml["input_dim"] = r.itml->input_dim;
      itml["metric_dim"] = r.itml->metric_dim;
      row["itml"] = std::move(itml);
    }
    if (!config.is_null()) row["fingerprint"] = config;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_audit_csv(std::ostream& out, const GsrAudit& audit) {
  out << "code,female_share,mean_neighbor_share\n";
  for (const GsrRecord& r : audit.records) {
    out << csv_field(r.code) << ',' << format_real(r.female_share) << ','
        << format_real(r.mean_neighbor_share) << '\n';
  }
}

void write_pca_csv(std::ostream& out, const Projection2D& projection) {
  out << "code,title,x,y,female_share\n";
  for (const ProjectionRow& r : projection.rows) {
    out << csv_field(r.code) << ',' << csv_field(r.title) << ',' << format_real(r.x)
        << ',' << format_real(r.y) << ','
        << (r.female_share ? format_real(*r.female_share) : std::string()) << '\n';
  }
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 initialisation failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace skillmatch

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

#include "skillmatch/pipeline.h"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "skillmatch/error.h"
#include "skillmatch/evaluate.h"
#include "skillmatch/pca.h"
#include "skillmatch/text_util.h"

namespace skillmatch {

namespace {

std::string dump(const OrderedJson& doc) { return doc.dump(2) + "\n"; }

void add_input(OrderedJson& inputs, const char* name, const std::filesystem::path& p) {
  if (p.empty()) return;
  inputs[name] = std::filesystem::exists(p) ? OrderedJson(sha256_file(p))
                                            : OrderedJson("missing");
}


VectorizerSpec spec_for(const RunConfig& config, const std::string& name) {
  VectorizerSpec spec;
  spec.kind = parse_vectorizer_name(name);
  if (spec.kind == VectorizerKind::kWordvec) spec.path = config.embeddings;
  if (spec.kind == VectorizerKind::kSentence) spec.path = config.precomputed;
  return spec;
}

}  // namespace

void RunConfig::validate() const {
  if (k < 1) throw UsageError("k must be >= 1");
  if (n_pairs == 0 || n_pairs % 4 != 0) {
    throw UsageError("n_pairs must be a positive multiple of 4 (got " +
                     std::to_string(n_pairs) + ")");
  }
  if (top_k < 1) throw UsageError("top_k must be >= 1");
  if (gsr_repeats < 1) throw UsageError("gsr_repeats must be >= 1");
  if (itml_pca_dims < 0) throw UsageError("itml_pca_dims must be >= 0");
  itml.validate();
  for (const std::string& v : vectorizers) parse_vectorizer_name(v);
  for (const std::string& m : metrics) parse_metric_name(m);
  parse_vectorizer_name(project_vectorizer);
}

OrderedJson config_fingerprint(const RunConfig& config) {
  OrderedJson fp;
  fp["tool"] = kToolVersion;
  fp["seed"] = config.seed;
  fp["k"] = config.k;
  fp["n_pairs"] = config.n_pairs;
  fp["top_k"] = config.top_k;
  fp["gsr_repeats"] = config.gsr_repeats;
  OrderedJson itml;
  itml["gamma"] = config.itml.gamma;
  itml["max_iter"] = config.itml.max_iter;
  itml["conv_tol"] = config.itml.conv_tol;
  itml["low_percentile"] = config.itml.low_percentile;
  itml["high_percentile"] = config.itml.high_percentile;
  itml["pca_dims"] = config.itml_pca_dims;
  fp["itml"] = std::move(itml);
  OrderedJson inputs = OrderedJson::object();
  add_input(inputs, "taxonomy", config.taxonomy);
  if (config.taxonomy.empty()) {
    add_input(inputs, "occupations", config.occupations);
    add_input(inputs, "skills", config.skills);
    add_input(inputs, "gender", config.gender);
  }
  add_input(inputs, "pairs", config.pairs);
  add_input(inputs, "embeddings", config.embeddings);
  add_input(inputs, "precomputed", config.precomputed);
  fp["inputs"] = std::move(inputs);
  return fp;
}

LoadedTaxonomy load_configured_taxonomy(const RunConfig& config) {
  if (!config.taxonomy.empty()) {
    return LoadedTaxonomy{read_taxonomy_json(config.taxonomy), LoadWarnings{}};
  }
  if (config.occupations.empty() || config.skills.empty()) {
    throw UsageError("need --taxonomy, or both --occupations and --skills");
  }
  std::optional<std::filesystem::path> gender;
  if (!config.gender.empty()) gender = config.gender;
  return load_taxonomy(config.occupations, config.skills, gender);
}

int cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  if (config.occupations.empty() || config.skills.empty()) {
    throw UsageError("ingest needs --occupations and --skills");
  }
  const LoadedTaxonomy loaded = load_configured_taxonomy(config);
  if (config.gender.empty()) {
    err << "warning: no gender file given; taxonomy has no female_share labels\n";
  }
  for (const std::string& w : loaded.warnings.describe()) err << "warning: " << w << "\n";

  OrderedJson doc = taxonomy_to_json(loaded.taxonomy);
  OrderedJson warnings = OrderedJson::array();
  for (const std::string& w : loaded.warnings.describe()) warnings.push_back(w);
  doc["warnings"] = std::move(warnings);
  doc["fingerprint"] = config_fingerprint(config);
  write_text_file(config.out_dir / "taxonomy.json", dump(doc));

  out << "occupations=" << loaded.taxonomy.size()
      << " skills=" << loaded.taxonomy.skill_count()
      << " labeled=" << loaded.taxonomy.labeled_count() << "\n";
  return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const LoadedTaxonomy loaded = load_configured_taxonomy(config);
  for (const std::string& w : loaded.warnings.describe()) err << "warning: " << w << "\n";
  const Taxonomy& taxonomy = loaded.taxonomy;
  const PairDataset data = generate_pairs(taxonomy, config.k, config.n_pairs, config.seed);
  if (data.excluded_occupations > 0) {
    err << "warning: " << data.excluded_occupations
        << " occupations with fewer than 2 skills excluded from pairs\n";
  }

  std::ostringstream pairs;
  write_pairs_jsonl(pairs, data);
  write_text_file(config.out_dir / "pairs.jsonl", pairs.str());

  // Every text a sentence encoder must embed for `evaluate` and `project`.
  std::ostringstream requests;
  auto request = [&requests](const std::string& key, const std::string& text) {
    OrderedJson row;
    row["key"] = key;
    row["text"] = text;
    requests << row.dump() << '\n';
  };
  for (const Occupation& occ : taxonomy.occupations()) {
    request(occ.code, occupation_skill_text(occ));
  }
  for (Split split : {Split::kTrain, Split::kTest}) {
    const auto& list = data.pairs(split);
    for (std::size_t i = 0; i < list.size(); ++i) {
      request(pair_side_key(split, i, true), list[i].left.text);
      request(pair_side_key(split, i, false), list[i].right.text);
    }
  }
  for (int r = 0; r < config.gsr_repeats; ++r) {
    for (const SkillProfile& p : audit_profiles(taxonomy, config.k, config.seed, r)) {
      request(audit_key(r, p.occupation_code), p.text);
    }
  }
  write_text_file(config.out_dir / "embed_requests.jsonl", requests.str());

  OrderedJson meta;
  meta["artifact"] = "pairs.jsonl";
  meta["n_train"] = data.train.size();
  meta["n_test"] = data.test.size();
  meta["excluded_occupations"] = data.excluded_occupations;
  meta["fingerprint"] = config_fingerprint(config);
  write_text_file(config.out_dir / "pairs.meta.json", dump(meta));

  out << "pairs=" << data.train.size() + data.test.size() << " train=" << data.train.size()
      << " test=" << data.test.size() << "\n";
  return kExitOk;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const LoadedTaxonomy loaded = load_configured_taxonomy(config);
  for (const std::string& w : loaded.warnings.describe()) err << "warning: " << w << "\n";
  PairDataset data = config.pairs.empty()
                         ? generate_pairs(loaded.taxonomy, config.k, config.n_pairs,
                                          config.seed)
                         : read_pairs_jsonl(config.pairs);

  std::vector<VectorizerSpec> specs;
  for (const std::string& v : config.vectorizers) specs.push_back(spec_for(config, v));
  std::vector<MetricKind> metrics;
  for (const std::string& m : config.metrics) metrics.push_back(parse_metric_name(m));

  EvaluationOptions options;
  options.gsr.top_k = config.top_k;
  options.gsr.subset_k = config.k;
  options.gsr.seed = config.seed;
  options.gsr.repeats = config.gsr_repeats;
  options.itml = config.itml;
  options.itml_pca_dims = config.itml_pca_dims;

  const AuditReport report = evaluate_all(loaded.taxonomy, data, specs, metrics, options);
  const OrderedJson fingerprint = config_fingerprint(config);
  write_text_file(config.out_dir / "report.json",
                  dump(report_to_json(report, fingerprint)));

  OrderedJson artifacts = OrderedJson::array();
  artifacts.push_back("report.json");
  for (const ReportRow& row : report.rows) {
    const std::string stem = row.vectorizer + "." + row.metric;
    if (row.audit) {
      std::ostringstream csv;
      write_audit_csv(csv, *row.audit);
      const std::string name = "audit_detail." + stem + ".csv";
      write_text_file(config.out_dir / name, csv.str());
      artifacts.push_back(name);
    }
    if (row.learned) {
      const std::string name = "metric." + row.vectorizer + ".json";
      OrderedJson doc = metric_to_json(*row.learned);
      doc["fingerprint"] = fingerprint;
      write_text_file(config.out_dir / name, dump(doc));
      artifacts.push_back(name);
    }
    out << row.vectorizer << "\t" << row.metric << "\tauc="
        << (row.auc ? format_real(*row.auc) : "NA")
        << "\tgsr=" << (row.gsr ? format_real(*row.gsr) : "NA") << "\n";
    for (const std::string& w : row.warnings) {
      err << "warning: " << row.vectorizer << "/" << row.metric << ": " << w << "\n";
    }
  }
  OrderedJson meta;
  meta["artifacts"] = std::move(artifacts);
  meta["fingerprint"] = fingerprint;
  write_text_file(config.out_dir / "evaluate.meta.json", dump(meta));

  return report.failed_rows() > 0 ? kExitPartial : kExitOk;
}

int cmd_project(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const LoadedTaxonomy loaded = load_configured_taxonomy(config);
  for (const std::string& w : loaded.warnings.describe()) err << "warning: " << w << "\n";
  std::vector<std::string> warnings;
  const auto vectorizer = build_vectorizer(spec_for(config, config.project_vectorizer),
                                           loaded.taxonomy, &warnings);
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
  const Projection2D projection = emit_projection(loaded.taxonomy, *vectorizer);

  std::ostringstream csv;
  write_pca_csv(csv, projection);
  write_text_file(config.out_dir / config.pca_output, csv.str());

  std::size_t unlabeled = 0;
  for (const ProjectionRow& r : projection.rows) unlabeled += r.female_share ? 0 : 1;
  OrderedJson meta;
  meta["artifact"] = config.pca_output;
  meta["vectorizer"] = config.project_vectorizer;
  meta["explained_variance"] = projection.explained_variance;
  meta["unlabeled"] = unlabeled;
  meta["fingerprint"] = config_fingerprint(config);
  write_text_file(config.out_dir / (config.pca_output + ".meta.json"), dump(meta));

  out << "rows=" << projection.rows.size() << " explained_variance="
      << format_real(projection.explained_variance[0]) << ","
      << format_real(projection.explained_variance[1]) << "\n";
  return kExitOk;
}

}  // namespace skillmatch

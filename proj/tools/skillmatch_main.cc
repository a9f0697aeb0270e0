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

// Command-line front end: ingest, simulate, evaluate, project.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "skillmatch/error.h"
#include "skillmatch/pipeline.h"

namespace {

void add_run_options(CLI::App& app, skillmatch::RunConfig& cfg) {
  app.add_option("--occupations", cfg.occupations, "occupations.csv (code,title)");
  app.add_option("--skills", cfg.skills, "skills.csv (code,skill_text)");
  app.add_option("--gender", cfg.gender, "gender.csv (code,female_share)");
  app.add_option("--taxonomy", cfg.taxonomy, "taxonomy.json written by ingest");
  app.add_option("--embeddings", cfg.embeddings, "word-vector text file (wordvec)");
  app.add_option("--precomputed", cfg.precomputed,
                 "JSONL of {key, vector} sentence embeddings (sentence)");
  app.add_option("--pairs", cfg.pairs, "pairs.jsonl written by simulate");
  app.add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
  app.add_option("--k", cfg.k, "skills per profile")->capture_default_str();
  app.add_option("--n-pairs", cfg.n_pairs, "total pairs, multiple of 4")
      ->capture_default_str();
  app.add_option("--top-k", cfg.top_k, "neighbours per occupation in the audit")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--gsr-repeats", cfg.gsr_repeats, "audit draws averaged into GSR")
      ->capture_default_str();
  app.add_option("--itml-gamma", cfg.itml.gamma)->capture_default_str();
  app.add_option("--itml-max-iter", cfg.itml.max_iter)->capture_default_str();
  app.add_option("--itml-conv-tol", cfg.itml.conv_tol)->capture_default_str();
  app.add_option("--itml-low-percentile", cfg.itml.low_percentile)->capture_default_str();
  app.add_option("--itml-high-percentile", cfg.itml.high_percentile)
      ->capture_default_str();
  app.add_option("--itml-pca-dims", cfg.itml_pca_dims,
                 "reduce to this many principal axes before metric learning (0 = off)")
      ->capture_default_str();
  app.add_option("--vectorizer", cfg.vectorizers, "bow, wordvec, sentence")
      ->check(CLI::IsMember({"bow", "wordvec", "sentence"}))
      ->capture_default_str();
  app.add_option("--metric", cfg.metrics, "cosine, euclidean, metric")
      ->check(CLI::IsMember({"cosine", "euclidean", "metric"}))
      ->capture_default_str();
  app.add_option("--pca-output", cfg.pca_output, "file name for project")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  skillmatch::RunConfig cfg;
  CLI::App app{"Skills-matching simulation and gender-segregation audit"};
  app.set_config("--config", "", "flat key = value config file; flags override");
  app.require_subcommand(1);
  app.fallthrough();
  add_run_options(app, cfg);

  auto* ingest = app.add_subcommand("ingest", "validate and join taxonomy CSVs");
  auto* simulate = app.add_subcommand("simulate", "generate good/bad skill-profile pairs");
  auto* evaluate = app.add_subcommand("evaluate", "AUC and GSR for every model");
  auto* project = app.add_subcommand("project", "2-D PCA of occupation vectors");
  project->add_option("vectorizer", cfg.project_vectorizer, "bow, wordvec or sentence")
      ->check(CLI::IsMember({"bow", "wordvec", "sentence"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? skillmatch::kExitOk : skillmatch::kExitUsage;
  }

  try {
    if (*ingest) return skillmatch::cmd_ingest(cfg, std::cout, std::cerr);
    if (*simulate) return skillmatch::cmd_simulate(cfg, std::cout, std::cerr);
    if (*evaluate) return skillmatch::cmd_evaluate(cfg, std::cout, std::cerr);
    if (*project) return skillmatch::cmd_project(cfg, std::cout, std::cerr);
  } catch (const skillmatch::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return skillmatch::kExitUsage;
  } catch (const skillmatch::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return skillmatch::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return skillmatch::kExitData;
  }
  return skillmatch::kExitUsage;
}

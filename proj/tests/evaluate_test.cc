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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "doctest.h"

#include "skillmatch/error.h"
#include "skillmatch/evaluate.h"
#include "skillmatch/io.h"
#include "skillmatch/kernels.h"
#include "skillmatch/rng.h"
#include "test_util.h"

using namespace skillmatch;
using skillmatch::testing::make_occupation;

namespace {

std::vector<ScoredPair> scored(const std::vector<double>& good, const std::vector<double>& bad) {
  std::vector<ScoredPair> out;
  for (double g : good) out.push_back({MatchLabel::kGood, g});
  for (double b : bad) out.push_back({MatchLabel::kBad, b});
  return out;
}

// Random labelled scores on a coarse grid so that ties are frequent.
std::vector<ScoredPair> random_scored(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> grid(1, 8);
  std::vector<ScoredPair> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].label = i % 2 == 0 ? MatchLabel::kGood : MatchLabel::kBad;
    out[i].score = grid(rng) * 0.25;
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

using ProfileMap = std::map<std::string, ProfileVector, std::less<>>;

ProfileMap profile_map(const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  ProfileMap m;
  for (const auto& [code, v] : rows) m[code].values = v;
  return m;
}

// Full-sort oracle: every other code ordered by (score desc, code asc).
std::vector<std::string> top_k_oracle(const std::string& query, const ProfileMap& profiles,
                                      const MatchModel& model, std::size_t k) {
  std::vector<std::pair<double, std::string>> all;
  for (const auto& [code, v] : profiles) {
    if (code == query) continue;
    all.emplace_back(score_pair(model, profiles.at(query).view(), v.view()).value, code);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(k, all.size()); ++i) out.push_back(all[i].second);
  return out;
}

Taxonomy varied_share_taxonomy(int n) {
  std::vector<Occupation> occs;
  for (int i = 0; i < n; ++i) {
    occs.push_back(make_occupation("Q" + std::to_string(100 + i),
                                   {"word" + std::to_string(i) + " common task",
                                    "other" + std::to_string(i % 4) + " duty"},
                                   0.05 + 0.9 * i / (n - 1)));
  }
  return Taxonomy(std::move(occs), "");
}

// Deterministic stand-in for sentence vectors keyed by profile identifier.
std::vector<double> key_vector(std::string_view text, int dim) {
  std::vector<double> v(dim, 0.0);
  for (const std::string& tok : tokenize(text)) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : tok) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    for (int j = 0; j < dim; ++j) {
      v[j] += static_cast<double>((h >> (j * 5 % 60)) & 31) - 15.5;
    }
  }
  return v;
}

struct EvalFixture {
  std::filesystem::path dir;
  Taxonomy taxonomy;
  PairDataset pairs;
  std::filesystem::path word_vectors;
  std::filesystem::path sentence;
};

EvalFixture make_eval_fixture(bool include_train_keys) {
  const auto dir = testing::make_temp_dir("evaluate");
  const auto fx = testing::write_sample_csvs(dir, 30, 10, 3);
  Taxonomy tax = load_taxonomy(fx.occupations, fx.skills, fx.gender).taxonomy;
  PairDataset pairs = generate_pairs(tax, 5, 80, 42);
  testing::write_sample_word_vectors(dir / "words.txt", 8, 5);

  std::ostringstream pre;
  auto emit = [&](const std::string& key, std::string_view text) {
    nlohmann::json row;
    row["key"] = key;
    row["vector"] = key_vector(text, 6);
    pre << row.dump() << "\n";
  };
  for (Split s : {Split::kTrain, Split::kTest}) {
    if (s == Split::kTrain && !include_train_keys) continue;
    const auto& list = pairs.pairs(s);
    for (std::size_t i = 0; i < list.size(); ++i) {
      emit(pair_side_key(s, i, true), list[i].left.text);
      emit(pair_side_key(s, i, false), list[i].right.text);
    }
  }
  for (const SkillProfile& p : audit_profiles(tax, 5, 42, 0)) {
    emit(audit_key(0, p.occupation_code), p.text);
  }
  testing::write_file(dir / "sentence.jsonl", pre.str());
  return {dir, std::move(tax), std::move(pairs), dir / "words.txt", dir / "sentence.jsonl"};
}

std::vector<VectorizerSpec> all_specs(const EvalFixture& fx) {
  return {{VectorizerKind::kBow, {}},
          {VectorizerKind::kWordvec, fx.word_vectors},
          {VectorizerKind::kSentence, fx.sentence}};
}

const std::vector<MetricKind> kAllMetrics = {MetricKind::kCosine, MetricKind::kEuclidean,
                                             MetricKind::kLearned};

std::string report_bytes(const AuditReport& r) {
  return report_to_json(r, OrderedJson::object()).dump(2);
}

}  // namespace

TEST_CASE("auc examples") {
  CHECK(auc(scored({0.9, 0.8}, {0.2, 0.1})) == 1.0);
  CHECK(auc(scored({0.5}, {0.5})) == 0.5);
  // Brute force: (0.8>0.6), (0.8>0.1), (0.3<0.6), (0.3>0.1) -> 3 of 4.
  CHECK(auc(scored({0.8, 0.3}, {0.6, 0.1})) == 0.75);
  CHECK(auc(scored({0.1}, {0.2, 0.3})) == 0.0);
  CHECK_THROWS_AS(auc(scored({0.1, 0.2}, {})), DataError);
  CHECK_THROWS_AS(auc(scored({}, {0.1})), DataError);
  CHECK_THROWS_AS(auc(scored({NAN}, {0.1})), DataError);
}

TEST_CASE("auc equals brute-force counting with ties") {
  Rng rng = make_substream(3, "auc");
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 50);
    const auto s = random_scored(rng, size(rng));
    CHECK(std::abs(auc(s) - testing::auc_brute_force(s)) <= 1e-12);

    auto swapped = s;
    for (auto& p : swapped) {
      p.label = p.label == MatchLabel::kGood ? MatchLabel::kBad : MatchLabel::kGood;
    }
    CHECK(std::abs(auc(swapped) - (1.0 - auc(s))) <= 1e-12);

    auto affine = s, cubed = s;
    for (auto& p : affine) p.score = 2.0 * p.score + 7.0;
    for (auto& p : cubed) p.score = p.score * p.score * p.score;
    CHECK(std::abs(auc(affine) - auc(s)) <= 1e-12);
    CHECK(std::abs(auc(cubed) - auc(s)) <= 1e-12);
  }
}

TEST_CASE("pearson examples") {
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{5, 7, 9}) ==
        doctest::Approx(1.0));
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{-1, -2, -3}) ==
        doctest::Approx(-1.0));
  // Means 2.5 and 2.5; covariance sum (-1.5)(-0.5)+(-0.5)(-1.5)+(0.5)(1.5)+(1.5)(0.5) = 3;
  // each sum of squares is 5, so r = 3/5.
  CHECK(pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 1, 4, 3}) ==
        doctest::Approx(0.6).epsilon(1e-15));
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                  DataError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), DataError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), DataError);
}

TEST_CASE("pearson matches the definition and is affine invariant") {
  Rng rng = make_substream(5, "pearson");
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> pos(0.1, 10.0), shift(-50.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 40;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(rng);
      y[i] = 0.5 * x[i] + normal(rng);
    }
    const double r = pearson(x, y);
    CHECK(std::abs(r - testing::pearson_definition(x, y)) <= 1e-12);
    CHECK(r <= 1.0);
    CHECK(r >= -1.0);
    const double a = pos(rng), b = shift(rng), c = pos(rng), d = shift(rng);
    std::vector<double> ax(n), cy(n);
    for (std::size_t i = 0; i < n; ++i) {
      ax[i] = a * x[i] + b;
      cy[i] = c * y[i] + d;
    }
    CHECK(std::abs(pearson(ax, cy) - r) <= 1e-12);
  }
}

TEST_CASE("top_k_neighbors examples") {
  const ProfileMap three = profile_map({{"A", {1, 0}}, {"B", {0, 1}}, {"C", {1, 1}}});
  const auto got = top_k_neighbors("A", three, MatchModel::cosine(), 10);
  CHECK(got == std::vector<std::string>{"C", "B"});

  const ProfileMap tie = profile_map({{"Q", {1, 0}}, {"Z", {0, 1}}, {"M", {0, 1}}});
  CHECK(top_k_neighbors("Q", tie, MatchModel::cosine(), 2) ==
        std::vector<std::string>{"M", "Z"});

  const ProfileMap same = profile_map({{"Q", {1, 2}}, {"A", {2, 1}}, {"Z", {1, 2}}});
  CHECK(top_k_neighbors("Q", same, MatchModel::cosine(), 1) == std::vector<std::string>{"Z"});

  CHECK_THROWS_AS(top_k_neighbors("nope", three, MatchModel::cosine(), 2), DataError);
  const ProfileMap lonely = profile_map({{"A", {1, 0}}});
  CHECK_THROWS_AS(top_k_neighbors("A", lonely, MatchModel::cosine(), 2), DataError);
}

TEST_CASE("top_k_neighbors equals the full-sort oracle") {
  Rng rng = make_substream(7, "topk");
  std::uniform_int_distribution<int> grid(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 39;
    const int d = 1 + trial % 16;
    ProfileMap profiles;
    for (int i = 0; i < n; ++i) {
      std::vector<double> v(d);
      for (double& x : v) x = grid(rng);
      profiles["c" + std::to_string((i * 37) % 101)].values = v;
    }
    const MatchModel model = trial % 2 ? MatchModel::cosine() : MatchModel::euclidean();
    for (const auto& [code, v] : profiles) {
      const std::size_t k = 1 + static_cast<std::size_t>(trial % 12);
      CHECK(top_k_neighbors(code, profiles, model, k) ==
            top_k_oracle(code, profiles, model, k));
    }
  }
}

TEST_CASE("gsr audit errors") {
  std::vector<Occupation> occs;
  for (int i = 0; i < 15; ++i) {
    occs.push_back(make_occupation("C" + std::to_string(10 + i), {"alpha beta", "gamma delta"},
                                   0.5));
  }
  const Taxonomy flat(std::move(occs), "");
  const std::vector<std::string> corpus = {"alpha beta gamma delta"};
  const BowVectorizer bow(fit_bow(corpus));
  CHECK_THROWS_AS(gsr_audit(flat, bow, MatchModel::cosine(), GsrOptions{}), DataError);

  const Taxonomy small = varied_share_taxonomy(8);
  CHECK_THROWS_AS(gsr_audit(small, bow, MatchModel::cosine(), GsrOptions{}), DataError);
  GsrOptions opts;
  opts.repeats = 0;
  CHECK_THROWS_AS(gsr_audit(varied_share_taxonomy(20), bow, MatchModel::cosine(), opts),
                  UsageError);
}

TEST_CASE("two vocabulary-disjoint clusters give a near-perfect gsr") {
  const Taxonomy tax = testing::two_cluster_taxonomy(20, 12, 0.9, 0.1, 11);
  std::vector<std::string> texts;
  for (const Occupation& o : tax.occupations()) texts.push_back(occupation_skill_text(o));
  const BowVectorizer bow(fit_bow(texts));
  GsrOptions opts;
  const GsrAudit audit = gsr_audit(tax, bow, MatchModel::cosine(), opts);
  CHECK(audit.gsr > 0.95);
  CHECK(audit.n_occupations_used == 40);
  REQUIRE(audit.records.size() == 40);

  // Exhaustive check of the same audit profiles.
  const auto profiles = audit_profiles(tax, opts.subset_k, opts.seed, 0);
  ProfileMap vectors;
  for (const SkillProfile& p : profiles) {
    vectors[p.occupation_code] = bow.transform({p.occupation_code, p.text});
  }
  for (const GsrRecord& rec : audit.records) {
    CHECK(rec.top_codes == top_k_oracle(rec.code, vectors, MatchModel::cosine(), 10));
    for (const std::string& n : rec.top_codes) CHECK(n[0] == rec.code[0]);
    CHECK(rec.mean_neighbor_share == doctest::Approx(rec.female_share));
  }
}

TEST_CASE("random score matrices give no gender correlation on average") {
  const Taxonomy tax = varied_share_taxonomy(30);
  std::vector<std::string> codes;
  std::vector<double> shares;
  for (const Occupation& o : tax.occupations()) {
    codes.push_back(o.code);
    shares.push_back(*o.female_share);
  }
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng = make_substream(seed, "noise");
    std::normal_distribution<double> normal;
    std::vector<ProfileVector> noise(codes.size());
    for (auto& p : noise) {
      p.values.resize(16);
      for (double& x : p.values) x = normal(rng);
    }
    total += gsr_from_scores(kernels::score_matrix(MatchModel::cosine(), noise), codes,
                             shares, 10)
                 .gsr;
  }
  CHECK(std::abs(total / 10.0) < 0.3);
}

TEST_CASE("gsr is unchanged by monotone score transforms") {
  const Taxonomy tax = varied_share_taxonomy(25);
  std::vector<std::string> codes;
  std::vector<double> shares;
  for (const Occupation& o : tax.occupations()) {
    codes.push_back(o.code);
    shares.push_back(*o.female_share);
  }
  Rng rng = make_substream(9, "gsr-monotone");
  std::uniform_int_distribution<int> grid(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd s(25, 25);
    for (int i = 0; i < 25; ++i) {
      s(i, i) = -std::numeric_limits<double>::infinity();
      for (int j = i + 1; j < 25; ++j) s(i, j) = s(j, i) = grid(rng) * 0.5;
    }
    const GsrAudit base = gsr_from_scores(s, codes, shares, 10);
    const Eigen::MatrixXd affine = (2.0 * s.array() + 7.0).matrix();
    const Eigen::MatrixXd cubed = s.array().cube().matrix();
    for (const Eigen::MatrixXd& t : {affine, cubed}) {
      const GsrAudit other = gsr_from_scores(t, codes, shares, 10);
      CHECK(other.gsr == base.gsr);
      for (std::size_t i = 0; i < base.records.size(); ++i) {
        CHECK(other.records[i].top_codes == base.records[i].top_codes);
      }
    }
  }
}

TEST_CASE("audit profiles are per labelled occupation and seeded") {
  const Taxonomy labelled = varied_share_taxonomy(14);
  std::vector<Occupation> occs(labelled.occupations().begin(), labelled.occupations().end());
  occs.push_back(make_occupation("Z999", {"unlabelled thing", "second thing"}));
  const Taxonomy tax(std::move(occs), "");
  const auto a = audit_profiles(tax, 5, 42, 0);
  CHECK(a.size() == 14);
  CHECK(std::none_of(a.begin(), a.end(),
                     [](const SkillProfile& p) { return p.occupation_code == "Z999"; }));
  CHECK(a == audit_profiles(tax, 5, 42, 0));
  CHECK(audit_key(0, "11-1011.00") == "audit/0/11-1011.00");
  CHECK(parse_vectorizer_name("wordvec") == VectorizerKind::kWordvec);
  CHECK_THROWS_AS(parse_vectorizer_name("tfidf"), UsageError);
}

TEST_CASE("evaluate_all produces every combination deterministically") {
  const EvalFixture fx = make_eval_fixture(true);
  const auto specs = all_specs(fx);
  EvaluationOptions opts;
  const AuditReport report = evaluate_all(fx.taxonomy, fx.pairs, specs, kAllMetrics, opts);
  REQUIRE(report.rows.size() == 9);
  CHECK(report.failed_rows() == 0);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& a = report.rows[i - 1];
    const auto& b = report.rows[i];
    CHECK(std::tie(a.vectorizer, a.metric) < std::tie(b.vectorizer, b.metric));
  }
  for (const ReportRow& row : report.rows) {
    CAPTURE(row.vectorizer);
    CAPTURE(row.metric);
    CHECK(row.ok());
    CHECK(*row.auc >= 0.0);
    CHECK(*row.auc <= 1.0);
    CHECK(row.n_test_pairs == 40);
    CHECK(row.n_occupations == 30);
    CHECK(row.itml.has_value() == (row.metric == "metric"));
  }
  CHECK(report_bytes(report) ==
        report_bytes(evaluate_all(fx.taxonomy, fx.pairs, specs, kAllMetrics, opts)));

  const std::vector<MetricKind> cosine_only = {MetricKind::kCosine};
  CHECK(evaluate_all(fx.taxonomy, fx.pairs, specs, cosine_only, opts).rows.size() == 3);
}

TEST_CASE("static metrics never read the train split") {
  // No train keys in the sentence file: learning must fail, cosine and
  // euclidean must not notice.
  const EvalFixture fx = make_eval_fixture(false);
  const std::vector<VectorizerSpec> specs = {{VectorizerKind::kSentence, fx.sentence}};
  const AuditReport report = evaluate_all(fx.taxonomy, fx.pairs, specs, kAllMetrics, {});
  REQUIRE(report.rows.size() == 3);
  CHECK(report.failed_rows() == 1);
  for (const ReportRow& row : report.rows) {
    if (row.metric == "metric") {
      CHECK_FALSE(row.ok());
      REQUIRE_FALSE(row.warnings.empty());
      CHECK(row.warnings.back().find("train/0/left") != std::string::npos);
    } else {
      CHECK(row.ok());
    }
  }
}

TEST_CASE("a missing embeddings file fails only its rows") {
  const EvalFixture fx = make_eval_fixture(true);
  const std::vector<VectorizerSpec> specs = {{VectorizerKind::kBow, {}},
                                             {VectorizerKind::kWordvec, fx.dir / "absent.txt"}};
  const AuditReport report = evaluate_all(fx.taxonomy, fx.pairs, specs, kAllMetrics, {});
  REQUIRE(report.rows.size() == 6);
  CHECK(report.failed_rows() == 3);
  for (const ReportRow& row : report.rows) CHECK(row.ok() == (row.vectorizer == "bow"));
}

TEST_CASE("metric learning respects the dimension guard and optional reduction") {
  const EvalFixture fx = make_eval_fixture(true);
  const std::vector<VectorizerSpec> specs = {{VectorizerKind::kBow, {}}};
  const std::vector<MetricKind> learned = {MetricKind::kLearned};
  EvaluationOptions opts;
  opts.itml_max_dim = 10;
  const AuditReport refused = evaluate_all(fx.taxonomy, fx.pairs, specs, learned, opts);
  CHECK(refused.failed_rows() == 1);

  opts.itml_pca_dims = 8;
  const AuditReport reduced = evaluate_all(fx.taxonomy, fx.pairs, specs, learned, opts);
  REQUIRE(reduced.rows.size() == 1);
  const ReportRow& row = reduced.rows[0];
  CHECK(row.ok());
  REQUIRE(row.itml.has_value());
  CHECK(row.itml->metric_dim == 8);
  CHECK(row.itml->input_dim > 10);
  REQUIRE(row.learned);
  CHECK(row.learned->projection.has_value());
  CHECK(row.learned->metric.is_psd());
}

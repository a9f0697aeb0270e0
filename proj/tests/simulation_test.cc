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
#include <set>
#include <sstream>

#include "doctest.h"

#include "skillmatch/error.h"
#include "skillmatch/io.h"
#include "skillmatch/simulation.h"
#include "test_util.h"

using namespace skillmatch;
using skillmatch::testing::make_occupation;

namespace {

Taxonomy wide_taxonomy(int n_occ, int skills_each) {
  std::vector<Occupation> occs;
  for (int i = 0; i < n_occ; ++i) {
    std::vector<std::string> skills;
    for (int s = 0; s < skills_each; ++s) {
      skills.push_back("task" + std::to_string(i) + " step" + std::to_string(s));
    }
    occs.push_back(make_occupation("O" + std::to_string(100 + i), skills));
  }
  return Taxonomy(std::move(occs), "wide");
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

std::string serialize(const PairDataset& d) {
  std::ostringstream os;
  write_pairs_jsonl(os, d);
  return os.str();
}

}  // namespace

TEST_CASE("split_skills partitions each occupation") {
  const Taxonomy tax({make_occupation("A", {"a", "b", "c", "d"}),
                      make_occupation("B", {"e", "f", "g"}),
                      make_occupation("C", {"solo"})},
                     "");
  const SkillSplit split = split_skills(tax, 7);
  CHECK(split.excluded == 1);
  CHECK(split.by_code.count("C") == 0);

  const SkillHalves& a = split.by_code.at("A");
  CHECK(a.train.size() == 2);
  CHECK(a.test.size() == 2);
  std::set<std::string> all = as_set(a.train);
  for (const auto& s : a.test) CHECK(all.insert(s).second);
  CHECK(all == std::set<std::string>{"a", "b", "c", "d"});

  const SkillHalves& b = split.by_code.at("B");
  CHECK(b.train.size() == 2);  // odd count: train gets the extra statement
  CHECK(b.test.size() == 1);

  const SkillSplit again = split_skills(tax, 7);
  CHECK(again.by_code.at("A").train == a.train);
  CHECK(again.by_code.at("B").test == b.test);
}

TEST_CASE("sample_profile draws without replacement") {
  Rng rng = make_substream(1, "t");
  const std::vector<std::string> small = {"a", "b", "c"};
  const SkillProfile p = sample_profile("X", small, 5, rng);
  CHECK(p.skill_texts.size() == 3);
  CHECK(as_set(p.skill_texts) == as_set(small));
  CHECK(p.text == p.skill_texts[0] + " " + p.skill_texts[1] + " " + p.skill_texts[2]);

  std::vector<std::string> pool;
  for (int i = 0; i < 10; ++i) pool.push_back("s" + std::to_string(i));
  for (int trial = 0; trial < 50; ++trial) {
    const SkillProfile q = sample_profile("X", pool, 5, rng);
    CHECK(q.skill_texts.size() == 5);
    CHECK(as_set(q.skill_texts).size() == 5);
    for (const auto& s : q.skill_texts) {
      CHECK(std::find(pool.begin(), pool.end(), s) != pool.end());
    }
  }

  Rng r1 = make_substream(9, "x"), r2 = make_substream(9, "x");
  CHECK(sample_profile("X", pool, 5, r1) == sample_profile("X", pool, 5, r2));
  CHECK_THROWS_AS(sample_profile("X", std::vector<std::string>{}, 5, r1), DataError);
}

TEST_CASE("sample_profile is uniform over the pool") {
  // Every element of a 6-pool should be picked ~ k/6 of the time.
  std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  Rng rng = make_substream(3, "uniform");
  std::map<std::string, int> hits;
  const int trials = 30000;
  for (int t = 0; t < trials; ++t) {
    for (const auto& s : sample_profile("X", pool, 2, rng).skill_texts) ++hits[s];
  }
  for (const auto& s : pool) {
    CHECK(std::abs(hits[s] / double(trials) - 2.0 / 6.0) < 0.015);
  }
}

TEST_CASE("generate_pairs at the default size") {
  const Taxonomy tax = wide_taxonomy(40, 12);
  const PairDataset d = generate_pairs(tax, kDefaultSubsetSize, kDefaultPairCount, 42);
  CHECK(d.train.size() == 1970);
  CHECK(d.test.size() == 1970);
  for (Split split : {Split::kTrain, Split::kTest}) {
    const auto& pairs = d.pairs(split);
    const auto good = std::count_if(pairs.begin(), pairs.end(),
                                    [](const MatchPair& p) { return p.label == MatchLabel::kGood; });
    CHECK(good == 985);
  }
}

TEST_CASE("generate_pairs minimal case") {
  const Taxonomy tax({make_occupation("A", {"a1", "a2", "a3", "a4"}),
                      make_occupation("B", {"b1", "b2", "b3", "b4"})},
                     "");
  const PairDataset d = generate_pairs(tax, 5, 4, 1);
  REQUIRE(d.train.size() == 2);
  REQUIRE(d.test.size() == 2);
  for (Split split : {Split::kTrain, Split::kTest}) {
    int good = 0;
    for (const MatchPair& p : d.pairs(split)) {
      if (p.label == MatchLabel::kGood) {
        ++good;
      } else {
        CHECK(p.left.occupation_code != p.right.occupation_code);
      }
    }
    CHECK(good == 1);
  }
}

TEST_CASE("generate_pairs errors") {
  const Taxonomy tax = wide_taxonomy(3, 4);
  CHECK_THROWS_AS(generate_pairs(tax, 5, 6, 1), UsageError);
  CHECK_THROWS_AS(generate_pairs(tax, 0, 8, 1), UsageError);
  const Taxonomy thin({make_occupation("A", {"a1", "a2"}), make_occupation("B", {"b1"})}, "");
  CHECK_THROWS_AS(generate_pairs(thin, 5, 8, 1), DataError);
}

TEST_CASE("dataset invariants hold across seeds and shapes") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n_occ = 2 + static_cast<int>(seed % 7);
    const int skills = 2 + static_cast<int>(seed % 9);
    const Taxonomy tax = wide_taxonomy(n_occ, skills);
    const int k = 1 + static_cast<int>(seed % 6);
    const PairDataset d = generate_pairs(tax, k, 4 * (5 + seed), seed);
    const SkillSplit split = split_skills(tax, seed);

    std::map<std::string, std::set<std::string>> train_skills, test_skills;
    for (Split s : {Split::kTrain, Split::kTest}) {
      std::size_t good = 0;
      for (const MatchPair& p : d.pairs(s)) {
        // good <=> same occupation, checked exhaustively.
        CHECK((p.label == MatchLabel::kGood) ==
              (p.left.occupation_code == p.right.occupation_code));
        if (p.label == MatchLabel::kGood) ++good;
        for (const SkillProfile* prof : {&p.left, &p.right}) {
          CHECK(prof->skill_texts.size() >= 1);
          CHECK(prof->skill_texts.size() <= static_cast<std::size_t>(k));
          const auto& halves = split.by_code.at(prof->occupation_code);
          const auto& pool = s == Split::kTrain ? halves.train : halves.test;
          for (const auto& skill : prof->skill_texts) {
            CHECK(std::find(pool.begin(), pool.end(), skill) != pool.end());
            (s == Split::kTrain ? train_skills : test_skills)[prof->occupation_code].insert(skill);
          }
          std::string joined;
          for (std::size_t i = 0; i < prof->skill_texts.size(); ++i) {
            joined += (i ? " " : "") + prof->skill_texts[i];
          }
          CHECK(prof->text == joined);
        }
      }
      CHECK(2 * good == d.pairs(s).size());
    }
    for (const auto& [code, skills_seen] : train_skills) {
      for (const auto& s : test_skills[code]) CHECK(skills_seen.count(s) == 0);
    }
    CHECK(serialize(generate_pairs(tax, k, 4 * (5 + seed), seed)) == serialize(d));
  }
}

TEST_CASE("pairs JSONL round trip") {
  const Taxonomy tax = wide_taxonomy(5, 8);
  const PairDataset d = generate_pairs(tax, 3, 16, 5);
  const auto dir = testing::make_temp_dir("pairs");
  testing::write_file(dir / "pairs.jsonl", serialize(d));
  const PairDataset back = read_pairs_jsonl(dir / "pairs.jsonl");
  CHECK(back.train == d.train);
  CHECK(back.test == d.test);

  const std::string first_line = serialize(d).substr(0, serialize(d).find('\n'));
  CHECK(first_line.rfind("{\"left_code\":", 0) == 0);
  CHECK(first_line.find("\"split\":\"train\"") != std::string::npos);

  testing::write_file(dir / "bad.jsonl",
                      "{\"left_code\":\"A\",\"left_skills\":[\"x\"],\"right_code\":\"B\","
                      "\"right_skills\":[\"y\"],\"label\":\"good\",\"split\":\"train\"}\n");
  CHECK_THROWS_AS(read_pairs_jsonl(dir / "bad.jsonl"), DataError);
}

TEST_CASE("pair side keys") {
  CHECK(pair_side_key(Split::kTrain, 17, true) == "train/17/left");
  CHECK(pair_side_key(Split::kTest, 0, false) == "test/0/right");
}

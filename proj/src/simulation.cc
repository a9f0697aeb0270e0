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

#include "skillmatch/simulation.h"

#include <algorithm>
#include <numeric>

#include "skillmatch/error.h"
#include "skillmatch/text_util.h"

namespace skillmatch {

std::string_view label_name(MatchLabel label) {
  return label == MatchLabel::kGood ? "good" : "bad";
}

std::string_view split_name(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

std::string pair_side_key(Split split, std::size_t index, bool left) {
  return std::string(split_name(split)) + "/" + std::to_string(index) +
         (left ? "/left" : "/right");
}

SkillSplit split_skills(const Taxonomy& taxonomy, std::uint64_t seed) {
  Rng rng = make_substream(seed, "split");
  SkillSplit result;
  for (const Occupation& occ : taxonomy.occupations()) {
    if (occ.skills.size() < 2) {
      ++result.excluded;
      continue;
    }
    std::vector<std::string> shuffled = occ.skills;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::size_t train_size = (shuffled.size() + 1) / 2;
    SkillHalves halves;
    halves.train.assign(shuffled.begin(), shuffled.begin() + train_size);
    halves.test.assign(shuffled.begin() + train_size, shuffled.end());
    result.by_code.emplace(occ.code, std::move(halves));
  }
  return result;
}

SkillProfile sample_profile(std::string_view occupation_code,
                            std::span<const std::string> pool, int k, Rng& rng) {
  if (pool.empty()) {
    throw DataError("cannot sample a profile for '" + std::string(occupation_code) +
                    "' from an empty skill pool");
  }
  if (k < 1) throw UsageError("subset size k must be >= 1");
  const std::size_t take = std::min<std::size_t>(k, pool.size());

  // Partial Fisher-Yates over indices.
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  SkillProfile profile;
  profile.occupation_code = std::string(occupation_code);
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
    profile.skill_texts.push_back(pool[idx[i]]);
  }
  profile.text = join_words(profile.skill_texts);
  return profile;
}

SkillProfile sample_profile(const Occupation& occ, int k, Rng& rng) {
  return sample_profile(occ.code, occ.skills, k, rng);
}

namespace {

std::vector<MatchPair> make_split_pairs(
    const std::vector<std::pair<std::string_view, const std::vector<std::string>*>>& pools,
    int k, std::size_t count, Rng& rng) {
  std::vector<MatchPair> pairs;
  pairs.reserve(count);
  std::uniform_int_distribution<std::size_t> any(0, pools.size() - 1);
  std::uniform_int_distribution<std::size_t> other(0, pools.size() - 2);
  for (std::size_t i = 0; i < count / 2; ++i) {
    const auto& [code, pool] = pools[any(rng)];
    MatchPair pair;
    pair.left = sample_profile(code, *pool, k, rng);
    pair.right = sample_profile(code, *pool, k, rng);
    pair.label = MatchLabel::kGood;
    pairs.push_back(std::move(pair));
  }
  for (std::size_t i = 0; i < count / 2; ++i) {
    const std::size_t a = any(rng);
    std::size_t b = other(rng);
    if (b >= a) ++b;
    MatchPair pair;
    pair.left = sample_profile(pools[a].first, *pools[a].second, k, rng);
    pair.right = sample_profile(pools[b].first, *pools[b].second, k, rng);
    pair.label = MatchLabel::kBad;
    pairs.push_back(std::move(pair));
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  return pairs;
}

}  // namespace

PairDataset generate_pairs(const Taxonomy& taxonomy, int k, std::size_t n_pairs,
                           std::uint64_t seed) {
  if (k < 1) throw UsageError("subset size k must be >= 1");
  if (n_pairs == 0 || n_pairs % 4 != 0) {
    throw UsageError("n_pairs must be a positive multiple of 4 (got " +
                     std::to_string(n_pairs) + ")");
  }
  const SkillSplit split = split_skills(taxonomy, seed);
  if (split.by_code.size() < 2) {
    throw DataError("need at least 2 occupations with >= 2 skills, found " +
                    std::to_string(split.by_code.size()));
  }

  std::vector<std::pair<std::string_view, const std::vector<std::string>*>> train_pools;
  std::vector<std::pair<std::string_view, const std::vector<std::string>*>> test_pools;
  for (const auto& [code, halves] : split.by_code) {
    train_pools.emplace_back(code, &halves.train);
    test_pools.emplace_back(code, &halves.test);
  }

  Rng rng = make_substream(seed, "pairs");
  PairDataset data;
  data.seed = seed;
  data.k = k;
  data.excluded_occupations = split.excluded;
  data.train = make_split_pairs(train_pools, k, n_pairs / 2, rng);
  data.test = make_split_pairs(test_pools, k, n_pairs / 2, rng);
  return data;
}

}  // namespace skillmatch

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

#ifndef SKILLMATCH_SIMULATION_H_
#define SKILLMATCH_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skillmatch/rng.h"
#include "skillmatch/taxonomy.h"

namespace skillmatch {

inline constexpr int kDefaultSubsetSize = 5;
inline constexpr std::size_t kDefaultPairCount = 3940;

// A candidate's or vacancy's skill description: k statements of one
// occupation concatenated into one string.
struct SkillProfile {
  std::string occupation_code;
  std::vector<std::string> skill_texts;
  std::string text;

  bool operator==(const SkillProfile&) const = default;
};

enum class MatchLabel { kGood, kBad };

std::string_view label_name(MatchLabel label);

struct MatchPair {
  SkillProfile left;
  SkillProfile right;
  MatchLabel label = MatchLabel::kBad;

  bool operator==(const MatchPair&) const = default;
};

enum class Split { kTrain, kTest };

std::string_view split_name(Split split);

// Identifier of one side of a pair, e.g. "train/17/left". External sentence
// encoders key their vectors by this string.
std::string pair_side_key(Split split, std::size_t index, bool left);

struct SkillHalves {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

struct SkillSplit {
  std::map<std::string, SkillHalves, std::less<>> by_code;
  // Occupations with fewer than two skills.
  std::size_t excluded = 0;
};

// Shuffles every occupation's skills (substream "split") and cuts them into
// halves of size ceil(n/2) (train) and floor(n/2) (test).
SkillSplit split_skills(const Taxonomy& taxonomy, std::uint64_t seed);

// Draws min(k, |pool|) statements uniformly without replacement. The profile
// text keeps the draw order.
SkillProfile sample_profile(std::string_view occupation_code,
                            std::span<const std::string> pool, int k, Rng& rng);
SkillProfile sample_profile(const Occupation& occ, int k, Rng& rng);

struct PairDataset {
  std::vector<MatchPair> train;
  std::vector<MatchPair> test;
  std::uint64_t seed = 0;
  int k = kDefaultSubsetSize;
  std::size_t excluded_occupations = 0;

  const std::vector<MatchPair>& pairs(Split split) const {
    return split == Split::kTrain ? train : test;
  }
};

// Balanced good/bad pairs in both splits; n_pairs must be divisible by 4.
// Train-side profiles draw only from each occupation's train half, test-side
// profiles only from its test half.
PairDataset generate_pairs(const Taxonomy& taxonomy, int k, std::size_t n_pairs,
                           std::uint64_t seed);

}  // namespace skillmatch

#endif  // SKILLMATCH_SIMULATION_H_

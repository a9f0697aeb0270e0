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

#ifndef SKILLMATCH_TAXONOMY_H_
#define SKILLMATCH_TAXONOMY_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skillmatch {

struct Occupation {
  std::string code;
  std::string title;
  // Distinct, non-blank statements in canonical (byte-lexicographic) order.
  std::vector<std::string> skills;
  // Fraction of female workers; absent when no labour statistics exist.
  std::optional<double> female_share;

  bool operator==(const Occupation&) const = default;
};

// Immutable set of occupations keyed by code. Construction validates every
// invariant and throws DataError on violation.
class Taxonomy {
 public:
  Taxonomy(std::vector<Occupation> occupations, std::string provenance);

  // Sorted by code.
  std::span<const Occupation> occupations() const { return occupations_; }
  std::size_t size() const { return occupations_.size(); }
  const std::string& provenance() const { return provenance_; }

  const Occupation* find(std::string_view code) const;
  // Throws DataError naming the code when absent.
  const Occupation& at(std::string_view code) const;

  std::size_t labeled_count() const;
  std::size_t skill_count() const;

  // Equality ignores provenance.
  bool operator==(const Taxonomy& other) const {
    return occupations_ == other.occupations_;
  }

 private:
  std::vector<Occupation> occupations_;
  std::string provenance_;
};

// Rows dropped or merged during loading. Every drop is counted here.
struct LoadWarnings {
  std::size_t gender_unknown_code = 0;    // gender row for an unlisted code
  std::size_t skill_unknown_code = 0;     // skill row for an unlisted code
  std::size_t duplicate_skill = 0;        // same statement twice for a code
  std::size_t blank_skill = 0;            // empty or whitespace-only statement
  std::size_t occupation_without_skills = 0;

  std::size_t total() const;
  // One human-readable line per nonzero counter.
  std::vector<std::string> describe() const;
};

struct LoadedTaxonomy {
  Taxonomy taxonomy;
  LoadWarnings warnings;
};

// Joins occupations.csv (code,title), skills.csv (code,skill_text) and the
// optional gender.csv (code,female_share). Row order in any file does not
// affect the result.
LoadedTaxonomy load_taxonomy(const std::filesystem::path& occupations_file,
                             const std::filesystem::path& skills_file,
                             const std::optional<std::filesystem::path>& gender_file);

// All skill statements of an occupation joined by single spaces.
std::string occupation_skill_text(const Occupation& occ);

}  // namespace skillmatch

#endif  // SKILLMATCH_TAXONOMY_H_

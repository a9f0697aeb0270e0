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

#include "skillmatch/taxonomy.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "skillmatch/csv.h"
#include "skillmatch/error.h"
#include "skillmatch/text_util.h"

namespace skillmatch {

namespace {

bool valid_share(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

std::string where(const std::filesystem::path& file, const CsvRecord& rec) {
  return file.string() + ":" + std::to_string(rec.line);
}

}  // namespace

Taxonomy::Taxonomy(std::vector<Occupation> occupations, std::string provenance)
    : occupations_(std::move(occupations)), provenance_(std::move(provenance)) {
  std::sort(occupations_.begin(), occupations_.end(),
            [](const Occupation& a, const Occupation& b) { return a.code < b.code; });
  for (size_t i = 0; i < occupations_.size(); ++i) {
    const Occupation& occ = occupations_[i];
    if (is_blank(occ.code)) throw DataError("occupation with empty code");
    if (i > 0 && occupations_[i - 1].code == occ.code) {
      throw DataError("duplicate occupation code '" + occ.code + "'");
    }
    std::set<std::string_view> seen;
    for (const std::string& s : occ.skills) {
      if (is_blank(s)) {
        throw DataError("occupation '" + occ.code + "' has a blank skill");
      }
      if (!seen.insert(s).second) {
        throw DataError("occupation '" + occ.code + "' lists skill '" + s +
                        "' twice");
      }
    }
    if (occ.female_share && !valid_share(*occ.female_share)) {
      throw DataError("occupation '" + occ.code +
                      "': female_share outside [0,1]");
    }
  }
  if (occupations_.size() < 2) {
    throw DataError("taxonomy needs at least 2 occupations, found " +
                    std::to_string(occupations_.size()));
  }
}

const Occupation* Taxonomy::find(std::string_view code) const {
  auto it = std::lower_bound(
      occupations_.begin(), occupations_.end(), code,
      [](const Occupation& o, std::string_view c) { return o.code < c; });
  if (it == occupations_.end() || it->code != code) return nullptr;
  return &*it;
}

const Occupation& Taxonomy::at(std::string_view code) const {
  const Occupation* occ = find(code);
  if (occ == nullptr) {
    throw DataError("unknown occupation code '" + std::string(code) + "'");
  }
  return *occ;
}

std::size_t Taxonomy::labeled_count() const {
  return std::count_if(occupations_.begin(), occupations_.end(),
                       [](const Occupation& o) { return o.female_share.has_value(); });
}

std::size_t Taxonomy::skill_count() const {
  std::size_t n = 0;
  for (const Occupation& o : occupations_) n += o.skills.size();
  return n;
}

std::size_t LoadWarnings::total() const {
  return gender_unknown_code + skill_unknown_code + duplicate_skill +
         blank_skill + occupation_without_skills;
}

std::vector<std::string> LoadWarnings::describe() const {
  std::vector<std::string> out;
  auto add = [&out](std::size_t n, const char* what) {
    if (n > 0) out.push_back(std::to_string(n) + " " + what);
  };
  add(gender_unknown_code, "gender rows ignored (code not in occupations file)");
  add(skill_unknown_code, "skill rows ignored (code not in occupations file)");
  add(duplicate_skill, "duplicate skill rows merged");
  add(blank_skill, "blank skill rows ignored");
  add(occupation_without_skills, "occupations dropped (no skills)");
  return out;
}

LoadedTaxonomy load_taxonomy(const std::filesystem::path& occupations_file,
                             const std::filesystem::path& skills_file,
                             const std::optional<std::filesystem::path>& gender_file) {
  LoadWarnings warnings;
  std::map<std::string, Occupation, std::less<>> by_code;

  for (const CsvRecord& rec : read_csv_table(occupations_file, {"code", "title"})) {
    std::string code(trim(rec.fields[0]));
    if (code.empty()) {
      throw DataError(where(occupations_file, rec) + ": empty occupation code");
    }
    Occupation occ;
    occ.code = code;
    occ.title = std::string(trim(rec.fields[1]));
    if (!by_code.emplace(code, std::move(occ)).second) {
      throw DataError(where(occupations_file, rec) +
                      ": duplicate occupation code '" + code + "'");
    }
  }

  std::map<std::string, std::set<std::string>, std::less<>> skills;
  for (const CsvRecord& rec : read_csv_table(skills_file, {"code", "skill_text"})) {
    std::string_view code = trim(rec.fields[0]);
    std::string_view text = trim(rec.fields[1]);
    if (by_code.find(code) == by_code.end()) {
      ++warnings.skill_unknown_code;
      continue;
    }
    if (text.empty()) {
      ++warnings.blank_skill;
      continue;
    }
    auto& bucket = skills[std::string(code)];
    if (!bucket.emplace(text).second) ++warnings.duplicate_skill;
  }

  if (gender_file) {
    std::set<std::string, std::less<>> seen;
    for (const CsvRecord& rec :
         read_csv_table(*gender_file, {"code", "female_share"})) {
      std::string_view code = trim(rec.fields[0]);
      double share = 0.0;
      if (!parse_real(rec.fields[1], share)) {
        throw DataError(where(*gender_file, rec) + ": cannot parse female_share '" +
                        rec.fields[1] + "'");
      }
      if (!valid_share(share)) {
        throw DataError(where(*gender_file, rec) + ": female_share " +
                        std::string(trim(rec.fields[1])) +
                        " is outside [0,1]");
      }
      if (!seen.emplace(code).second) {
        throw DataError(where(*gender_file, rec) + ": duplicate gender row for '" +
                        std::string(code) + "'");
      }
      auto it = by_code.find(code);
      if (it == by_code.end()) {
        ++warnings.gender_unknown_code;
        continue;
      }
      it->second.female_share = share;
    }
  }

  std::vector<Occupation> occupations;
  occupations.reserve(by_code.size());
  for (auto& [code, occ] : by_code) {
    auto it = skills.find(code);
    if (it == skills.end() || it->second.empty()) {
      ++warnings.occupation_without_skills;
      continue;
    }
    occ.skills.assign(it->second.begin(), it->second.end());
    occupations.push_back(std::move(occ));
  }

  std::string provenance = "occupations=" + occupations_file.filename().string() +
                           " skills=" + skills_file.filename().string();
  if (gender_file) provenance += " gender=" + gender_file->filename().string();
  return LoadedTaxonomy{Taxonomy(std::move(occupations), std::move(provenance)),
                        warnings};
}

std::string occupation_skill_text(const Occupation& occ) {
  if (occ.skills.empty()) {
    throw DataError("occupation '" + occ.code + "' has no skills");
  }
  return join_words(occ.skills);
}

}  // namespace skillmatch

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

#ifndef SKILLMATCH_TEXT_UTIL_H_
#define SKILLMATCH_TEXT_UTIL_H_

#include <span>
#include <string>
#include <string_view>

namespace skillmatch {

std::string_view trim(std::string_view s);

bool is_blank(std::string_view s);

// Joins with a single space.
std::string join_words(std::span<const std::string> parts);

// Shortest decimal representation that round-trips to the same double.
std::string format_real(double value);

// Strict full-string parse; no leading/trailing garbage, finite or not.
bool parse_real(std::string_view s, double& out);

}  // namespace skillmatch

#endif  // SKILLMATCH_TEXT_UTIL_H_

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

#ifndef SKILLMATCH_RNG_H_
#define SKILLMATCH_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace skillmatch {

using Rng = std::mt19937_64;

// Independent generator for one named stage ("split", "pairs", "audit", ...)
// so that toggling one stage never shifts the draws of another.
Rng make_substream(std::uint64_t seed, std::string_view stream);

}  // namespace skillmatch

#endif  // SKILLMATCH_RNG_H_

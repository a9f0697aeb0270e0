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

#ifndef SKILLMATCH_ERROR_H_
#define SKILLMATCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace skillmatch {

// Base for all toolkit failures. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad flags, bad config values, unknown names. Exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or semantically invalid input data. Exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace skillmatch

#endif  // SKILLMATCH_ERROR_H_

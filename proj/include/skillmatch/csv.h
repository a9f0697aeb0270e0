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

#ifndef SKILLMATCH_CSV_H_
#define SKILLMATCH_CSV_H_

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace skillmatch {

struct CsvRecord {
  std::vector<std::string> fields;
  // 1-based line on which the record starts.
  std::size_t line = 0;
};

// RFC-4180 reader: quoted fields, doubled-quote escapes, embedded newlines,
// CRLF or LF line endings. A leading UTF-8 byte-order mark is skipped.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source_name);

  // Returns false at end of input. Throws DataError on an unterminated quote
  // or stray characters after a closing quote.
  bool next(CsvRecord& record);

  const std::string& source_name() const { return source_name_; }

 private:
  int get();
  int peek();

  std::istream& in_;
  std::string source_name_;
  std::size_t line_ = 1;
  bool first_ = true;
};

// Reads a whole file, checks the header matches `header` exactly (after
// trimming) and that every data row has the same arity. Blank lines are
// skipped. Errors name the file and line.
std::vector<CsvRecord> read_csv_table(const std::filesystem::path& path,
                                      std::initializer_list<std::string_view> header);

// Quotes a field only when needed.
std::string csv_field(std::string_view value);

}  // namespace skillmatch

#endif  // SKILLMATCH_CSV_H_

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

#include "skillmatch/csv.h"

#include <fstream>

#include "skillmatch/error.h"
#include "skillmatch/text_util.h"

namespace skillmatch {

CsvReader::CsvReader(std::istream& in, std::string source_name)
    : in_(in), source_name_(std::move(source_name)) {}

int CsvReader::get() {
  int c = in_.get();
  if (c == '\n') ++line_;
  return c;
}

int CsvReader::peek() { return in_.peek(); }

bool CsvReader::next(CsvRecord& record) {
  if (first_) {
    first_ = false;
    if (peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(in_.gcount() == 3 && static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        throw DataError(source_name_ + ":1: unexpected bytes at file start");
      }
    }
  }
  record.fields.clear();
  if (peek() == std::char_traits<char>::eof()) return false;
  record.line = line_;

  std::string field;
  bool quoted = false;
  for (;;) {
    int c = get();
    if (quoted) {
      if (c == std::char_traits<char>::eof()) {
        throw DataError(source_name_ + ":" + std::to_string(record.line) +
                        ": unterminated quoted field");
      }
      if (c == '"') {
        if (peek() == '"') {
          get();
          field.push_back('"');
        } else {
          quoted = false;
          int n = peek();
          if (n != ',' && n != '\n' && n != '\r' &&
              n != std::char_traits<char>::eof()) {
            throw DataError(source_name_ + ":" + std::to_string(line_) +
                            ": characters after closing quote");
          }
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == std::char_traits<char>::eof() || c == '\n') {
      record.fields.push_back(std::move(field));
      return true;
    }
    if (c == '\r') {
      if (peek() == '\n') get();
      record.fields.push_back(std::move(field));
      return true;
    }
    if (c == ',') {
      record.fields.push_back(std::move(field));
      field.clear();
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else {
      field.push_back(static_cast<char>(c));
    }
  }
}

std::vector<CsvRecord> read_csv_table(
    const std::filesystem::path& path,
    std::initializer_list<std::string_view> header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  CsvReader reader(in, path.string());

  CsvRecord rec;
  bool have_header = false;
  while (reader.next(rec)) {
    if (rec.fields.size() == 1 && is_blank(rec.fields[0])) continue;
    have_header = true;
    break;
  }
  if (!have_header) throw DataError(path.string() + ": empty file, no header");
  bool ok = rec.fields.size() == header.size();
  if (ok) {
    size_t i = 0;
    for (std::string_view expected : header) {
      if (trim(rec.fields[i++]) != expected) ok = false;
    }
  }
  if (!ok) {
    std::string want;
    for (std::string_view h : header) {
      if (!want.empty()) want += ",";
      want += h;
    }
    throw DataError(path.string() + ":" + std::to_string(rec.line) +
                    ": expected header '" + want + "'");
  }

  std::vector<CsvRecord> rows;
  while (reader.next(rec)) {
    if (rec.fields.size() == 1 && is_blank(rec.fields[0])) continue;
    if (rec.fields.size() != header.size()) {
      throw DataError(path.string() + ":" + std::to_string(rec.line) +
                      ": expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(rec.fields.size()));
    }
    rows.push_back(rec);
  }
  return rows;
}

std::string csv_field(std::string_view value) {
  bool needs_quotes = value.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace skillmatch

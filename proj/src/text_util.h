// src/text_util.h

// Copyright 2026 The sqa-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SQALAB_TEXT_UTIL_H_
#define SQALAB_TEXT_UTIL_H_

// Internal helpers shared by the CSV/TSV readers and writers.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace sqalab {

std::vector<std::string_view> SplitFields(std::string_view line, char sep);

bool ParseInt(std::string_view text, long long *value);
bool ParseUint64(std::string_view text, std::uint64_t *value);
/// Accepts finite and non-finite spellings; callers check finiteness.
bool ParseDouble(std::string_view text, double *value);

/// Shortest decimal text that reads back to the identical double.
std::string FormatShortest(double value);
std::string FormatFixed(double value, int decimals);
std::string FormatSignificant(double value, int digits);

/// Reads LF or CRLF lines, dropping a leading UTF-8 byte-order mark.
class LineReader {
 public:
  explicit LineReader(std::istream &in) : in_(in) {}

  bool Next(std::string *line);
  /// 1-based number of the line last returned.
  std::size_t line_number() const { return line_number_; }

 private:
  std::istream &in_;
  std::size_t line_number_ = 0;
};

std::ifstream OpenInput(const std::filesystem::path &path);
std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path &path);

}  // namespace sqalab

#endif  // SQALAB_TEXT_UTIL_H_

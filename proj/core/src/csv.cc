// Copyright 2026 The privdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privdiff/csv.h"

#include <charconv>
#include <cmath>

namespace privdiff {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void CsvRecord::AppendRaw(std::string_view field) {
  if (!first_) line_.push_back(',');
  first_ = false;
  line_.append(field);
}

CsvRecord& CsvRecord::Add(double value) {
  AppendRaw(FormatDouble(value));
  return *this;
}

CsvRecord& CsvRecord::Add(int64_t value) {
  AppendRaw(std::to_string(value));
  return *this;
}

CsvRecord& CsvRecord::Add(uint64_t value) {
  AppendRaw(std::to_string(value));
  return *this;
}

CsvRecord& CsvRecord::Add(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    AppendRaw(text);
    return *this;
  }
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  AppendRaw(quoted);
  return *this;
}

}  // namespace privdiff

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

#ifndef PRIVDIFF_CSV_H_
#define PRIVDIFF_CSV_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace privdiff {

// Shortest decimal string that round-trips to the same double ('.' decimal
// separator regardless of locale).
std::string FormatDouble(double value);

// Builds one RFC-4180 record. Fields containing commas, quotes or line
// breaks are quoted; records end in CRLF.
class CsvRecord {
 public:
  CsvRecord& Add(double value);
  CsvRecord& Add(int64_t value);
  CsvRecord& Add(uint64_t value);
  CsvRecord& Add(int value) { return Add(static_cast<int64_t>(value)); }
  CsvRecord& Add(std::string_view text);
  CsvRecord& Add(const char* text) { return Add(std::string_view(text)); }

  void WriteTo(std::ostream& out) const { out << line_ << "\r\n"; }
  const std::string& line() const { return line_; }

 private:
  void AppendRaw(std::string_view field);
  std::string line_;
  bool first_ = true;
};

}  // namespace privdiff

#endif  // PRIVDIFF_CSV_H_

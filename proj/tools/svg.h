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

#ifndef PRIVDIFF_TOOLS_SVG_H_
#define PRIVDIFF_TOOLS_SVG_H_

#include <ostream>
#include <span>
#include <string>

namespace privdiff::tools {

struct Series {
  const char* label;
  const char* color;
  std::span<const double> y;
};

// Two-axis line chart. All series share `x`.
void WriteLineChartSvg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, std::span<const double> x,
                       std::span<const Series> series, std::ostream& out);

}  // namespace privdiff::tools

#endif  // PRIVDIFF_TOOLS_SVG_H_

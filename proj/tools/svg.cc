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

#include "tools/svg.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"

namespace privdiff::tools {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;

}  // namespace

void WriteLineChartSvg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, std::span<const double> x,
                       std::span<const Series> series, std::ostream& out) {
  double x_max = x.empty() ? 1.0 : x.back();
  double x_min = x.empty() ? 0.0 : x.front();
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  double y_max = 0.0;
  for (const Series& s : series) {
    for (double v : s.y) y_max = std::max(y_max, v);
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  y_max *= 1.05;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double v) { return kTop + plot_h - v / y_max * plot_h; };

  out << absl::StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << absl::StrFormat("<text x=\"%g\" y=\"24\" font-size=\"14\">%s</text>\n",
                         kLeft, title);
  // Axes.
  out << absl::StrFormat(
      "<polyline fill=\"none\" stroke=\"black\" points=\"%.2f,%.2f %.2f,%.2f "
      "%.2f,%.2f\"/>\n",
      kLeft, kTop, kLeft, kTop + plot_h, kLeft + plot_w, kTop + plot_h);
  for (int k = 0; k <= 4; ++k) {
    const double xv = x_min + (x_max - x_min) * k / 4.0;
    const double yv = y_max * k / 4.0;
    out << absl::StrFormat(
        "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%.4g</text>\n",
        px(xv), kTop + plot_h + 18, xv);
    out << absl::StrFormat(
        "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.4g</text>\n",
        kLeft - 6, py(yv) + 4, yv);
  }
  out << absl::StrFormat(
      "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%s</text>\n",
      kLeft + plot_w / 2, kHeight - 10, x_label);
  out << absl::StrFormat(
      "<text x=\"16\" y=\"%.2f\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 16 %.2f)\">%s</text>\n",
      kTop + plot_h / 2, kTop + plot_h / 2, y_label);

  for (size_t s = 0; s < series.size(); ++s) {
    out << absl::StrFormat("<polyline fill=\"none\" stroke=\"%s\" points=\"",
                           series[s].color);
    const size_t count = std::min(x.size(), series[s].y.size());
    for (size_t i = 0; i < count; ++i) {
      out << absl::StrFormat("%s%.2f,%.2f", i == 0 ? "" : " ", px(x[i]),
                             py(series[s].y[i]));
    }
    out << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(s + 1);
    out << absl::StrFormat(
        "<text x=\"%.2f\" y=\"%.2f\" fill=\"%s\" text-anchor=\"end\">%s</text>\n",
        kLeft + plot_w - 4, ly, series[s].color, series[s].label);
  }
  out << "</svg>\n";
}

}  // namespace privdiff::tools

// Copyright 2026 The qnoise Authors
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

#ifndef QNOISE_SVG_PLOT_H
#define QNOISE_SVG_PLOT_H

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qnoise {

/// Minimal static line/scatter chart written straight to SVG text.
class SvgPlot {
 public:
    enum class Style { kSolid, kDashed, kDashDot, kDots };

    SvgPlot(std::string title, std::string x_label, std::string y_label);

    SvgPlot &log_x(bool on = true);
    SvgPlot &x_range(double lo, double hi);
    SvgPlot &y_range(double lo, double hi);

    /// Non-finite points (and non-positive x on a log axis) are skipped.
    SvgPlot &series(std::string label, std::span<const double> x, std::span<const double> y, std::string color,
                    Style style = Style::kSolid);
    SvgPlot &vertical_line(double x, std::string color, Style style = Style::kDashDot);

    std::string render(int width = 720, int height = 480) const;
    void save(const std::string &path, int width = 720, int height = 480) const;

 private:
    struct Series {
        std::string label;
        std::vector<double> x;
        std::vector<double> y;
        std::string color;
        Style style;
    };
    struct Marker {
        double x;
        std::string color;
        Style style;
    };

    bool usable_x(double x) const;

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    bool log_x_ = false;
    std::optional<std::pair<double, double>> x_range_;
    std::optional<std::pair<double, double>> y_range_;
    std::vector<Series> series_;
    std::vector<Marker> markers_;
};

}  // namespace qnoise

#endif  // QNOISE_SVG_PLOT_H

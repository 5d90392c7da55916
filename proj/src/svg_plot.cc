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

#include "qnoise/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace qnoise {

namespace {

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dash_attr(SvgPlot::Style style) {
    switch (style) {
        case SvgPlot::Style::kDashed: return " stroke-dasharray=\"8,5\"";
        case SvgPlot::Style::kDashDot: return " stroke-dasharray=\"8,4,2,4\"";
        default: return "";
    }
}

// Round tick spacing: 1, 2 or 5 times a power of ten.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10 * mag;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

SvgPlot &SvgPlot::log_x(bool on) {
    log_x_ = on;
    return *this;
}

SvgPlot &SvgPlot::x_range(double lo, double hi) {
    x_range_ = {lo, hi};
    return *this;
}

SvgPlot &SvgPlot::y_range(double lo, double hi) {
    y_range_ = {lo, hi};
    return *this;
}

bool SvgPlot::usable_x(double x) const {
    return std::isfinite(x) && (!log_x_ || x > 0);
}

SvgPlot &SvgPlot::series(std::string label, std::span<const double> x, std::span<const double> y, std::string color,
                         Style style) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("series x and y lengths differ");
    }
    series_.push_back({std::move(label), {x.begin(), x.end()}, {y.begin(), y.end()}, std::move(color), style});
    return *this;
}

SvgPlot &SvgPlot::vertical_line(double x, std::string color, Style style) {
    markers_.push_back({x, std::move(color), style});
    return *this;
}

std::string SvgPlot::render(int width, int height) const {
    const double left = 80, right = 20, top = 40, bottom = 60;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto &s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) {
                continue;
            }
            const double tx = log_x_ ? std::log10(s.x[i]) : s.x[i];
            x_lo = std::min(x_lo, tx);
            x_hi = std::max(x_hi, tx);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (x_range_) {
        x_lo = log_x_ ? std::log10(x_range_->first) : x_range_->first;
        x_hi = log_x_ ? std::log10(x_range_->second) : x_range_->second;
    }
    if (y_range_) {
        y_lo = y_range_->first;
        y_hi = y_range_->second;
    }
    if (!std::isfinite(x_lo) || !std::isfinite(x_hi)) {
        x_lo = 0;
        x_hi = 1;
    }
    if (!std::isfinite(y_lo) || !std::isfinite(y_hi)) {
        y_lo = 0;
        y_hi = 1;
    }
    if (x_hi <= x_lo) {
        x_hi = x_lo + 1;
    }
    if (y_hi <= y_lo) {
        y_hi = y_lo + 1;
    }
    if (!y_range_) {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }

    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * ph; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        width, height, width, height);
    out += fmt::format("<text x=\"{:.1f}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"16\">{}</text>\n",
                       left + pw / 2, escape(title_));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
                       left, top, pw, ph);

    // Ticks.
    const double xs = log_x_ ? 1.0 : nice_step(x_hi - x_lo, 6);
    for (double t = std::ceil(x_lo / xs) * xs; t <= x_hi + 1e-9 * xs; t += xs) {
        const std::string label = log_x_ ? fmt::format("1e{}", static_cast<int>(std::lround(t))) : fmt::format("{:g}", t);
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n",
                           px(t), top + ph, top + ph + 5);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                           "font-size=\"12\">{}</text>\n",
                           px(t), top + ph + 20, label);
    }
    const double ys = nice_step(y_hi - y_lo, 6);
    for (double t = std::ceil(y_lo / ys) * ys; t <= y_hi + 1e-9 * ys; t += ys) {
        const double v = std::abs(t) < 1e-12 * ys ? 0.0 : t;
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n",
                           left - 5, py(v), left);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
                           "font-size=\"12\">{:g}</text>\n",
                           left - 8, py(v) + 4, v);
    }
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"14\">{}</text>\n",
                       left + pw / 2, static_cast<double>(height) - 15, escape(x_label_));
    out += fmt::format("<text x=\"20\" y=\"{0:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"14\" transform=\"rotate(-90 20 {0:.1f})\">{1}</text>\n",
                       top + ph / 2, escape(y_label_));

    out += fmt::format("<clipPath id=\"plot\"><rect x=\"{}\" y=\"{}\" width=\"{:.1f}\" height=\"{:.1f}\"/></clipPath>\n",
                       left, top, pw, ph);
    out += "<g clip-path=\"url(#plot)\">\n";
    for (const auto &s : series_) {
        if (s.style == Style::kDots) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) {
                    continue;
                }
                const double tx = log_x_ ? std::log10(s.x[i]) : s.x[i];
                out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n", px(tx), py(s.y[i]),
                                   s.color);
            }
            continue;
        }
        std::string points;
        auto flush = [&]() {
            if (!points.empty()) {
                out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n",
                                   s.color, dash_attr(s.style), points);
                points.clear();
            }
        };
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            const double tx = log_x_ ? std::log10(s.x[i]) : s.x[i];
            points += fmt::format("{:.2f},{:.2f} ", px(tx), py(s.y[i]));
        }
        flush();
    }
    for (const auto &m : markers_) {
        if (!usable_x(m.x)) {
            continue;
        }
        const double x = px(log_x_ ? std::log10(m.x) : m.x);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2:.1f}\" stroke=\"{3}\"{4}/>\n", x, top,
                           top + ph, m.color, dash_attr(m.style));
    }
    out += "</g>\n";

    // Legend.
    double ly = top + 18;
    for (const auto &s : series_) {
        if (s.label.empty()) {
            continue;
        }
        const double lx = left + pw - 170;
        if (s.style == Style::kDots) {
            out += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3\" fill=\"{}\"/>\n", lx + 12, ly - 4, s.color);
        } else {
            out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" "
                               "stroke-width=\"1.5\"{}/>\n",
                               lx, ly - 4, lx + 24, ly - 4, s.color, dash_attr(s.style));
        }
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
                           lx + 30, ly, escape(s.label));
        ly += 16;
    }
    out += "</svg>\n";
    return out;
}

void SvgPlot::save(const std::string &path, int width, int height) const {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path));
    }
    out << render(width, height);
}

}  // namespace qnoise

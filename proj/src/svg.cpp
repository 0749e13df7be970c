/*
   Copyright 2026 The ghchart Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ghchart/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <fmt/format.h>

namespace ghchart {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;

// Linear map from data range to pixel range.
struct Axis {
    double lo, hi, px_lo, px_hi;
    double operator()(double v) const {
        if (hi == lo) return (px_lo + px_hi) / 2;
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

std::pair<double, double> padded(double lo, double hi) {
    if (hi == lo) return {lo - 1.0, hi + 1.0};
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

void header(std::string& out, double w, double h, const RenderSpec& spec) {
    fmt::format_to(std::back_inserter(out),
                   "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                   "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
                   "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n"
                   "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
                   "<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                   w, h, w, h, w / 2, xml_escape(spec.title));
}

void frame(std::string& out, const Axis& x, const Axis& y, const std::string& x_label,
           const std::string& y_label) {
    fmt::format_to(std::back_inserter(out),
                   "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
                   "fill=\"none\" stroke=\"black\"/>\n",
                   x.px_lo, y.px_hi, x.px_hi - x.px_lo, y.px_lo - y.px_hi);
    for (int k = 0; k <= 4; ++k) {
        const double v = y.lo + (y.hi - y.lo) * k / 4.0;
        fmt::format_to(std::back_inserter(out),
                       "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.4g}</text>\n",
                       x.px_lo - 5, y(v) + 4, v);
    }
    fmt::format_to(std::back_inserter(out),
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n"
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
                   "transform=\"rotate(-90 {:.2f} {:.2f})\">{}</text>\n",
                   (x.px_lo + x.px_hi) / 2, y.px_lo + 35, xml_escape(x_label), x.px_lo - 50,
                   (y.px_lo + y.px_hi) / 2, x.px_lo - 50, (y.px_lo + y.px_hi) / 2,
                   xml_escape(y_label));
}

void polyline(std::string& out, const std::vector<std::pair<double, double>>& pts,
              std::string_view attrs) {
    out += "<polyline fill=\"none\" ";
    out += attrs;
    out += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        fmt::format_to(std::back_inserter(out), "{:.2f},{:.2f}", pts[i].first, pts[i].second);
    }
    out += "\"/>\n";
}

}  // namespace

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render_chart_svg(const ChartReport& report, const RenderSpec& spec) {
    const auto m = report.points.size();
    double lo = 0, hi = 1;
    if (m > 0) {
        lo = hi = report.points.front().value;
        for (const auto& pt : report.points) {
            lo = std::min({lo, pt.value, pt.limits.lcl});
            hi = std::max({hi, pt.value, pt.limits.ucl});
        }
    }
    const auto [ylo, yhi] = padded(lo, hi);
    const Axis x{0.5, static_cast<double>(m) + 0.5, kLeft, kWidth - kRight};
    const Axis y{ylo, yhi, kHeight - kBottom, kTop};

    std::string out;
    header(out, kWidth, kHeight, spec);
    frame(out, x, y, spec.x_label.empty() ? "subgroup" : spec.x_label,
          spec.y_label.empty() ? std::string(report.kind == ChartKind::h ? "subgroup mean"
                                                                           : "subgroup total")
                               : spec.y_label);

    std::map<std::int64_t, std::vector<const ChartPoint*>> by_size;
    for (const auto& pt : report.points) by_size[pt.limits.size].push_back(&pt);

    struct LimitStyle {
        const char* name;
        double SubgroupLimits::*field;
        const char* stroke;
        const char* dash;
    };
    static constexpr LimitStyle styles[] = {
        {"ucl", &SubgroupLimits::ucl, "#c0392b", "6,3"},
        {"cl", &SubgroupLimits::cl, "#2c3e50", "none"},
        {"lcl", &SubgroupLimits::lcl, "#c0392b", "6,3"},
    };
    for (const auto& [size, pts] : by_size) {
        for (const auto& style : styles) {
            std::vector<std::pair<double, double>> line;
            for (const auto* pt : pts) {
                const double k = static_cast<double>(pt->limits.index + 1);
                const double level = y(pt->limits.*style.field);
                line.emplace_back(x(k - 0.5), level);
                line.emplace_back(x(k + 0.5), level);
            }
            polyline(out, line,
                     fmt::format("class=\"limit {}\" data-n=\"{}\" stroke=\"{}\" "
                                 "stroke-dasharray=\"{}\"",
                                 style.name, size, style.stroke, style.dash));
        }
    }

    std::vector<std::pair<double, double>> series;
    for (const auto& pt : report.points) {
        series.emplace_back(x(static_cast<double>(pt.limits.index + 1)), y(pt.value));
    }
    if (!series.empty()) polyline(out, series, "class=\"series\" stroke=\"#7f8c8d\"");
    for (std::size_t k = 0; k < report.points.size(); ++k) {
        const auto& pt = report.points[k];
        const bool flagged = pt.status != PointStatus::in_control;
        fmt::format_to(std::back_inserter(out),
                       "<circle class=\"{}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{}\" fill=\"{}\"/>\n",
                       flagged ? "point flagged" : "point", series[k].first, series[k].second,
                       flagged ? 5 : 3, flagged ? "#e74c3c" : "#2c3e50");
    }
    out += "</svg>\n";
    return out;
}

std::string render_curves_svg(std::span<const CurveRow> rows, const RenderSpec& spec) {
    constexpr double panel_w = 420;
    constexpr double w = 2 * panel_w + 40;
    constexpr double h = 460;

    std::set<std::int64_t> Ns;
    double bias_lo = 0, bias_hi = 0, mse_hi = 0;
    for (const auto& r : rows) {
        Ns.insert(r.N);
        bias_lo = std::min(bias_lo, r.bias);
        bias_hi = std::max(bias_hi, r.bias);
        mse_hi = std::max(mse_hi, r.mse);
    }
    const auto [blo, bhi] = padded(bias_lo, bias_hi);
    const auto [mlo, mhi] = padded(0.0, mse_hi);

    std::string out;
    header(out, w, h, spec);
    const Axis bias_x{0.0, 1.0, kLeft, panel_w - 10};
    const Axis bias_y{blo, bhi, h - 80, kTop};
    const Axis mse_x{0.0, 1.0, panel_w + kLeft, w - kRight};
    const Axis mse_y{mlo, mhi, h - 80, kTop};
    frame(out, bias_x, bias_y, spec.x_label.empty() ? "p" : spec.x_label, "bias");
    frame(out, mse_x, mse_y, spec.x_label.empty() ? "p" : spec.x_label, "MSE");

    static constexpr const char* colors[] = {"#2980b9", "#27ae60", "#c0392b"};
    static constexpr const char* dashes[] = {"none", "6,3", "2,2", "8,3,2,3"};

    std::size_t n_index = 0;
    for (std::int64_t N : Ns) {
        for (std::size_t e = 0; e < std::size(kAllEstimators); ++e) {
            std::vector<std::pair<double, double>> bias_pts, mse_pts;
            for (const auto& r : rows) {
                if (r.N != N || r.estimator != kAllEstimators[e]) continue;
                bias_pts.emplace_back(bias_x(r.p), bias_y(r.bias));
                mse_pts.emplace_back(mse_x(r.p), mse_y(r.mse));
            }
            const auto attrs = fmt::format(
                "class=\"curve {}\" data-n=\"{}\" stroke=\"{}\" stroke-dasharray=\"{}\"",
                to_string(kAllEstimators[e]), N, colors[e], dashes[n_index % std::size(dashes)]);
            polyline(out, bias_pts, attrs);
            polyline(out, mse_pts, attrs);
        }
        ++n_index;
    }

    // Legend below the panels.
    double lx = kLeft;
    for (std::size_t e = 0; e < std::size(kAllEstimators); ++e) {
        fmt::format_to(std::back_inserter(out),
                       "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
                       "stroke=\"{}\"/><text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
                       lx, h - 20, lx + 25, h - 20, colors[e], lx + 30, h - 16,
                       to_string(kAllEstimators[e]));
        lx += 100;
    }
    n_index = 0;
    for (std::int64_t N : Ns) {
        fmt::format_to(std::back_inserter(out),
                       "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
                       "stroke=\"black\" stroke-dasharray=\"{}\"/>"
                       "<text x=\"{:.1f}\" y=\"{:.1f}\">N={}</text>\n",
                       lx, h - 20, lx + 25, h - 20, dashes[n_index % std::size(dashes)], lx + 30,
                       h - 16, N);
        lx += 80;
        ++n_index;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace ghchart

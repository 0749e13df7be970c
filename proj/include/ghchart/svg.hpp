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

#pragma once

#include <span>
#include <string>

#include "ghchart/charts.hpp"
#include "ghchart/moments.hpp"

namespace ghchart {

struct RenderSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
};

// Control chart: for every distinct subgroup size, one polyline per limit
// (class "limit ucl|cl|lcl", data-n = size) stepping across the subgroups of
// that size; plotted values as circles, out-of-control ones with class
// "flagged". Output is byte-deterministic.
std::string render_chart_svg(const ChartReport& report, const RenderSpec& spec);

// Two panels (bias, MSE) against p with one polyline per (estimator, N).
std::string render_curves_svg(std::span<const CurveRow> rows, const RenderSpec& spec);

std::string xml_escape(std::string_view text);

}  // namespace ghchart

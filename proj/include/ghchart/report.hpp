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

// Serialization of estimates, chart reports, theory curves and simulation
// tables. Machine formats (JSON, CSV) carry full double precision; the
// human table mode rounds to 5 decimals.

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ghchart/charts.hpp"
#include "ghchart/estimators.hpp"
#include "ghchart/moments.hpp"
#include "ghchart/montecarlo.hpp"

namespace ghchart {

nlohmann::ordered_json to_json(const EstimateReport& r);
nlohmann::ordered_json to_json(const ChartReport& r, std::span<const std::string> subgroup_ids);
nlohmann::ordered_json to_json(const MomentReport& r);

void write_chart_csv(std::ostream& out, const ChartReport& r,
                     std::span<const std::string> subgroup_ids);

// Columns N,p,estimator,bias,mse.
void write_curves_csv(std::ostream& out, std::span<const CurveRow> rows);
nlohmann::ordered_json curves_to_json(std::span<const CurveRow> rows);

// Columns p,sizes,estimator,bias,mse,se,mse_se,iterations,seed and, with
// theory, theory_bias,theory_mse,z_bias,z_mse.
void write_simulation_csv(std::ostream& out, std::span<const TableCell> cells, bool with_theory);
nlohmann::ordered_json simulation_to_json(std::span<const TableCell> cells, bool with_theory);
// Bias and MSE blocks laid out p-major with one column per size config.
void write_simulation_table(std::ostream& out, std::span<const TableCell> cells,
                            bool with_theory);

std::string format_sizes(std::span<const std::int64_t> sizes);

// "0.1,0.3,0.5" or "start:stop:step" (inclusive stop).
std::vector<double> parse_p_grid(std::string_view spec);
// "2,5,10"
std::vector<std::int64_t> parse_int_list(std::string_view spec);
// "1,1;2,3;5,5"
std::vector<std::vector<std::int64_t>> parse_size_configs(std::string_view spec);
// "3", "3.09", "american" (3) or "british" (3.09).
double parse_multiplier(std::string_view spec);

}  // namespace ghchart

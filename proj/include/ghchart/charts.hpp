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

// Shewhart-type g and h charts for shifted geometric counts with unequal
// subgroup sizes n_k. With mean mu and variance sigma^2 of one count:
//
//   h chart (subgroup mean X_k):      CL = mu,       half-width g sqrt(sigma^2 / n_k)
//   g chart (subgroup total n_k X_k): CL = n_k mu,   half-width g sqrt(n_k sigma^2)
//
// Estimated bases use mu = X (grand mean) and
//   ml:  sigma^2 = (X - a)(X - a + 1)
//   mvu: sigma^2 = N/(N+1) (X - a)(X - a + 1)
// plug_mvu substitutes p_mvu into mu(p), sigma^2(p); it is kept for
// comparison only since those limits are not MVU.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghchart/estimators.hpp"
#include "ghchart/geometric.hpp"

namespace ghchart {

enum class ChartKind { h, g };
enum class ChartBasis { ml, mvu, known, plug_mvu };
enum class PointStatus { in_control, above_ucl, below_lcl };

inline constexpr double kAmericanStandard = 3.0;
inline constexpr double kBritishStandard = 3.09;

std::string_view to_string(ChartKind k);
std::string_view to_string(ChartBasis b);
std::string_view to_string(PointStatus s);
ChartKind parse_chart_kind(std::string_view s);
ChartBasis parse_chart_basis(std::string_view s);

struct ChartConfig {
    ChartKind kind = ChartKind::h;
    ChartBasis basis = ChartBasis::ml;
    double multiplier = kAmericanStandard;
    std::optional<GeometricModel> known_model;  // required iff basis == known
    bool clamp_lcl = true;
    // Accept p = 1 in limits_known and return zero-width limits.
    bool allow_zero_width = false;

    void validate() const;
};

struct LimitTriple {
    double ucl;
    double cl;
    double lcl;
};

struct SubgroupLimits {
    std::size_t index;  // 0-based subgroup position
    std::int64_t size;  // n_k
    double ucl;
    double cl;
    double lcl;
};

struct ChartLimits {
    ChartKind kind;
    ChartBasis basis;
    double multiplier;
    std::vector<SubgroupLimits> entries;
    std::vector<std::string> warnings;

    // "subgroup_mean" for h charts, "subgroup_total" for g charts.
    std::string_view statistic() const;
};

struct ChartPoint {
    SubgroupLimits limits;
    double value;
    PointStatus status;
};

struct ChartReport {
    ChartKind kind;
    ChartBasis basis;
    double multiplier;
    std::vector<ChartPoint> points;
    std::vector<std::string> warnings;
};

// Limits from a known (p, a). Throws std::domain_error for p = 1 unless
// config.allow_zero_width.
LimitTriple limits_known(const GeometricModel& model, std::int64_t n_k, const ChartConfig& config);

// Per-subgroup limits for the data's subgroup shape. The known basis reads
// config.known_model; other bases estimate from the data. Degenerate data
// (every count equal to a) yields zero-width limits and a warning.
ChartLimits h_limits(const StudyData& data, const ChartConfig& config);
ChartLimits g_limits(const StudyData& data, const ChartConfig& config);
// Dispatches on config.kind.
ChartLimits chart_limits(const StudyData& data, const ChartConfig& config);

// Strict exceedance flags a point; a value equal to a limit is in control.
// Throws std::invalid_argument if limits were built for another shape.
ChartReport classify(const StudyData& data, const ChartLimits& limits);

}  // namespace ghchart

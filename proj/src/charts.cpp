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

#include "ghchart/charts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace ghchart {

std::string_view to_string(ChartKind k) { return k == ChartKind::h ? "h" : "g"; }

std::string_view to_string(ChartBasis b) {
    switch (b) {
        case ChartBasis::ml: return "ml";
        case ChartBasis::mvu: return "mvu";
        case ChartBasis::known: return "known";
        case ChartBasis::plug_mvu: return "plug_mvu";
    }
    return "?";
}

std::string_view to_string(PointStatus s) {
    switch (s) {
        case PointStatus::in_control: return "in_control";
        case PointStatus::above_ucl: return "above_ucl";
        case PointStatus::below_lcl: return "below_lcl";
    }
    return "?";
}

ChartKind parse_chart_kind(std::string_view s) {
    if (s == "h") return ChartKind::h;
    if (s == "g") return ChartKind::g;
    throw std::invalid_argument(fmt::format("unknown chart kind '{}' (expected h or g)", s));
}

ChartBasis parse_chart_basis(std::string_view s) {
    if (s == "ml") return ChartBasis::ml;
    if (s == "mvu") return ChartBasis::mvu;
    if (s == "known") return ChartBasis::known;
    if (s == "plug_mvu") return ChartBasis::plug_mvu;
    throw std::invalid_argument(
        fmt::format("unknown chart basis '{}' (expected ml, mvu, known or plug_mvu)", s));
}

void ChartConfig::validate() const {
    if (!(multiplier > 0.0) || !std::isfinite(multiplier)) {
        throw std::invalid_argument("chart multiplier must be a positive real");
    }
    if ((basis == ChartBasis::known) != known_model.has_value()) {
        throw std::invalid_argument("a known model is required exactly when basis is 'known'");
    }
}

std::string_view ChartLimits::statistic() const {
    return kind == ChartKind::h ? "subgroup_mean" : "subgroup_total";
}

namespace {

// mean and variance of a single count under the chosen basis.
struct PlugIn {
    double mu;
    double sigma2;
};

LimitTriple make_limits(const PlugIn& est, std::int64_t shift, std::int64_t n_k,
                        const ChartConfig& config) {
    const auto n = static_cast<double>(n_k);
    LimitTriple t{};
    double half_width = 0.0;
    double floor_value = 0.0;
    if (config.kind == ChartKind::h) {
        t.cl = est.mu;
        half_width = config.multiplier * std::sqrt(est.sigma2 / n);
        floor_value = static_cast<double>(shift);
    } else {
        t.cl = n * est.mu;
        half_width = config.multiplier * std::sqrt(n * est.sigma2);
        floor_value = n * static_cast<double>(shift);
    }
    t.ucl = t.cl + half_width;
    t.lcl = t.cl - half_width;
    if (config.clamp_lcl) t.lcl = std::max(t.lcl, floor_value);
    return t;
}

PlugIn plug_p(double p, std::int64_t shift) {
    return {(1.0 - p) / p + static_cast<double>(shift), (1.0 - p) / (p * p)};
}

ChartLimits build(const StudyData& data, const ChartConfig& config) {
    config.validate();
    ChartLimits out{config.kind, config.basis, config.multiplier, {}, {}};

    PlugIn est{};
    std::int64_t shift = data.shift();
    switch (config.basis) {
        case ChartBasis::ml:
            est = {mu_hat(data), sigma2_ml(data)};
            break;
        case ChartBasis::mvu:
            est = {mu_hat(data), sigma2_mvu(data)};
            break;
        case ChartBasis::plug_mvu:
            est = plug_p(p_mvu(data), shift);
            break;
        case ChartBasis::known:
            shift = config.known_model->shift();
            if (config.known_model->degenerate() && !config.allow_zero_width) {
                throw std::domain_error("known model has p = 1; limits have zero width");
            }
            est = plug_p(config.known_model->p(), shift);
            break;
    }
    if (config.basis != ChartBasis::known && data.degenerate()) {
        out.warnings.push_back(
            "degenerate data: every count equals the shift, limits have zero width");
    }

    out.entries.reserve(data.subgroup_count());
    for (std::size_t k = 0; k < data.subgroup_count(); ++k) {
        const auto n_k = data.subgroup_size(k);
        const auto t = make_limits(est, shift, n_k, config);
        out.entries.push_back({k, n_k, t.ucl, t.cl, t.lcl});
    }
    return out;
}

}  // namespace

LimitTriple limits_known(const GeometricModel& model, std::int64_t n_k, const ChartConfig& config) {
    if (!(config.multiplier > 0.0)) throw std::invalid_argument("multiplier must be positive");
    if (n_k < 1) throw std::invalid_argument("subgroup size must be >= 1");
    if (model.degenerate() && !config.allow_zero_width) {
        throw std::domain_error("p = 1 gives degenerate zero-width limits");
    }
    return make_limits(plug_p(model.p(), model.shift()), model.shift(), n_k, config);
}

ChartLimits h_limits(const StudyData& data, const ChartConfig& config) {
    ChartConfig c = config;
    c.kind = ChartKind::h;
    return build(data, c);
}

ChartLimits g_limits(const StudyData& data, const ChartConfig& config) {
    ChartConfig c = config;
    c.kind = ChartKind::g;
    return build(data, c);
}

ChartLimits chart_limits(const StudyData& data, const ChartConfig& config) {
    return build(data, config);
}

ChartReport classify(const StudyData& data, const ChartLimits& limits) {
    if (limits.entries.size() != data.subgroup_count()) {
        throw std::invalid_argument(fmt::format("limits cover {} subgroups but data has {}",
                                                limits.entries.size(), data.subgroup_count()));
    }
    ChartReport report{limits.kind, limits.basis, limits.multiplier, {}, limits.warnings};
    report.points.reserve(limits.entries.size());
    for (std::size_t k = 0; k < limits.entries.size(); ++k) {
        const auto& e = limits.entries[k];
        if (e.size != data.subgroup_size(k)) {
            throw std::invalid_argument(
                fmt::format("subgroup {} has size {} but limits were built for size {}", k + 1,
                            data.subgroup_size(k), e.size));
        }
        const double value = limits.kind == ChartKind::h
                                 ? data.subgroup_mean(k)
                                 : static_cast<double>(data.subgroup_total(k));
        PointStatus status = PointStatus::in_control;
        if (value > e.ucl) {
            status = PointStatus::above_ucl;
        } else if (value < e.lcl) {
            status = PointStatus::below_lcl;
        }
        report.points.push_back({e, value, status});
    }
    return report;
}

}  // namespace ghchart

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

#include "ghchart/report.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace ghchart {

using nlohmann::ordered_json;

namespace {

ordered_json estimator_stats(const EmpiricalStats& s) {
    return {{"bias", s.bias}, {"mse", s.mse}, {"bias_se", s.bias_se}, {"mse_se", s.mse_se}};
}

ordered_json moments_json(const EstimatorMoments& m) {
    return {{"mean", m.mean},
            {"bias", m.bias},
            {"second_moment", m.second_moment},
            {"variance", m.variance},
            {"mse", m.mse}};
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string_view subgroup_label(std::span<const std::string> ids, std::size_t k,
                                std::string& fallback) {
    if (k < ids.size()) return ids[k];
    fallback = std::to_string(k + 1);
    return fallback;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        throw std::invalid_argument(fmt::format("invalid {} '{}'", what, text));
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

ordered_json to_json(const EstimateReport& r) {
    ordered_json j;
    j["N"] = r.N;
    j["shift"] = r.shift;
    j["p_ml"] = r.p_ml;
    j["p_b"] = r.p_b;
    if (r.p_mvu) {
        j["p_mvu"] = *r.p_mvu;
    } else {
        j["p_mvu"] = nullptr;
        j["p_mvu_unavailable"] = r.p_mvu_unavailable;
    }
    j["mu_hat"] = r.mu_hat;
    j["sigma2_ml"] = r.sigma2_ml;
    j["sigma2_mvu"] = r.sigma2_mvu;
    j["degenerate"] = r.degenerate;
    j["ordering_holds"] = r.ordering_holds;
    return j;
}

ordered_json to_json(const ChartReport& r, std::span<const std::string> subgroup_ids) {
    ordered_json j;
    j["kind"] = to_string(r.kind);
    j["basis"] = to_string(r.basis);
    j["multiplier"] = r.multiplier;
    j["statistic"] = r.kind == ChartKind::h ? "subgroup_mean" : "subgroup_total";
    j["warnings"] = r.warnings;
    ordered_json points = ordered_json::array();
    std::string fallback;
    for (const auto& pt : r.points) {
        points.push_back({{"subgroup", subgroup_label(subgroup_ids, pt.limits.index, fallback)},
                          {"index", pt.limits.index + 1},
                          {"n", pt.limits.size},
                          {"ucl", pt.limits.ucl},
                          {"cl", pt.limits.cl},
                          {"lcl", pt.limits.lcl},
                          {"value", pt.value},
                          {"status", to_string(pt.status)}});
    }
    j["subgroups"] = std::move(points);
    return j;
}

ordered_json to_json(const MomentReport& r) {
    return {{"N", r.N},
            {"p", r.p},
            {"p_b", moments_json(r.b)},
            {"p_mvu", moments_json(r.mvu)},
            {"p_ml", moments_json(r.ml)}};
}

void write_chart_csv(std::ostream& out, const ChartReport& r,
                     std::span<const std::string> subgroup_ids) {
    out << "subgroup,index,n,ucl,cl,lcl,value,status\n";
    std::string fallback;
    for (const auto& pt : r.points) {
        fmt::print(out, "{},{},{},{},{},{},{},{}\n",
                   csv_field(subgroup_label(subgroup_ids, pt.limits.index, fallback)),
                   pt.limits.index + 1, pt.limits.size, pt.limits.ucl, pt.limits.cl,
                   pt.limits.lcl, pt.value, to_string(pt.status));
    }
}

void write_curves_csv(std::ostream& out, std::span<const CurveRow> rows) {
    out << "N,p,estimator,bias,mse\n";
    for (const auto& r : rows) {
        fmt::print(out, "{},{},{},{},{}\n", r.N, r.p, to_string(r.estimator), r.bias, r.mse);
    }
}

ordered_json curves_to_json(std::span<const CurveRow> rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"N", r.N},
                       {"p", r.p},
                       {"estimator", to_string(r.estimator)},
                       {"bias", r.bias},
                       {"mse", r.mse}});
    }
    return arr;
}

std::string format_sizes(std::span<const std::int64_t> sizes) {
    return fmt::format("{}", fmt::join(sizes, ","));
}

void write_simulation_csv(std::ostream& out, std::span<const TableCell> cells, bool with_theory) {
    out << "p,sizes,estimator,bias,mse,se,mse_se,iterations,seed";
    if (with_theory) out << ",theory_bias,theory_mse,z_bias,z_mse";
    out << '\n';
    for (const auto& cell : cells) {
        const auto& res = cell.result;
        const std::string sizes = csv_field(format_sizes(res.config.group_sizes));
        TheoryComparison theory{};
        if (with_theory) theory = compare_theory(res);
        for (Estimator e : kAllEstimators) {
            const auto& s = res[e];
            fmt::print(out, "{},{},{},{},{},{},{},{},{}", res.config.p, sizes, to_string(e),
                       s.bias, s.mse, s.bias_se, s.mse_se, res.config.iterations,
                       res.config.seed);
            if (with_theory) {
                const auto& t = theory[e];
                fmt::print(out, ",{},{},{},{}", t.theory_bias, t.theory_mse, t.z_bias, t.z_mse);
            }
            out << '\n';
        }
    }
}

ordered_json simulation_to_json(std::span<const TableCell> cells, bool with_theory) {
    ordered_json arr = ordered_json::array();
    for (const auto& cell : cells) {
        const auto& res = cell.result;
        ordered_json j;
        j["p"] = res.config.p;
        j["sizes"] = res.config.group_sizes;
        j["shift"] = res.config.shift;
        j["iterations"] = res.config.iterations;
        j["seed"] = res.config.seed;
        j["p_b"] = estimator_stats(res.b);
        j["p_mvu"] = estimator_stats(res.mvu);
        j["p_ml"] = estimator_stats(res.ml);
        if (with_theory) {
            const auto theory = compare_theory(res);
            for (Estimator e : kAllEstimators) {
                const auto& t = theory[e];
                auto& slot = j[std::string(to_string(e))];
                slot["theory_bias"] = t.theory_bias;
                slot["theory_mse"] = t.theory_mse;
                slot["z_bias"] = t.z_bias;
                slot["z_mse"] = t.z_mse;
            }
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

void write_simulation_table(std::ostream& out, std::span<const TableCell> cells,
                            bool with_theory) {
    if (cells.empty()) return;
    // Reassemble the (p, size) grid from cell coordinates.
    std::map<std::size_t, std::map<std::size_t, const SimResult*>> grid;
    std::map<std::size_t, std::string> size_labels;
    for (const auto& c : cells) {
        grid[c.p_index][c.size_index] = &c.result;
        size_labels[c.size_index] = "(" + format_sizes(c.result.config.group_sizes) + ")";
    }

    auto block = [&](std::string_view title, auto value_of) {
        fmt::print(out, "{} (I={}, shift={})\n", title, cells.front().result.config.iterations,
                   cells.front().result.config.shift);
        fmt::print(out, "{:<8}{:<7}", "", "");
        for (const auto& [si, label] : size_labels) fmt::print(out, "{:>12}", label);
        out << '\n';
        for (const auto& [pi, row] : grid) {
            bool first = true;
            for (Estimator e : kAllEstimators) {
                const std::string p_label =
                    first ? fmt::format("p={}", row.begin()->second->config.p) : "";
                fmt::print(out, "{:<8}{:<7}", p_label, to_string(e));
                for (const auto& [si, label] : size_labels) {
                    const auto it = row.find(si);
                    if (it == row.end()) {
                        fmt::print(out, "{:>12}", "-");
                    } else {
                        fmt::print(out, "{:>12.5f}", value_of(*it->second, e));
                    }
                }
                out << '\n';
                first = false;
            }
        }
        out << '\n';
    };

    block("Empirical biases", [](const SimResult& r, Estimator e) { return r[e].bias; });
    block("Empirical MSEs", [](const SimResult& r, Estimator e) { return r[e].mse; });
    if (with_theory) {
        block("Theoretical biases", [](const SimResult& r, Estimator e) {
            return compare_theory(r)[e].theory_bias;
        });
        block("Theoretical MSEs", [](const SimResult& r, Estimator e) {
            return compare_theory(r)[e].theory_mse;
        });
        block("Bias z-scores (empirical - theory) / se", [](const SimResult& r, Estimator e) {
            return compare_theory(r)[e].z_bias;
        });
        block("MSE z-scores (empirical - theory) / se", [](const SimResult& r, Estimator e) {
            return compare_theory(r)[e].z_mse;
        });
    }
}

std::vector<double> parse_p_grid(std::string_view spec) {
    std::vector<double> grid;
    const auto colon = split(spec, ':');
    if (colon.size() == 3) {
        const double start = parse_number<double>(colon[0], "grid start");
        const double stop = parse_number<double>(colon[1], "grid stop");
        const double step = parse_number<double>(colon[2], "grid step");
        if (!(step > 0.0) || stop < start) {
            throw std::invalid_argument("grid needs step > 0 and stop >= start");
        }
        const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::int64_t k = 0; k < count; ++k) {
            // Round away representation drift so 0.01 + 6 * 0.01 prints as 0.07.
            grid.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
        }
    } else if (colon.size() == 1) {
        for (auto part : split(spec, ',')) grid.push_back(parse_number<double>(part, "p value"));
    } else {
        throw std::invalid_argument(fmt::format("invalid p grid '{}'", spec));
    }
    for (double p : grid) {
        if (!(p > 0.0 && p < 1.0)) {
            throw std::invalid_argument(fmt::format("grid value {} is outside (0, 1)", p));
        }
    }
    return grid;
}

std::vector<std::int64_t> parse_int_list(std::string_view spec) {
    std::vector<std::int64_t> values;
    for (auto part : split(spec, ',')) values.push_back(parse_number<std::int64_t>(part, "integer"));
    return values;
}

std::vector<std::vector<std::int64_t>> parse_size_configs(std::string_view spec) {
    std::vector<std::vector<std::int64_t>> configs;
    for (auto part : split(spec, ';')) {
        auto sizes = parse_int_list(part);
        for (auto s : sizes) {
            if (s < 1) throw std::invalid_argument("subgroup sizes must be positive");
        }
        configs.push_back(std::move(sizes));
    }
    return configs;
}

double parse_multiplier(std::string_view spec) {
    spec = trim(spec);
    if (spec == "american") return kAmericanStandard;
    if (spec == "british") return kBritishStandard;
    const double g = parse_number<double>(spec, "multiplier");
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw std::invalid_argument("multiplier must be a positive real");
    }
    return g;
}

}  // namespace ghchart

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

#include "ghchart/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ghchart/charts.hpp"
#include "ghchart/csv_input.hpp"
#include "ghchart/estimators.hpp"
#include "ghchart/moments.hpp"
#include "ghchart/montecarlo.hpp"
#include "ghchart/report.hpp"
#include "ghchart/special.hpp"
#include "ghchart/svg.hpp"

namespace ghchart {

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success, 1 validation or usage error, 2 numerical failure "
    "(series non-convergence).";

// Writes to --out when given, otherwise to stdout.
void emit(const std::string& path, std::ostream& out, const std::string& content) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + path + "'");
    file << content;
}

struct EstimateOptions {
    std::string csv;
    std::int64_t shift = 0;
};

struct LimitsOptions {
    std::string csv;
    std::string kind = "h";
    std::string basis = "ml";
    std::string multiplier = "3";
    std::int64_t shift = 0;
    bool no_clamp = false;
    std::optional<double> known_p;
    std::string format = "json";
    std::string out;
    std::string title;
};

struct TheoryOptions {
    std::string N_list = "2,5,10";
    std::string p_grid = "0.01:0.99:0.01";
    std::string format = "csv";
    std::string out;
    std::string title = "Theoretical bias and MSE of p_b, p_mvu, p_ml";
};

struct SimulateOptions {
    std::string sizes = "1,1;2,3;5,5;10,10";
    std::string p_grid = "0.1,0.3,0.5,0.7,0.9";
    std::int64_t iterations = kDefaultIterations;
    std::uint64_t seed = kDefaultMasterSeed;
    std::int64_t shift = 0;
    unsigned workers = 1;
    bool compare_theory = false;
    std::string format = "table";
    std::string out;
};

void cmd_estimate(const EstimateOptions& o, std::ostream& out) {
    const auto study = read_study_file(o.csv, o.shift);
    out << to_json(estimate(study.data)).dump(2) << '\n';
}

void cmd_limits(const LimitsOptions& o, std::ostream& out, std::ostream& err) {
    const auto study = read_study_file(o.csv, o.shift);
    ChartConfig config;
    config.kind = parse_chart_kind(o.kind);
    config.basis = parse_chart_basis(o.basis);
    config.multiplier = parse_multiplier(o.multiplier);
    config.clamp_lcl = !o.no_clamp;
    if (config.basis == ChartBasis::known) {
        if (!o.known_p) throw ValidationError("--basis known requires --p");
        config.known_model = GeometricModel(*o.known_p, o.shift);
    } else if (o.known_p) {
        throw ValidationError("--p is only valid with --basis known");
    }

    const auto report = classify(study.data, chart_limits(study.data, config));
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';

    std::ostringstream buf;
    if (o.format == "json") {
        buf << to_json(report, study.subgroup_ids).dump(2) << '\n';
    } else if (o.format == "csv") {
        write_chart_csv(buf, report, study.subgroup_ids);
    } else if (o.format == "svg") {
        RenderSpec spec;
        spec.title = o.title.empty() ? fmt::format("{} chart ({} basis, g = {})", o.kind,
                                                   o.basis, config.multiplier)
                                     : o.title;
        buf << render_chart_svg(report, spec);
    } else {
        throw ValidationError("unknown format '" + o.format + "'");
    }
    emit(o.out, out, buf.str());
}

void cmd_theory(const TheoryOptions& o, std::ostream& out) {
    const auto Ns = parse_int_list(o.N_list);
    for (auto N : Ns) {
        if (N < 2) throw ValidationError("--N values must be >= 2");
    }
    const auto grid = parse_p_grid(o.p_grid);
    const auto rows = theory_curves(Ns, grid);

    std::ostringstream buf;
    if (o.format == "csv") {
        write_curves_csv(buf, rows);
    } else if (o.format == "json") {
        buf << curves_to_json(rows).dump(2) << '\n';
    } else if (o.format == "svg") {
        buf << render_curves_svg(rows, {o.title, "p", ""});
    } else {
        throw ValidationError("unknown format '" + o.format + "'");
    }
    emit(o.out, out, buf.str());
}

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
    const auto sizes = parse_size_configs(o.sizes);
    const auto grid = parse_p_grid(o.p_grid);
    if (o.format != "table" && o.format != "csv" && o.format != "json") {
        throw ValidationError("unknown format '" + o.format + "'");
    }
    const auto cells = run_table(sizes, grid, o.iterations, o.seed, o.shift, o.workers);

    std::ostringstream buf;
    if (o.format == "csv") {
        write_simulation_csv(buf, cells, o.compare_theory);
    } else if (o.format == "json") {
        buf << simulation_to_json(cells, o.compare_theory).dump(2) << '\n';
    } else {
        fmt::print(buf, "master seed {}\n\n", o.seed);
        write_simulation_table(buf, cells, o.compare_theory);
    }
    emit(o.out, out, buf.str());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ghchart: estimation, exact moments, simulation and g/h control charts for "
                 "shifted geometric data",
                 "ghchart"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    EstimateOptions est;
    auto* estimate_cmd = app.add_subcommand("estimate", "Estimate p, mu and sigma^2 from a CSV");
    estimate_cmd->add_option("csv", est.csv, "CSV with header subgroup_id,count")->required();
    estimate_cmd->add_option("--shift", est.shift, "Known location shift a")->check(CLI::NonNegativeNumber);

    LimitsOptions lim;
    auto* limits_cmd = app.add_subcommand("limits", "Per-subgroup g or h chart limits");
    limits_cmd->add_option("csv", lim.csv, "CSV with header subgroup_id,count")->required();
    limits_cmd->add_option("--kind", lim.kind, "Chart kind: h (means) or g (totals)");
    limits_cmd->add_option("--basis", lim.basis, "ml, mvu, known or plug_mvu");
    limits_cmd->add_option("--g", lim.multiplier,
                           "Limit multiplier: 3, 3.09, american, british or any positive real");
    limits_cmd->add_option("--shift", lim.shift, "Known location shift a")->check(CLI::NonNegativeNumber);
    limits_cmd->add_flag("--no-clamp", lim.no_clamp, "Keep negative lower limits");
    limits_cmd->add_option("--p", lim.known_p, "True p for --basis known");
    limits_cmd->add_option("--format", lim.format, "json, csv or svg");
    limits_cmd->add_option("--out", lim.out, "Output path (default stdout)");
    limits_cmd->add_option("--title", lim.title, "SVG title");

    TheoryOptions th;
    auto* theory_cmd = app.add_subcommand("theory", "Exact bias and MSE curves");
    theory_cmd->add_option("--N", th.N_list, "Comma-separated pooled sample sizes (>= 2)");
    theory_cmd->add_option("--p-grid", th.p_grid, "start:stop:step or comma list inside (0,1)");
    theory_cmd->add_option("--format", th.format, "csv, json or svg");
    theory_cmd->add_option("--out", th.out, "Output path (default stdout)");
    theory_cmd->add_option("--title", th.title, "SVG title");

    SimulateOptions sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo bias/MSE table");
    simulate_cmd->add_option("--sizes", sim.sizes, "Subgroup size configs, e.g. 1,1;2,3");
    simulate_cmd->add_option("--p-grid", sim.p_grid, "start:stop:step or comma list inside (0,1)");
    simulate_cmd->add_option("--iterations", sim.iterations, "Iterations per cell");
    simulate_cmd->add_option("--seed", sim.seed, "Master seed");
    simulate_cmd->add_option("--shift", sim.shift, "Location shift a")->check(CLI::NonNegativeNumber);
    simulate_cmd->add_option("--workers", sim.workers, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_flag("--compare-theory", sim.compare_theory,
                           "Append exact values and z-scores");
    simulate_cmd->add_option("--format", sim.format, "table, csv or json");
    simulate_cmd->add_option("--out", sim.out, "Output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*estimate_cmd) cmd_estimate(est, out);
        if (*limits_cmd) cmd_limits(lim, out, err);
        if (*theory_cmd) cmd_theory(th, out);
        if (*simulate_cmd) cmd_simulate(sim, out);
    } catch (const SeriesError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace ghchart

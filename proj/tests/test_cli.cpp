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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghchart/cli.hpp"

using namespace ghchart;
using doctest::Approx;
using nlohmann::json;

namespace {

const std::string kData = GHCHART_TEST_DATA_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

double half_width(const json& point) {
    return point["ucl"].get<double>() - point["cl"].get<double>();
}

}  // namespace

TEST_CASE("estimate examples") {
    auto r = run({"estimate", kData + "/worked.csv"});
    REQUIRE(r.code == kExitOk);
    auto j = json::parse(r.out);
    CHECK(j["p_ml"].get<double>() == Approx(0.5556).epsilon(1e-4));
    CHECK(j["p_b"].get<double>() == Approx(0.4444).epsilon(1e-4));
    CHECK(j["p_mvu"].get<double>() == Approx(0.5));
    CHECK(j["N"] == 5);
    CHECK(j["ordering_holds"] == true);
    // Pure file-in/JSON-out: a second run is identical.
    CHECK(run({"estimate", kData + "/worked.csv"}).out == r.out);

    j = json::parse(run({"estimate", kData + "/zeros.csv"}).out);
    CHECK(j["p_b"].get<double>() == Approx(0.8).epsilon(1e-15));
    CHECK(j["p_ml"] == 1.0);
    CHECK(j["p_mvu"] == 1.0);

    r = run({"estimate", kData + "/single.csv"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["p_mvu_unavailable"] == "MVU requires at least two observations");
}

TEST_CASE("estimate errors map to exit code 1") {
    auto r = run({"estimate", kData + "/empty.csv"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("no records") != std::string::npos);
    r = run({"estimate", kData + "/bad_row.csv"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("line 3") != std::string::npos);
    r = run({"estimate", kData + "/worked.csv", "--shift", "1"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("below the shift") != std::string::npos);
    CHECK(run({"estimate", kData + "/nope.csv"}).code == kExitValidation);
    CHECK(run({"estimate"}).code == kExitValidation);
    CHECK(run({}).code == kExitValidation);
    CHECK(run({"frobnicate"}).code == kExitValidation);
}

TEST_CASE("help documents exit codes") {
    const auto r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("Exit codes: 0 success, 1 validation") != std::string::npos);
}

TEST_CASE("limits worked example, basis and multiplier") {
    const std::string four = kData + "/four.csv";
    auto ml = json::parse(run({"limits", four}).out);
    REQUIRE(ml["subgroups"].size() == 5);
    CHECK(ml["subgroups"][0]["ucl"].get<double>() == Approx(10.0));
    CHECK(ml["subgroups"][0]["cl"].get<double>() == Approx(4.0));
    CHECK(ml["subgroups"][0]["lcl"].get<double>() == 0.0);
    CHECK(ml["subgroups"][0]["subgroup"] == "s1");

    const auto g = json::parse(run({"limits", four, "--kind", "g"}).out);
    CHECK(g["subgroups"][0]["ucl"].get<double>() == Approx(50.0));

    const auto mvu = json::parse(run({"limits", four, "--basis", "mvu"}).out);
    const double shrink = std::sqrt(25.0 / 26.0);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(half_width(mvu["subgroups"][k]) ==
              Approx(half_width(ml["subgroups"][k]) * shrink).epsilon(1e-14));
    }

    for (const std::string flag : {"3.09", "british"}) {
        const auto wide = json::parse(run({"limits", four, "--g", flag}).out);
        CHECK(half_width(wide["subgroups"][0]) / half_width(ml["subgroups"][0]) ==
              Approx(1.03).epsilon(1e-14));
    }

    const auto raw = json::parse(run({"limits", four, "--no-clamp"}).out);
    CHECK(raw["subgroups"][0]["lcl"].get<double>() == Approx(-2.0));

    const auto known = json::parse(run({"limits", four, "--basis", "known", "--p", "0.5"}).out);
    CHECK(known["subgroups"][0]["cl"].get<double>() == Approx(1.0));
}

TEST_CASE("limits errors and warnings") {
    const std::string four = kData + "/four.csv";
    CHECK(run({"limits", four, "--basis", "bogus"}).code == kExitValidation);
    CHECK(run({"limits", four, "--kind", "x"}).code == kExitValidation);
    CHECK(run({"limits", four, "--g", "0"}).code == kExitValidation);
    CHECK(run({"limits", four, "--basis", "known"}).code == kExitValidation);
    CHECK(run({"limits", four, "--p", "0.5"}).code == kExitValidation);
    CHECK(run({"limits", four, "--format", "png"}).code == kExitValidation);

    const auto r = run({"limits", kData + "/zeros.csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.find("warning: degenerate data") != std::string::npos);
    CHECK(json::parse(r.out)["warnings"].size() == 1);
}

TEST_CASE("limits CSV and SVG outputs") {
    const std::string four = kData + "/four.csv";
    const auto csv = run({"limits", four, "--format", "csv"});
    CHECK(line_count(csv.out) == 6);
    const auto tmp = std::filesystem::temp_directory_path() / "ghchart_cli_test_chart.svg";
    const auto r = run({"limits", four, "--format", "svg", "--out", tmp.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    const auto svg = slurp(tmp);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::filesystem::remove(tmp);
}

TEST_CASE("theory curves") {
    const auto r = run({"theory", "--N", "2,5,10", "--p-grid", "0.01:0.99:0.01"});
    REQUIRE(r.code == kExitOk);
    CHECK(line_count(r.out) == 1 + 3 * 99 * 3);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    std::size_t mvu_rows = 0;
    while (std::getline(in, line)) {
        if (line.find(",p_mvu,") != std::string::npos) {
            ++mvu_rows;
            CHECK(line.find(",p_mvu,0,") != std::string::npos);
        }
    }
    CHECK(mvu_rows == 3 * 99);

    CHECK(run({"theory", "--p-grid", "0:0.5:0.1"}).code == kExitValidation);
    CHECK(run({"theory", "--p-grid", "0.5,1"}).code == kExitValidation);
    CHECK(run({"theory", "--N", "1"}).code == kExitValidation);
    CHECK(run({"theory", "--format", "xml"}).code == kExitValidation);
    const auto j = json::parse(run({"theory", "--N", "2", "--p-grid", "0.5", "--format", "json"}).out);
    CHECK(j.size() == 3);
    const auto svg = run({"theory", "--N", "2", "--p-grid", "0.2,0.5", "--format", "svg"});
    CHECK(svg.out.find("<svg") != std::string::npos);
}

TEST_CASE("simulate outputs") {
    const std::vector<std::string> base = {"simulate", "--sizes", "1,1;2,3", "--p-grid", "0.3,0.7",
                                           "--iterations", "400", "--seed", "5"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    const auto csv1 = with({"--format", "csv"});
    REQUIRE(csv1.code == kExitOk);
    CHECK(line_count(csv1.out) == 1 + 4 * 3);
    CHECK(with({"--format", "csv", "--workers", "3"}).out == csv1.out);
    CHECK(with({"--format", "csv", "--seed", "6"}).out != csv1.out);

    const auto table = with({});
    CHECK(table.out.rfind("master seed 5", 0) == 0);
    CHECK(with({"--compare-theory"}).out.find("z-scores") != std::string::npos);
    const auto j = json::parse(with({"--format", "json", "--compare-theory"}).out);
    CHECK(j.size() == 4);

    CHECK(with({"--format", "svg"}).code == kExitValidation);
    CHECK(with({"--workers", "0"}).code == kExitValidation);
    CHECK(run({"simulate", "--sizes", "1", "--iterations", "10"}).code == kExitValidation);
    CHECK(run({"simulate", "--iterations", "1"}).code == kExitValidation);
}

TEST_CASE("fewer iterations report larger standard errors") {
    auto se = [](const std::string& iterations) {
        const auto j = json::parse(run({"simulate", "--sizes", "2,3", "--p-grid", "0.5",
                                        "--iterations", iterations, "--format", "json"})
                                       .out);
        return j[0]["p_ml"]["bias_se"].get<double>();
    };
    const double small = se("100");
    const double large = se("10000");
    CHECK(small > large);
    CHECK(small / large == Approx(10.0).epsilon(0.25));
}

TEST_CASE("numerical failures map to exit code 2") {
    // p near 0 needs far more terms than the default cap allows.
    const auto r = run({"theory", "--N", "2", "--p-grid", "0.0000001"});
    CHECK(r.code == kExitNumerical);
    CHECK(r.err.find("error:") == 0);
}

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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ghchart/charts.hpp"
#include "ghchart/random.hpp"

using namespace ghchart;
using doctest::Approx;

namespace {

// Five subgroups of five counts {2..6}: N = 25, grand mean 4, a = 0.
StudyData balanced_four() {
    return StudyData(std::vector<StudyData::Subgroup>(5, {2, 3, 4, 5, 6}), 0);
}

ChartConfig config(ChartKind kind, ChartBasis basis) {
    ChartConfig c;
    c.kind = kind;
    c.basis = basis;
    return c;
}

StudyData random_study(SplitMix64& rng) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const std::int64_t a = static_cast<std::int64_t>(rng() % 3);
    const GeometricModel model(0.1 + 0.8 * rng.uniform_open0(), a);
    std::vector<StudyData::Subgroup> groups(m);
    for (auto& g : groups) {
        const int n = 1 + static_cast<int>(rng() % 8);
        for (int j = 0; j < n; ++j) g.push_back(sample_geometric(model, rng));
    }
    return StudyData(std::move(groups), a);
}

}  // namespace

TEST_CASE("limits_known examples") {
    const GeometricModel m(0.5, 0);
    auto c = config(ChartKind::h, ChartBasis::known);
    auto t = limits_known(m, 2, c);
    CHECK(t.ucl == Approx(4.0));
    CHECK(t.cl == Approx(1.0));
    CHECK(t.lcl == 0.0);
    c.clamp_lcl = false;
    CHECK(limits_known(m, 2, c).lcl == Approx(-2.0));

    c = config(ChartKind::g, ChartBasis::known);
    t = limits_known(m, 2, c);
    CHECK(t.ucl == Approx(8.0));
    CHECK(t.cl == Approx(2.0));
    CHECK(t.lcl == 0.0);
    c.clamp_lcl = false;
    CHECK(limits_known(m, 2, c).lcl == Approx(-4.0));

    // p -> 1: width -> 0, CL -> a (n_k a for g).
    const GeometricModel near_one(1.0 - 1e-9, 3);
    const auto th = limits_known(near_one, 4, config(ChartKind::h, ChartBasis::known));
    CHECK(th.ucl - th.lcl < 1e-3);
    CHECK(th.cl == Approx(3.0));
    const auto tg = limits_known(near_one, 4, config(ChartKind::g, ChartBasis::known));
    CHECK(tg.cl == Approx(12.0));
    CHECK(tg.ucl - tg.lcl < 1e-3);
}

TEST_CASE("limits_known errors") {
    const GeometricModel one(1.0, 2);
    auto c = config(ChartKind::h, ChartBasis::known);
    CHECK_THROWS_AS(limits_known(one, 3, c), std::domain_error);
    c.allow_zero_width = true;
    const auto t = limits_known(one, 3, c);
    CHECK(t.ucl == 2.0);
    CHECK(t.cl == 2.0);
    CHECK(t.lcl == 2.0);
    CHECK_THROWS_AS(limits_known(GeometricModel(0.5), 0, c), std::invalid_argument);
    c.multiplier = 0.0;
    CHECK_THROWS_AS(limits_known(GeometricModel(0.5), 2, c), std::invalid_argument);
}

TEST_CASE("h_limits worked examples") {
    const auto d = balanced_four();
    const auto ml = h_limits(d, config(ChartKind::h, ChartBasis::ml));
    REQUIRE(ml.entries.size() == 5);
    for (const auto& e : ml.entries) {
        CHECK(e.size == 5);
        CHECK(e.ucl == Approx(10.0));
        CHECK(e.cl == Approx(4.0));
        CHECK(e.lcl == 0.0);
    }
    CHECK(ml.statistic() == "subgroup_mean");

    const auto mvu = h_limits(d, config(ChartKind::h, ChartBasis::mvu));
    CHECK(mvu.entries[0].ucl == Approx(9.8835).epsilon(1e-5));
    CHECK(mvu.entries[0].cl == Approx(4.0));
    CHECK(mvu.entries[0].lcl == 0.0);

    auto raw = config(ChartKind::h, ChartBasis::ml);
    raw.clamp_lcl = false;
    CHECK(h_limits(d, raw).entries[0].lcl == Approx(-2.0));
}

TEST_CASE("g_limits worked examples") {
    const auto d = balanced_four();
    const auto ml = g_limits(d, config(ChartKind::g, ChartBasis::ml));
    CHECK(ml.entries[0].ucl == Approx(50.0));
    CHECK(ml.entries[0].cl == Approx(20.0));
    CHECK(ml.entries[0].lcl == 0.0);
    CHECK(ml.statistic() == "subgroup_total");

    const auto mvu = g_limits(d, config(ChartKind::g, ChartBasis::mvu));
    // 20 + 3 sqrt(5 * 20 * 25/26) = 20 + 3 * 9.80581
    CHECK(mvu.entries[0].ucl == Approx(49.41742).epsilon(1e-6));
    CHECK(mvu.entries[0].cl == Approx(20.0));
    CHECK(mvu.entries[0].lcl == 0.0);

    auto raw = config(ChartKind::g, ChartBasis::ml);
    raw.clamp_lcl = false;
    CHECK(g_limits(d, raw).entries[0].lcl == Approx(-10.0));
}

TEST_CASE("unbalanced subgroups n = (2, 8) give a half-width ratio of 2") {
    const StudyData d({{1, 5}, {0, 2, 3, 1, 4, 0, 2, 7}}, 0);
    for (auto basis : {ChartBasis::ml, ChartBasis::mvu}) {
        auto c = config(ChartKind::h, basis);
        c.clamp_lcl = false;
        const auto lim = h_limits(d, c);
        const double w0 = lim.entries[0].ucl - lim.entries[0].cl;
        const double w1 = lim.entries[1].ucl - lim.entries[1].cl;
        CHECK(w0 / w1 == Approx(2.0).epsilon(1e-14));
        CHECK(lim.entries[0].cl == lim.entries[1].cl);
    }
}

TEST_CASE("g chart with n_k = 1 coincides with the h chart") {
    const StudyData d({{3}, {0}, {7}, {1}}, 0);
    for (auto basis : {ChartBasis::ml, ChartBasis::mvu}) {
        const auto h = h_limits(d, config(ChartKind::h, basis));
        const auto g = g_limits(d, config(ChartKind::g, basis));
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(g.entries[k].ucl == Approx(h.entries[k].ucl).epsilon(1e-15));
            CHECK(g.entries[k].cl == Approx(h.entries[k].cl).epsilon(1e-15));
            CHECK(g.entries[k].lcl == Approx(h.entries[k].lcl).epsilon(1e-15));
        }
    }
}

TEST_CASE("known basis matches the closed forms within 1e-12") {
    const StudyData d({{1}, {1, 2}, {0, 0, 0}, {5, 1, 1, 1, 2, 2}}, 0);
    for (double p : {0.05, 0.2, 0.5, 0.73, 0.95}) {
        for (std::int64_t a : {0, 1, 4}) {
            for (double g : {kAmericanStandard, kBritishStandard, 2.0}) {
                std::vector<StudyData::Subgroup> groups = d.subgroups();
                for (auto& grp : groups) {
                    for (auto& x : grp) x += a;
                }
                const StudyData da(groups, a);
                for (auto kind : {ChartKind::h, ChartKind::g}) {
                    auto c = config(kind, ChartBasis::known);
                    c.known_model = GeometricModel(p, a);
                    c.multiplier = g;
                    c.clamp_lcl = false;
                    const auto lim = chart_limits(da, c);
                    for (const auto& e : lim.entries) {
                        const double n = static_cast<double>(e.size);
                        const double mu = (1 - p) / p + a;
                        const double cl = kind == ChartKind::h ? mu : n * mu;
                        const double hw = kind == ChartKind::h ? g * std::sqrt((1 - p) / (n * p * p))
                                                               : g * std::sqrt(n * (1 - p) / (p * p));
                        CHECK(std::fabs(e.cl - cl) <= 1e-12 * std::max(1.0, std::fabs(cl)));
                        CHECK(std::fabs(e.ucl - (cl + hw)) <= 1e-12 * std::max(1.0, cl + hw));
                        CHECK(std::fabs(e.lcl - (cl - hw)) <= 1e-12 * std::max(1.0, std::fabs(cl - hw)));
                    }
                }
            }
        }
    }
}

TEST_CASE("config validation") {
    const auto d = balanced_four();
    auto c = config(ChartKind::h, ChartBasis::known);
    CHECK_THROWS_AS(chart_limits(d, c), std::invalid_argument);
    c = config(ChartKind::h, ChartBasis::ml);
    c.known_model = GeometricModel(0.5);
    CHECK_THROWS_AS(chart_limits(d, c), std::invalid_argument);
    c = config(ChartKind::h, ChartBasis::ml);
    c.multiplier = -1.0;
    CHECK_THROWS_AS(chart_limits(d, c), std::invalid_argument);
    CHECK_THROWS_AS(parse_chart_kind("x"), std::invalid_argument);
    CHECK(parse_chart_basis("mvu") == ChartBasis::mvu);
    CHECK(parse_chart_kind("g") == ChartKind::g);
}

TEST_CASE("classify boundary convention") {
    const StudyData d({{2, 4}, {0, 0}}, 0);
    auto lim = h_limits(d, config(ChartKind::h, ChartBasis::ml));
    lim.entries[0].ucl = 3.0;  // subgroup mean is exactly 3
    auto r = classify(d, lim);
    CHECK(r.points[0].value == 3.0);
    CHECK(r.points[0].status == PointStatus::in_control);

    lim.entries[0].ucl = std::nextafter(3.0, 0.0);
    r = classify(d, lim);
    CHECK(r.points[0].status == PointStatus::above_ucl);

    lim.entries[1].lcl = 0.0;
    CHECK(classify(d, lim).points[1].status == PointStatus::in_control);
    lim.entries[1].lcl = std::nextafter(0.0, 1.0);
    CHECK(classify(d, lim).points[1].status == PointStatus::below_lcl);

    const auto g = g_limits(d, config(ChartKind::g, ChartBasis::ml));
    CHECK(classify(d, g).points[0].value == 6.0);
}

TEST_CASE("degenerate data gives zero-width limits and flags any count above a") {
    const StudyData flat({{2, 2}, {2, 2, 2}}, 2);
    for (auto kind : {ChartKind::h, ChartKind::g}) {
        const auto lim = chart_limits(flat, config(kind, ChartBasis::ml));
        REQUIRE(lim.warnings.size() == 1);
        for (const auto& e : lim.entries) {
            CHECK(e.ucl == e.cl);
            CHECK(e.lcl == e.cl);
        }
        CHECK(classify(flat, lim).points[0].status == PointStatus::in_control);
        const StudyData bumped({{2, 3}, {2, 2, 2}}, 2);
        const auto r = classify(bumped, lim);
        CHECK(r.points[0].status == PointStatus::above_ucl);
        CHECK(r.points[1].status == PointStatus::in_control);
        CHECK(r.warnings.size() == 1);
    }
}

TEST_CASE("classify rejects a shape mismatch") {
    const auto lim = h_limits(balanced_four(), config(ChartKind::h, ChartBasis::ml));
    CHECK_THROWS_AS(classify(StudyData({{1, 2}}, 0), lim), std::invalid_argument);
    CHECK_THROWS_AS(classify(StudyData(std::vector<StudyData::Subgroup>(5, {1, 2}), 0), lim),
                    std::invalid_argument);
}

TEST_CASE("chart properties over random data") {
    SplitMix64 rng(8080);
    for (int i = 0; i < 500; ++i) {
        const auto d = random_study(rng);
        const double shrink = std::sqrt(static_cast<double>(d.count()) / (d.count() + 1.0));
        for (auto kind : {ChartKind::h, ChartKind::g}) {
            auto cml = config(kind, ChartBasis::ml);
            auto cmvu = config(kind, ChartBasis::mvu);
            cml.clamp_lcl = cmvu.clamp_lcl = false;
            const auto ml = chart_limits(d, cml);
            const auto mvu = chart_limits(d, cmvu);
            cml.clamp_lcl = true;
            const auto clamped = chart_limits(d, cml);

            for (std::size_t k = 0; k < d.subgroup_count(); ++k) {
                const auto& a = ml.entries[k];
                const auto& b = mvu.entries[k];
                const auto& c = clamped.entries[k];
                CHECK(a.cl == b.cl);
                CHECK(b.ucl - b.cl == Approx((a.ucl - a.cl) * shrink).epsilon(1e-13));
                if (!d.degenerate()) CHECK(b.ucl - b.cl < a.ucl - a.cl);
                CHECK(c.ucl == a.ucl);
                CHECK(c.lcl <= c.cl);
                CHECK(c.cl <= c.ucl);
                CHECK(c.lcl >= a.lcl);
                const double floor = kind == ChartKind::h ? d.shift() : a.size * d.shift();
                CHECK(c.lcl >= floor);
                for (std::size_t j = 0; j < k; ++j) {
                    if (ml.entries[j].size == a.size) {
                        CHECK(ml.entries[j].ucl == a.ucl);
                        CHECK(ml.entries[j].lcl == a.lcl);
                    }
                }
            }

            // Reversing the subgroups reverses the entries.
            auto groups = d.subgroups();
            std::reverse(groups.begin(), groups.end());
            const auto rev = chart_limits(StudyData(groups, d.shift()), cml);
            const std::size_t m = d.subgroup_count();
            for (std::size_t k = 0; k < m; ++k) {
                CHECK(rev.entries[k].size == clamped.entries[m - 1 - k].size);
                CHECK(rev.entries[k].ucl == clamped.entries[m - 1 - k].ucl);
                CHECK(rev.entries[k].lcl == clamped.entries[m - 1 - k].lcl);
                CHECK(rev.entries[k].index == k);
            }
        }
    }
}

TEST_CASE("multiplier presets") {
    CHECK(kAmericanStandard == 3.0);
    CHECK(kBritishStandard == 3.09);
    const auto d = balanced_four();
    auto c = config(ChartKind::h, ChartBasis::ml);
    const auto w3 = h_limits(d, c).entries[0];
    c.multiplier = kBritishStandard;
    const auto w309 = h_limits(d, c).entries[0];
    CHECK((w309.ucl - w309.cl) / (w3.ucl - w3.cl) == Approx(1.03).epsilon(1e-14));
}

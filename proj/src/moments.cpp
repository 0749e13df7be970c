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

#include "ghchart/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace ghchart {

namespace {

void check_args(std::int64_t N, double p, std::int64_t min_N) {
    if (N < min_N) {
        throw std::domain_error(fmt::format("moment formula requires N >= {}, got {}", min_N, N));
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error(fmt::format("moment formula requires 0 < p < 1, got {}", p));
    }
}

// sum_{n>=1} (1-p)^n / C(K+n, n): positive terms with ratio
// (1-p)(n+1)/(K+n+1) increasing toward 1-p, so the tail after term t is
// at most t (1-p) / p.
long double inverse_binomial_series(std::int64_t K, double p, const SeriesControl& ctrl,
                                    const char* name) {
    ctrl.validate();
    const long double q = 1.0L - static_cast<long double>(p);
    const long double tail_factor = q / (1.0L - q);
    long double term = q / static_cast<long double>(K + 1);  // n = 1: q / C(K+1, 1)
    long double sum = term;
    std::int64_t terms = 1;
    for (std::int64_t n = 1;; ++n) {
        const long double scale = ctrl.rel_tol * sum;
        if (term <= scale && term * tail_factor <= scale) return sum;
        if (terms >= ctrl.max_terms) throw SeriesError(name, terms, static_cast<double>(term));
        term *= q * static_cast<long double>(n + 1) / static_cast<long double>(K + n + 1);
        sum += term;
        ++terms;
    }
}

long double ipow(long double x, std::int64_t n) { return std::pow(x, static_cast<long double>(n)); }

}  // namespace

std::string_view to_string(Estimator e) {
    switch (e) {
        case Estimator::b: return "p_b";
        case Estimator::mvu: return "p_mvu";
        case Estimator::ml: return "p_ml";
    }
    return "?";
}

double mean_p_ml(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 1);
    const long double n = static_cast<long double>(N);
    const long double f = hyp2f1<long double>(n, n, n + 1.0L, 1.0L - p, ctrl);
    return static_cast<double>(ipow(p, N) * f);
}

double mean_p_ml_euler(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 1);
    const long double n = static_cast<long double>(N);
    return static_cast<double>(p * hyp2f1<long double>(1.0L, 1.0L, n + 1.0L, 1.0L - p, ctrl));
}

double mean_p_b(std::int64_t N, double p, const SeriesControl& ctrl) {
    return static_cast<double>(N - 1) / static_cast<double>(N) * mean_p_ml(N, p, ctrl);
}

double bias_p_ml(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 1);
    return static_cast<double>(p * inverse_binomial_series(N, p, ctrl, "Bias(p_ml) series"));
}

double bias_p_b(std::int64_t N, double p, const SeriesControl& ctrl) {
    const auto n = static_cast<double>(N);
    return -p / n + (n - 1.0) / n * bias_p_ml(N, p, ctrl);
}

double m2_p_ml(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 1);
    const long double n = static_cast<long double>(N);
    const long double f = hyp3f2<long double>(n, n, n, n + 1.0L, n + 1.0L, 1.0L - p, ctrl);
    return static_cast<double>(ipow(p, N) * f);
}

double m2_p_b(std::int64_t N, double p, const SeriesControl& ctrl) {
    const double factor = static_cast<double>(N - 1) / static_cast<double>(N);
    return factor * factor * m2_p_ml(N, p, ctrl);
}

double m2_p_mvu(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 2);
    const long double n = static_cast<long double>(N);
    const long double f = hyp2f1<long double>(n - 1.0L, n - 1.0L, n, 1.0L - p, ctrl);
    return static_cast<double>(ipow(p, N) * f);
}

double m2_p_mvu_euler(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 2);
    const long double n = static_cast<long double>(N);
    const long double pp = p;
    return static_cast<double>(pp * pp * hyp2f1<long double>(1.0L, 1.0L, n, 1.0L - p, ctrl));
}

double var_p_mvu(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 2);
    const long double pp = p;
    return static_cast<double>(pp * pp *
                               inverse_binomial_series(N - 1, p, ctrl, "Var(p_mvu) series"));
}

const EstimatorMoments& MomentReport::operator[](Estimator e) const {
    switch (e) {
        case Estimator::b: return b;
        case Estimator::mvu: return mvu;
        case Estimator::ml: return ml;
    }
    throw std::invalid_argument("unknown estimator");
}

namespace {

void require(bool ok, std::int64_t N, double p, const std::string& what) {
    if (!ok) throw std::runtime_error(fmt::format("moment_report(N={}, p={}): {}", N, p, what));
}

// Rounding can push m2 - mean^2 a few ulps below zero as p -> 1.
double checked_variance(double m2, double mean, std::int64_t N, double p, const char* name) {
    const double v = m2 - mean * mean;
    require(v >= -1e-12, N, p, fmt::format("negative variance {} for {}", v, name));
    return v < 0.0 ? 0.0 : v;
}

}  // namespace

MomentReport moment_report(std::int64_t N, double p, const SeriesControl& ctrl) {
    check_args(N, p, 2);
    MomentReport r{};
    r.N = N;
    r.p = p;

    const double mean_ml = mean_p_ml(N, p, ctrl);
    const double bias_ml = bias_p_ml(N, p, ctrl);
    require(std::fabs(mean_ml - p - bias_ml) <= kDualRouteTolerance, N, p,
            fmt::format("E[p_ml] routes disagree: 2F1 bias {} vs series bias {}", mean_ml - p,
                        bias_ml));

    const double m2_ml = m2_p_ml(N, p, ctrl);
    const double var_ml = checked_variance(m2_ml, mean_ml, N, p, "p_ml");
    r.ml = {mean_ml, bias_ml, m2_ml, var_ml, var_ml + bias_ml * bias_ml};

    const double factor = static_cast<double>(N - 1) / static_cast<double>(N);
    const double mean_b = factor * mean_ml;
    const double bias_b = bias_p_b(N, p, ctrl);
    require(std::fabs(mean_b - p - bias_b) <= kDualRouteTolerance, N, p,
            "E[p_b] routes disagree");
    const double m2_b = factor * factor * m2_ml;
    const double var_b = checked_variance(m2_b, mean_b, N, p, "p_b");
    r.b = {mean_b, bias_b, m2_b, var_b, var_b + bias_b * bias_b};

    const double m2_mvu = m2_p_mvu(N, p, ctrl);
    const double var_mvu = var_p_mvu(N, p, ctrl);
    require(std::fabs(m2_mvu - p * p - var_mvu) <= kDualRouteTolerance, N, p,
            fmt::format("Var(p_mvu) routes disagree: {} vs {}", m2_mvu - p * p, var_mvu));
    require(var_mvu >= 0.0, N, p, "negative Var(p_mvu)");
    r.mvu = {p, 0.0, m2_mvu, var_mvu, var_mvu};
    return r;
}

std::vector<CurveRow> theory_curves(std::span<const std::int64_t> N_list,
                                    std::span<const double> p_grid, const SeriesControl& ctrl) {
    for (double p : p_grid) {
        if (!(p > 0.0 && p < 1.0)) {
            throw std::domain_error(fmt::format("theory grid point {} is outside (0, 1)", p));
        }
    }
    std::vector<CurveRow> rows;
    rows.reserve(N_list.size() * p_grid.size() * 3);
    for (std::int64_t N : N_list) {
        for (double p : p_grid) {
            const auto report = moment_report(N, p, ctrl);
            for (Estimator e : kAllEstimators) {
                rows.push_back({N, p, e, report[e].bias, report[e].mse});
            }
        }
    }
    return rows;
}

}  // namespace ghchart

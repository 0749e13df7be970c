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

// Exact first and second moments of p_ml, p_b and p_mvu for pooled sample
// size N and true p (the shift a does not enter). Each quantity is available
// through a hypergeometric route and through an independent direct series:
//
//   E[p_ml]    = p^N 2F1(N, N; N+1; 1-p)        = p 2F1(1, 1; N+1; 1-p)
//   Bias(p_ml) = sum_{n>=1} p (1-p)^n / C(N+n, n)
//   E[p_ml^2]  = p^N 3F2(N, N, N; N+1, N+1; 1-p)
//   E[p_mvu^2] = p^N 2F1(N-1, N-1; N; 1-p)      = p^2 2F1(1, 1; N; 1-p)
//   Var(p_mvu) = sum_{n>=1} p^2 (1-p)^n / C(N-1+n, n)
//
// and p_b = p_ml (N-1)/N scales the ML moments.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ghchart/special.hpp"

namespace ghchart {

enum class Estimator { b, mvu, ml };

inline constexpr Estimator kAllEstimators[] = {Estimator::b, Estimator::mvu, Estimator::ml};

std::string_view to_string(Estimator e);

double mean_p_ml(std::int64_t N, double p, const SeriesControl& ctrl = {});
double mean_p_ml_euler(std::int64_t N, double p, const SeriesControl& ctrl = {});
double mean_p_b(std::int64_t N, double p, const SeriesControl& ctrl = {});

double bias_p_ml(std::int64_t N, double p, const SeriesControl& ctrl = {});
double bias_p_b(std::int64_t N, double p, const SeriesControl& ctrl = {});

double m2_p_ml(std::int64_t N, double p, const SeriesControl& ctrl = {});
double m2_p_b(std::int64_t N, double p, const SeriesControl& ctrl = {});
double m2_p_mvu(std::int64_t N, double p, const SeriesControl& ctrl = {});
double m2_p_mvu_euler(std::int64_t N, double p, const SeriesControl& ctrl = {});

double var_p_mvu(std::int64_t N, double p, const SeriesControl& ctrl = {});

struct EstimatorMoments {
    double mean;
    double bias;
    double second_moment;
    double variance;
    double mse;
};

struct MomentReport {
    std::int64_t N;
    double p;
    EstimatorMoments b;
    EstimatorMoments mvu;
    EstimatorMoments ml;

    const EstimatorMoments& operator[](Estimator e) const;
};

// Agreement required between the hypergeometric and direct-series routes.
inline constexpr double kDualRouteTolerance = 1e-9;

// Assembles every moment and enforces the dual-route agreement,
// variance >= 0 and mse = variance + bias^2 before returning. Failures
// throw std::runtime_error naming (N, p) and the offending quantity.
MomentReport moment_report(std::int64_t N, double p, const SeriesControl& ctrl = {});

struct CurveRow {
    std::int64_t N;
    double p;
    Estimator estimator;
    double bias;
    double mse;
};

// Rows ordered by (N as given, p as given, estimator b/mvu/ml).
std::vector<CurveRow> theory_curves(std::span<const std::int64_t> N_list,
                                    std::span<const double> p_grid,
                                    const SeriesControl& ctrl = {});

}  // namespace ghchart

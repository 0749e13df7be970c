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

// Empirical bias / MSE of p_b, p_mvu and p_ml for geometric data with a
// given subgroup shape.
//
// Reproducibility: iteration i of a cell draws its N counts from
// SplitMix64(derive_seed(cell_seed, i)), one uniform per count, so results
// are bit-identical for any worker count. Per-iteration errors are stored
// and reduced in index order. Table cells use
//
//   cell_seed = derive_seed(derive_seed(master_seed, p_index), size_index)

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ghchart/moments.hpp"

namespace ghchart {

inline constexpr std::uint64_t kDefaultMasterSeed = 1;
inline constexpr std::int64_t kDefaultIterations = 10'000;

struct SimConfig {
    std::vector<std::int64_t> group_sizes;
    double p = 0.5;
    std::int64_t shift = 0;
    std::int64_t iterations = kDefaultIterations;
    std::uint64_t seed = kDefaultMasterSeed;  // the cell seed
    unsigned workers = 1;                     // never changes results

    std::int64_t total_size() const;
    void validate() const;
};

struct EmpiricalStats {
    double bias;
    double mse;
    double bias_se;  // sd(p_hat) / sqrt(I)
    double mse_se;   // sd((p_hat - p)^2) / sqrt(I)
};

struct SimResult {
    SimConfig config;
    EmpiricalStats b;
    EmpiricalStats mvu;
    EmpiricalStats ml;
    // Iterations with X > a in which p_b < p_mvu < p_ml failed; always 0.
    std::int64_t ordering_violations = 0;

    const EmpiricalStats& operator[](Estimator e) const;
};

// Throws std::invalid_argument before any sampling if the config is invalid.
SimResult run_cell(const SimConfig& config);

// Raw per-iteration estimates, index-ordered; used by tests.
struct IterationEstimates {
    std::int64_t excess;  // T - Na
    double p_b;
    double p_mvu;
    double p_ml;
};
IterationEstimates simulate_iteration(const SimConfig& config, std::int64_t iteration);

struct TableCell {
    std::size_t p_index;
    std::size_t size_index;
    SimResult result;
};

// Default grids of the published study.
std::vector<std::vector<std::int64_t>> default_size_configs();
std::vector<double> default_p_grid();

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t p_index, std::size_t size_index);

// Cells ordered by p index, then size index.
std::vector<TableCell> run_table(std::span<const std::vector<std::int64_t>> size_configs,
                                 std::span<const double> p_grid, std::int64_t iterations,
                                 std::uint64_t master_seed, std::int64_t shift = 0,
                                 unsigned workers = 1);

struct TheoryDiscrepancy {
    double theory_bias;
    double theory_mse;
    double bias_diff;  // empirical - theory
    double mse_diff;
    double z_bias;     // bias_diff / bias_se
    double z_mse;      // mse_diff / mse_se
};

struct TheoryComparison {
    std::int64_t N;
    double p;
    TheoryDiscrepancy b;
    TheoryDiscrepancy mvu;
    TheoryDiscrepancy ml;

    const TheoryDiscrepancy& operator[](Estimator e) const;
};

TheoryComparison compare_theory(const SimResult& result, const SeriesControl& ctrl = {});

}  // namespace ghchart

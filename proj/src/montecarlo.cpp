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

#include "ghchart/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "ghchart/estimators.hpp"
#include "ghchart/geometric.hpp"
#include "ghchart/random.hpp"

namespace ghchart {

std::int64_t SimConfig::total_size() const {
    std::int64_t n = 0;
    for (auto s : group_sizes) n += s;
    return n;
}

void SimConfig::validate() const {
    if (group_sizes.empty()) throw std::invalid_argument("simulation needs at least one group");
    for (auto s : group_sizes) {
        if (s < 1) throw std::invalid_argument("group sizes must be positive");
    }
    if (total_size() < 2) {
        throw std::invalid_argument("group sizes must total at least 2 so p_mvu is defined");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument(fmt::format("simulation requires 0 < p < 1, got {}", p));
    }
    if (shift < 0) throw std::invalid_argument("shift must be non-negative");
    if (iterations < 2) throw std::invalid_argument("iterations must be >= 2");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

const EmpiricalStats& SimResult::operator[](Estimator e) const {
    switch (e) {
        case Estimator::b: return b;
        case Estimator::mvu: return mvu;
        case Estimator::ml: return ml;
    }
    throw std::invalid_argument("unknown estimator");
}

const TheoryDiscrepancy& TheoryComparison::operator[](Estimator e) const {
    switch (e) {
        case Estimator::b: return b;
        case Estimator::mvu: return mvu;
        case Estimator::ml: return ml;
    }
    throw std::invalid_argument("unknown estimator");
}

IterationEstimates simulate_iteration(const SimConfig& config, std::int64_t iteration) {
    SplitMix64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(iteration)));
    const GeometricModel model(config.p, config.shift);
    std::int64_t total = 0;
    // Subgroup structure does not affect the draws beyond their count, but
    // the loop mirrors it so per-subgroup data could be recovered.
    for (auto size : config.group_sizes) {
        for (std::int64_t j = 0; j < size; ++j) total += sample_geometric(model, rng);
    }
    const PooledStatistic s{config.total_size(), total, config.shift};
    return {s.excess(), p_b(s), p_mvu(s), p_ml(s)};
}

namespace {

EmpiricalStats summarize(const std::vector<double>& estimates, double p) {
    const auto n = static_cast<long double>(estimates.size());
    long double sum = 0, sum_sq = 0, sum_e2 = 0, sum_e4 = 0;
    for (double x : estimates) {
        const long double e = static_cast<long double>(x) - p;
        sum += x;
        sum_sq += static_cast<long double>(x) * x;
        sum_e2 += e * e;
        sum_e4 += e * e * e * e;
    }
    const long double mean = sum / n;
    const long double var = std::max(0.0L, (sum_sq - n * mean * mean) / (n - 1));
    const long double mse = sum_e2 / n;
    const long double var_e2 = std::max(0.0L, (sum_e4 - n * mse * mse) / (n - 1));
    return {static_cast<double>(mean - p), static_cast<double>(mse),
            static_cast<double>(std::sqrt(var / n)), static_cast<double>(std::sqrt(var_e2 / n))};
}

double z_score(double diff, double se) {
    if (se > 0.0) return diff / se;
    return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
}

}  // namespace

SimResult run_cell(const SimConfig& config) {
    config.validate();
    const auto iterations = static_cast<std::size_t>(config.iterations);
    std::vector<IterationEstimates> draws(iterations);

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(config.workers, iterations));
    auto run_block = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            draws[i] = simulate_iteration(config, static_cast<std::int64_t>(i));
        }
    };
    if (workers <= 1) {
        run_block(0, iterations);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (iterations + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(iterations, begin + chunk);
            if (begin < end) pool.emplace_back(run_block, begin, end);
        }
    }

    std::vector<double> b(iterations), mvu(iterations), ml(iterations);
    SimResult result{config, {}, {}, {}, 0};
    for (std::size_t i = 0; i < iterations; ++i) {
        b[i] = draws[i].p_b;
        mvu[i] = draws[i].p_mvu;
        ml[i] = draws[i].p_ml;
        if (draws[i].excess > 0 && !(b[i] < mvu[i] && mvu[i] < ml[i])) {
            ++result.ordering_violations;
        }
    }
    result.b = summarize(b, config.p);
    result.mvu = summarize(mvu, config.p);
    result.ml = summarize(ml, config.p);
    return result;
}

std::vector<std::vector<std::int64_t>> default_size_configs() {
    return {{1, 1}, {2, 3}, {5, 5}, {10, 10}};
}

std::vector<double> default_p_grid() { return {0.1, 0.3, 0.5, 0.7, 0.9}; }

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t p_index, std::size_t size_index) {
    return derive_seed(derive_seed(master_seed, p_index), size_index);
}

std::vector<TableCell> run_table(std::span<const std::vector<std::int64_t>> size_configs,
                                 std::span<const double> p_grid, std::int64_t iterations,
                                 std::uint64_t master_seed, std::int64_t shift, unsigned workers) {
    if (size_configs.empty() || p_grid.empty()) {
        throw std::invalid_argument("simulation table needs at least one size config and p");
    }
    // Validate the whole grid before sampling anything.
    std::vector<SimConfig> configs;
    std::vector<TableCell> cells;
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
        for (std::size_t si = 0; si < size_configs.size(); ++si) {
            SimConfig c{size_configs[si], p_grid[pi], shift, iterations,
                        cell_seed(master_seed, pi, si), workers};
            c.validate();
            configs.push_back(std::move(c));
            cells.push_back({pi, si, {}});
        }
    }
    for (std::size_t k = 0; k < configs.size(); ++k) cells[k].result = run_cell(configs[k]);
    return cells;
}

TheoryComparison compare_theory(const SimResult& result, const SeriesControl& ctrl) {
    const auto N = result.config.total_size();
    const double p = result.config.p;
    const auto theory = moment_report(N, p, ctrl);
    TheoryComparison out{N, p, {}, {}, {}};
    auto fill = [&](Estimator e) {
        const auto& th = theory[e];
        const auto& em = result[e];
        const double db = em.bias - th.bias;
        const double dm = em.mse - th.mse;
        return TheoryDiscrepancy{th.bias, th.mse, db, dm, z_score(db, em.bias_se),
                                 z_score(dm, em.mse_se)};
    };
    out.b = fill(Estimator::b);
    out.mvu = fill(Estimator::mvu);
    out.ml = fill(Estimator::ml);
    return out;
}

}  // namespace ghchart

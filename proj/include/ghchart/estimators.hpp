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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghchart {

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The complete sufficient statistic of pooled shifted-geometric data:
// N observations summing to T with known shift a. Every estimator here is a
// function of (N, T, a) alone.
struct PooledStatistic {
    std::int64_t count;  // N
    std::int64_t total;  // T_N
    std::int64_t shift;  // a

    // T_N - N a, the total excess over the support minimum.
    std::int64_t excess() const { return total - count * shift; }
    double grand_mean() const {
        return static_cast<double>(total) / static_cast<double>(count);
    }
};

// m subgroups of counts with (possibly) unequal sizes n_1..n_m.
class StudyData {
public:
    using Subgroup = std::vector<std::int64_t>;

    // Throws ValidationError for no subgroups, an empty subgroup, a negative
    // shift, or a count below the shift (naming subgroup and index).
    StudyData(std::vector<Subgroup> subgroups, std::int64_t shift = 0);

    const std::vector<Subgroup>& subgroups() const { return subgroups_; }
    std::int64_t shift() const { return shift_; }
    std::size_t subgroup_count() const { return subgroups_.size(); }
    std::int64_t subgroup_size(std::size_t k) const {
        return static_cast<std::int64_t>(subgroups_.at(k).size());
    }
    std::int64_t subgroup_total(std::size_t k) const;
    double subgroup_mean(std::size_t k) const;

    std::int64_t count() const { return pooled_.count; }
    std::int64_t total() const { return pooled_.total; }
    double grand_mean() const { return pooled_.grand_mean(); }
    const PooledStatistic& pooled() const { return pooled_; }
    bool degenerate() const { return pooled_.excess() == 0; }

private:
    std::vector<Subgroup> subgroups_;
    std::int64_t shift_;
    PooledStatistic pooled_;
};

// 1 / (X - a + 1); equals 1 iff every count equals a.
double p_ml(const PooledStatistic& s);
// Benneyan's estimator p_ml (N-1)/N; negatively biased.
double p_b(const PooledStatistic& s);
// (N-1) / (T - Na + N - 1). Throws std::domain_error when N < 2.
double p_mvu(const PooledStatistic& s);

// E[I(Y_n = a) | T_n = t] = (n-1) / (t - na + n - 1).
double rao_blackwell_eta(std::int64_t n, std::int64_t t, std::int64_t shift);

double mu_hat(const PooledStatistic& s);
double sigma2_ml(const PooledStatistic& s);
double sigma2_mvu(const PooledStatistic& s);

inline double p_ml(const StudyData& d) { return p_ml(d.pooled()); }
inline double p_b(const StudyData& d) { return p_b(d.pooled()); }
inline double p_mvu(const StudyData& d) { return p_mvu(d.pooled()); }
inline double mu_hat(const StudyData& d) { return mu_hat(d.pooled()); }
inline double sigma2_ml(const StudyData& d) { return sigma2_ml(d.pooled()); }
inline double sigma2_mvu(const StudyData& d) { return sigma2_mvu(d.pooled()); }

struct EstimateReport {
    std::int64_t N;
    std::int64_t shift;
    double p_ml;
    double p_b;
    std::optional<double> p_mvu;       // absent when N = 1
    std::string p_mvu_unavailable;     // reason when p_mvu is absent
    double mu_hat;
    double sigma2_ml;
    double sigma2_mvu;
    bool degenerate;                   // every count equals a
    // p_b < p_mvu < p_ml; only meaningful when the data is not degenerate.
    bool ordering_holds;
};

EstimateReport estimate(const StudyData& data);

}  // namespace ghchart

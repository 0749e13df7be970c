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

#include "ghchart/estimators.hpp"

#include <numeric>
#include <utility>

namespace ghchart {

namespace {
constexpr const char* kMvuNeedsTwo = "MVU requires at least two observations";
}

StudyData::StudyData(std::vector<Subgroup> subgroups, std::int64_t shift)
    : subgroups_(std::move(subgroups)), shift_(shift), pooled_{0, 0, shift} {
    if (shift_ < 0) throw ValidationError("location shift must be non-negative");
    if (subgroups_.empty()) throw ValidationError("study data needs at least one subgroup");
    for (std::size_t k = 0; k < subgroups_.size(); ++k) {
        const auto& group = subgroups_[k];
        if (group.empty()) {
            throw ValidationError("subgroup " + std::to_string(k + 1) + " is empty");
        }
        for (std::size_t j = 0; j < group.size(); ++j) {
            if (group[j] < shift_) {
                throw ValidationError("subgroup " + std::to_string(k + 1) + ", observation " +
                                      std::to_string(j + 1) + ": count " +
                                      std::to_string(group[j]) + " is below the shift " +
                                      std::to_string(shift_));
            }
        }
        pooled_.count += static_cast<std::int64_t>(group.size());
        pooled_.total += std::accumulate(group.begin(), group.end(), std::int64_t{0});
    }
}

std::int64_t StudyData::subgroup_total(std::size_t k) const {
    const auto& group = subgroups_.at(k);
    return std::accumulate(group.begin(), group.end(), std::int64_t{0});
}

double StudyData::subgroup_mean(std::size_t k) const {
    return static_cast<double>(subgroup_total(k)) / static_cast<double>(subgroup_size(k));
}

// All three p estimators are ratios of integers in (N, T - Na); forming them
// that way keeps the degenerate values (1, 1, 1 - 1/N) exact.

double p_ml(const PooledStatistic& s) {
    const auto n = static_cast<double>(s.count);
    return n / (static_cast<double>(s.excess()) + n);
}

double p_b(const PooledStatistic& s) {
    const auto n = static_cast<double>(s.count);
    return (n - 1.0) / (static_cast<double>(s.excess()) + n);
}

double p_mvu(const PooledStatistic& s) {
    if (s.count < 2) throw std::domain_error(kMvuNeedsTwo);
    const auto n = static_cast<double>(s.count);
    return (n - 1.0) / (static_cast<double>(s.excess()) + n - 1.0);
}

double rao_blackwell_eta(std::int64_t n, std::int64_t t, std::int64_t shift) {
    if (n < 2) throw std::domain_error("rao_blackwell_eta requires n >= 2");
    if (t < n * shift) throw std::domain_error("rao_blackwell_eta requires t >= n a");
    return static_cast<double>(n - 1) / static_cast<double>(t - n * shift + n - 1);
}

double mu_hat(const PooledStatistic& s) { return s.grand_mean(); }

double sigma2_ml(const PooledStatistic& s) {
    const double excess = static_cast<double>(s.excess()) / static_cast<double>(s.count);
    return excess * (excess + 1.0);
}

double sigma2_mvu(const PooledStatistic& s) {
    const auto n = static_cast<double>(s.count);
    return n / (n + 1.0) * sigma2_ml(s);
}

EstimateReport estimate(const StudyData& data) {
    const auto& s = data.pooled();
    EstimateReport r{};
    r.N = s.count;
    r.shift = s.shift;
    r.p_ml = p_ml(s);
    r.p_b = p_b(s);
    if (s.count >= 2) {
        r.p_mvu = p_mvu(s);
    } else {
        r.p_mvu_unavailable = kMvuNeedsTwo;
    }
    r.mu_hat = mu_hat(s);
    r.sigma2_ml = sigma2_ml(s);
    r.sigma2_mvu = sigma2_mvu(s);
    r.degenerate = data.degenerate();
    r.ordering_holds = r.p_mvu && r.p_b < *r.p_mvu && *r.p_mvu < r.p_ml;
    return r;
}

}  // namespace ghchart

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

#include "ghchart/geometric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghchart {

GeometricModel::GeometricModel(double p, std::int64_t shift) : p_(p), shift_(shift) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("geometric model requires 0 < p <= 1, got p = " +
                                    std::to_string(p));
    }
    if (shift < 0) {
        throw std::invalid_argument("location shift must be non-negative, got " +
                                    std::to_string(shift));
    }
}

NegBinModel::NegBinModel(std::int64_t n, GeometricModel base) : n_(n), base_(base) {
    if (n < 1) {
        throw std::invalid_argument("negative binomial requires n >= 1, got " +
                                    std::to_string(n));
    }
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double geom_pmf(const GeometricModel& model, std::int64_t y) {
    if (y < model.shift()) return 0.0;
    const auto excess = static_cast<double>(y - model.shift());
    return model.p() * std::pow(1.0 - model.p(), excess);
}

Moments geom_moments(const GeometricModel& model) {
    const double p = model.p();
    return {(1.0 - p) / p + static_cast<double>(model.shift()), (1.0 - p) / (p * p)};
}

double nbinom_pmf(const NegBinModel& model, std::int64_t t) {
    if (t < model.support_min()) return 0.0;
    const double p = model.base().p();
    const auto n = static_cast<double>(model.n());
    const auto excess = static_cast<double>(t - model.support_min());
    if (model.base().degenerate()) return excess == 0.0 ? 1.0 : 0.0;
    const double log_pmf = log_binomial(excess + n - 1.0, n - 1.0) + n * std::log(p) +
                           excess * std::log1p(-p);
    return std::exp(log_pmf);
}

Moments nbinom_moments(const NegBinModel& model) {
    const auto single = geom_moments(model.base());
    const auto n = static_cast<double>(model.n());
    return {n * single.mean, n * single.variance};
}

std::int64_t sample_geometric(const GeometricModel& model, SplitMix64& rng) {
    const double u = rng.uniform_open0();
    if (model.degenerate()) return model.shift();
    const double excess = std::floor(std::log(u) / std::log1p(-model.p()));
    return model.shift() + static_cast<std::int64_t>(excess);
}

}  // namespace ghchart

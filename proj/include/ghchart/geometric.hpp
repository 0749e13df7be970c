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

#include "ghchart/random.hpp"

namespace ghchart {

// Shifted geometric distribution: number of conforming cases before the
// first nonconforming one, supported on {a, a+1, ...}.
//
//   P(Y = y) = p (1-p)^(y-a)
//
// p = 1 is allowed and puts all mass on y = a.
class GeometricModel {
public:
    GeometricModel(double p, std::int64_t shift = 0);

    double p() const { return p_; }
    std::int64_t shift() const { return shift_; }
    bool degenerate() const { return p_ == 1.0; }

private:
    double p_;
    std::int64_t shift_;
};

// Sum of n iid shifted geometrics, supported on {na, na+1, ...}.
class NegBinModel {
public:
    NegBinModel(std::int64_t n, GeometricModel base);

    std::int64_t n() const { return n_; }
    const GeometricModel& base() const { return base_; }
    std::int64_t support_min() const { return n_ * base_.shift(); }

private:
    std::int64_t n_;
    GeometricModel base_;
};

struct Moments {
    double mean;
    double variance;
};

// Zero below the support, never an error.
double geom_pmf(const GeometricModel& model, std::int64_t y);
Moments geom_moments(const GeometricModel& model);

double nbinom_pmf(const NegBinModel& model, std::int64_t t);
Moments nbinom_moments(const NegBinModel& model);

// log C(n, k) via lgamma; exact enough for pmf work at large n.
double log_binomial(double n, double k);

// Inverse transform a + floor(ln U / ln(1-p)), one uniform per draw.
std::int64_t sample_geometric(const GeometricModel& model, SplitMix64& rng);

}  // namespace ghchart

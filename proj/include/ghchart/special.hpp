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

// Series evaluation of the Pochhammer symbol, generalized hypergeometric
// functions pFq (2F1 and 3F2) and the incomplete beta function on the
// convergent disc |z| < 1.
//
//   pFq(a_1..a_p; b_1..b_q; z) = sum_n (a_1)_n...(a_p)_n / ((b_1)_n...(b_q)_n) z^n / n!
//
// Terms are generated by the ratio recurrence t_{n+1} = t_n * r_n with
//
//   r_n = prod(a_i + n) / prod(b_j + n) * z / (n + 1)
//
// and accumulated in long double. Convergence is slow as z -> 1 (the
// ratio tends to z), which is the p -> 0 corner of the moment formulas;
// the number of terms used is reported by the *_series variants.

#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace ghchart {

struct SeriesControl {
    double rel_tol = 1e-14;
    std::int64_t max_terms = 1'000'000;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
            throw std::invalid_argument("series rel_tol must lie in (0, 1)");
        }
        if (max_terms < 1) throw std::invalid_argument("series max_terms must be >= 1");
    }
};

// Raised when a series has not met its tolerance after max_terms terms.
class SeriesError : public std::runtime_error {
public:
    SeriesError(const std::string& what, std::int64_t terms_used, double last_term)
        : std::runtime_error(what + " did not converge after " + std::to_string(terms_used) +
                             " terms (last term " + std::to_string(last_term) + ")"),
          terms_used_(terms_used),
          last_term_(last_term) {}

    std::int64_t terms_used() const { return terms_used_; }
    double last_term() const { return last_term_; }

private:
    std::int64_t terms_used_;
    double last_term_;
};

template <std::floating_point Real>
struct SeriesValue {
    Real value;
    std::int64_t terms;
};

template <std::floating_point Real>
Real pochhammer(Real x, std::int64_t n) {
    if (n < 0) throw std::domain_error("pochhammer requires n >= 0");
    long double acc = 1.0L;
    for (std::int64_t k = 0; k < n; ++k) acc *= static_cast<long double>(x) + k;
    return static_cast<Real>(acc);
}

namespace detail {

template <std::floating_point Real>
bool is_nonpositive_integer(Real x) {
    return x <= 0 && std::floor(x) == x;
}

// Sums pFq with p = q + 1. Stops once the current term is below
// rel_tol * |sum| and the geometric tail bound |t| r / (1 - r) is too,
// where r = max(|r_n|, |z|) bounds every later ratio when r_n approaches
// z monotonically (true for all parameter patterns used here).
template <std::floating_point Real>
SeriesValue<Real> sum_pfq(std::span<const Real> upper, std::span<const Real> lower, Real z,
                          const SeriesControl& ctrl, const char* name) {
    ctrl.validate();
    if (!(std::fabs(z) < 1)) {
        throw std::domain_error(std::string(name) + " series requires |z| < 1");
    }
    for (Real b : lower) {
        if (is_nonpositive_integer(b)) {
            throw std::invalid_argument(std::string(name) +
                                        ": lower parameter is a non-positive integer");
        }
    }

    const long double zz = z;
    const long double tol = ctrl.rel_tol;
    long double sum = 1.0L;
    long double term = 1.0L;
    std::int64_t terms = 1;
    for (std::int64_t n = 0;; ++n) {
        long double ratio = zz / static_cast<long double>(n + 1);
        for (Real a : upper) ratio *= static_cast<long double>(a) + n;
        for (Real b : lower) ratio /= static_cast<long double>(b) + n;

        const long double r = std::fmax(std::fabs(ratio), std::fabs(zz));
        const long double scale = tol * std::fabs(sum);
        if (ratio == 0.0L ||
            (r < 1.0L && std::fabs(term) <= scale && std::fabs(term) * r / (1.0L - r) <= scale)) {
            return {static_cast<Real>(sum), terms};
        }
        if (terms >= ctrl.max_terms) {
            throw SeriesError(name, terms, static_cast<double>(std::fabs(term)));
        }
        term *= ratio;
        sum += term;
        ++terms;
    }
}

}  // namespace detail

template <std::floating_point Real>
SeriesValue<Real> hyp2f1_series(Real a, Real b, Real c, Real z, const SeriesControl& ctrl = {}) {
    const std::array<Real, 2> upper{a, b};
    const std::array<Real, 1> lower{c};
    return detail::sum_pfq<Real>(upper, lower, z, ctrl, "2F1");
}

template <std::floating_point Real>
Real hyp2f1(Real a, Real b, Real c, Real z, const SeriesControl& ctrl = {}) {
    return hyp2f1_series(a, b, c, z, ctrl).value;
}

template <std::floating_point Real>
SeriesValue<Real> hyp3f2_series(Real a1, Real a2, Real a3, Real b1, Real b2, Real z,
                                const SeriesControl& ctrl = {}) {
    const std::array<Real, 3> upper{a1, a2, a3};
    const std::array<Real, 2> lower{b1, b2};
    return detail::sum_pfq<Real>(upper, lower, z, ctrl, "3F2");
}

template <std::floating_point Real>
Real hyp3f2(Real a1, Real a2, Real a3, Real b1, Real b2, Real z, const SeriesControl& ctrl = {}) {
    return hyp3f2_series(a1, a2, a3, b1, b2, z, ctrl).value;
}

// B_x(a, b) = integral_0^x y^(a-1) (1-y)^(b-1) dy = (x^a / a) 2F1(a, 1-b; a+1; x).
// b may be zero or negative (integrand singular only at y = 1), which is the
// B_{1-p}(N, 1-N) case in the moments of the estimators.
template <std::floating_point Real>
Real inc_beta(Real x, Real a, Real b, const SeriesControl& ctrl = {}) {
    if (!(x >= 0 && x <= 1)) throw std::domain_error("inc_beta requires x in [0, 1]");
    if (!(a > 0)) throw std::domain_error("inc_beta requires a > 0");
    if (x == 0) return 0;
    if (x == 1) {
        if (!(b > 0)) throw std::domain_error("inc_beta diverges at x = 1 for b <= 0");
        return static_cast<Real>(std::beta(static_cast<double>(a), static_cast<double>(b)));
    }
    const long double lead = std::pow(static_cast<long double>(x), static_cast<long double>(a)) / a;
    return static_cast<Real>(lead * hyp2f1<long double>(a, 1.0L - b, a + 1.0L, x, ctrl));
}

}  // namespace ghchart

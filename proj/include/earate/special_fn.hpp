/**
 * Copyright 2026 The earate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EARATE_SPECIAL_FN_HPP
#define EARATE_SPECIAL_FN_HPP

// Real-argument special functions used by the coefficient formulas: log-gamma,
// Pochhammer symbols, Gauss hypergeometric series (terminating, convergent
// non-terminating, regularized), the thermal entropy function g, and the
// auxiliary hypergeometric identities/bounds as evaluable expressions.
//
// Every function here is pure and reentrant.

#include <cmath>
#include <cstdint>

namespace earate::special {

/// Neumaier (improved Kahan-Babuska) running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    void scale(double f) noexcept {
        sum_ *= f;
        comp_ *= f;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct HypArgs {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 1.0;
    double z = 0.0;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// ln(n!) from a cached table for small n, log_gamma beyond.
double log_factorial(std::uint32_t n);

/// Rising factorial (x)_n; (x)_0 = 1.
double pochhammer(double x, std::uint32_t n) noexcept;

/// F[-n1, -n2; gamma; z] as a finite compensated sum. Requires gamma >= 1 and z >= 0.
double hyp2f1_terminating(std::uint32_t n1, std::uint32_t n2, std::uint32_t gamma, double z);

/// ln F[-n1, -n2; gamma; z], evaluated with running rescaling so that large
/// indices do not overflow. Same preconditions as hyp2f1_terminating.
double log_hyp2f1_terminating(std::uint32_t n1, std::uint32_t n2, std::uint32_t gamma, double z);

/// Default cap on the number of terms for the convergent series.
inline constexpr std::uint64_t kSeriesTermCap = 1'000'000;

/// F[alpha, beta; gamma; z] for alpha, beta > 0, integer gamma >= 1, 0 <= z < 1.
///
/// Summation stops once the local term ratio rho is below one and the
/// geometric tail estimate next_term / (1 - max(rho, z)) is below 1e-15 of the
/// partial sum. Throws IterationLimitError if `term_cap` terms are not enough.
double hyp2f1_nonterminating(double alpha, double beta, std::uint32_t gamma, double z,
                             std::uint64_t term_cap = kSeriesTermCap);

/// ln of hyp2f1_nonterminating, rescaled internally so the value may exceed
/// the double range.
double log_hyp2f1_nonterminating(double alpha, double beta, std::uint32_t gamma, double z,
                                 std::uint64_t term_cap = kSeriesTermCap);

/// F[alpha, beta; gamma; z] for general real parameters: a finite sum when
/// alpha or beta is a non-positive integer (any finite z), the convergent
/// series for |z| < 1 otherwise. gamma must be positive.
double hyp2f1(const HypArgs& args);

/// F[alpha, beta; gamma; z] / Gamma(gamma).
double hyp2f1_regularized(const HypArgs& args);

/// Thermal-state entropy (x+1) ln(x+1) - x ln x in nats, with g(0) = 0.
double g_entropy(double x);

/// (c-b)_n / (c)_n, the closed form of F[-n, b; c; 1].
double chu_vandermonde(std::uint32_t n, double b, double c);

struct RatioBounds {
    double lower = 1.0;
    double upper = 0.0;
};

/// Interval claimed to contain F[alpha+1, beta+1; 1; z] / F[alpha, beta; 1; z].
RatioBounds f_ratio_bounds(std::uint32_t alpha, std::uint32_t beta, double z);

/// Upper bound claimed for F[alpha+1, beta+1; 1; z] (case split on beta >= alpha).
double f_growth_bound(std::uint32_t alpha, std::uint32_t beta, double z);

}  // namespace earate::special

#endif

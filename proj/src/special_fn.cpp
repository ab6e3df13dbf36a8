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

#include "earate/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "earate/error.hpp"

namespace earate::special {

namespace {

constexpr double kRescaleThreshold = 1e280;
constexpr double kRescaleFactor = 1e-280;
const double kLogRescale = 280.0 * std::log(10.0);
constexpr double kTailTolerance = 1e-15;

bool is_nonpositive_integer(double x) noexcept { return x <= 0.0 && x == std::floor(x); }

// Sum of F[-n1, -n2; gamma; z] with a running rescale. Returns (value, log_scale)
// so that F = value * exp(log_scale).
struct Scaled {
    double value;
    double log_scale;
};

Scaled terminating_scaled(std::uint32_t n1, std::uint32_t n2, double gamma, double z) {
    CompensatedSum sum;
    double log_scale = 0.0;
    double term = 1.0;
    const std::uint32_t kmax = std::min(n1, n2);
    sum.add(term);
    for (std::uint32_t k = 0; k < kmax; ++k) {
        const double kk = static_cast<double>(k);
        term *= (static_cast<double>(n1) - kk) * (static_cast<double>(n2) - kk) * z /
                ((gamma + kk) * (kk + 1.0));
        if (term == 0.0) {
            break;
        }
        sum.add(term);
        if (sum.value() > kRescaleThreshold) {
            sum.scale(kRescaleFactor);
            term *= kRescaleFactor;
            log_scale += kLogRescale;
        }
    }
    return {sum.value(), log_scale};
}

void check_terminating_args(std::uint32_t gamma, double z) {
    if (gamma < 1) {
        throw DomainError("hyp2f1_terminating: gamma must be a positive integer");
    }
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw DomainError("hyp2f1_terminating: z must be finite and non-negative, got " +
                          std::to_string(z));
    }
}

Scaled nonterminating_scaled(double alpha, double beta, double gamma, double z,
                             std::uint64_t term_cap) {
    CompensatedSum sum;
    double log_scale = 0.0;
    double term = 1.0;
    sum.add(term);
    if (z == 0.0) {
        return {1.0, 0.0};
    }
    for (std::uint64_t d = 0;; ++d) {
        if (d + 1 >= term_cap) {
            throw IterationLimitError("hypergeometric series did not converge within " +
                                          std::to_string(term_cap) + " terms",
                                      sum.value() * std::exp(log_scale),
                                      term * std::exp(log_scale));
        }
        const double dd = static_cast<double>(d);
        const double rho = (alpha + dd) * (beta + dd) * z / ((gamma + dd) * (dd + 1.0));
        term *= rho;
        sum.add(term);
        if (sum.value() > kRescaleThreshold) {
            sum.scale(kRescaleFactor);
            term *= kRescaleFactor;
            log_scale += kLogRescale;
        }
        const double next_rho =
            (alpha + dd + 1.0) * (beta + dd + 1.0) * z / ((gamma + dd + 1.0) * (dd + 2.0));
        if (next_rho < 1.0) {
            const double rho_eff = std::max(next_rho, std::fabs(z));
            const double tail = std::fabs(term * next_rho) / (1.0 - rho_eff);
            if (tail < kTailTolerance * std::fabs(sum.value())) {
                break;
            }
        }
    }
    return {sum.value(), log_scale};
}

void check_nonterminating_args(double alpha, double beta, std::uint32_t gamma, double z) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw DomainError("hyp2f1_nonterminating: alpha and beta must be positive");
    }
    if (gamma < 1) {
        throw DomainError("hyp2f1_nonterminating: gamma must be a positive integer");
    }
    if (!(z >= 0.0 && z < 1.0)) {
        throw DomainError("hyp2f1_nonterminating: z must lie in [0, 1), got " + std::to_string(z));
    }
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be positive and finite, got " +
                          std::to_string(x));
    }
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant; avoids the global signgam
}

double log_factorial(std::uint32_t n) {
    constexpr std::uint32_t kTable = 4096;
    static const auto table = [] {
        std::array<double, kTable> t{};
        for (std::uint32_t i = 0; i < kTable; ++i) {
            int sign = 0;
            t[i] = ::lgamma_r(static_cast<double>(i) + 1.0, &sign);
        }
        t[0] = 0.0;
        t[1] = 0.0;
        return t;
    }();
    if (n < kTable) {
        return table[n];
    }
    return log_gamma(static_cast<double>(n) + 1.0);
}

double pochhammer(double x, std::uint32_t n) noexcept {
    double p = 1.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        p *= x + static_cast<double>(k);
    }
    return p;
}

double hyp2f1_terminating(std::uint32_t n1, std::uint32_t n2, std::uint32_t gamma, double z) {
    check_terminating_args(gamma, z);
    const Scaled s = terminating_scaled(n1, n2, static_cast<double>(gamma), z);
    return s.log_scale == 0.0 ? s.value : s.value * std::exp(s.log_scale);
}

double log_hyp2f1_terminating(std::uint32_t n1, std::uint32_t n2, std::uint32_t gamma, double z) {
    check_terminating_args(gamma, z);
    const Scaled s = terminating_scaled(n1, n2, static_cast<double>(gamma), z);
    return std::log(s.value) + s.log_scale;
}

double hyp2f1_nonterminating(double alpha, double beta, std::uint32_t gamma, double z,
                             std::uint64_t term_cap) {
    check_nonterminating_args(alpha, beta, gamma, z);
    const Scaled s = nonterminating_scaled(alpha, beta, static_cast<double>(gamma), z, term_cap);
    return s.log_scale == 0.0 ? s.value : s.value * std::exp(s.log_scale);
}

double log_hyp2f1_nonterminating(double alpha, double beta, std::uint32_t gamma, double z,
                                 std::uint64_t term_cap) {
    check_nonterminating_args(alpha, beta, gamma, z);
    const Scaled s = nonterminating_scaled(alpha, beta, static_cast<double>(gamma), z, term_cap);
    return std::log(s.value) + s.log_scale;
}

double hyp2f1(const HypArgs& args) {
    const auto [alpha, beta, gamma, z] = args;
    if (!(gamma > 0.0)) {
        throw DomainError("hyp2f1: gamma must be positive");
    }
    if (!std::isfinite(z)) {
        throw DomainError("hyp2f1: z must be finite");
    }
    const bool alpha_terminates = is_nonpositive_integer(alpha);
    const bool beta_terminates = is_nonpositive_integer(beta);
    if (alpha_terminates || beta_terminates) {
        double n = 0.0;
        if (alpha_terminates && beta_terminates) {
            n = std::min(-alpha, -beta);
        } else {
            n = alpha_terminates ? -alpha : -beta;
        }
        CompensatedSum sum;
        double term = 1.0;
        sum.add(term);
        const auto kmax = static_cast<std::uint64_t>(n);
        for (std::uint64_t k = 0; k < kmax; ++k) {
            const double kk = static_cast<double>(k);
            term *= (alpha + kk) * (beta + kk) * z / ((gamma + kk) * (kk + 1.0));
            sum.add(term);
        }
        return sum.value();
    }
    if (!(std::fabs(z) < 1.0)) {
        throw DomainError("hyp2f1: non-terminating series requires |z| < 1");
    }
    // General signs: rely on the same tail rule but on absolute values.
    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    for (std::uint64_t d = 0;; ++d) {
        if (d + 1 >= kSeriesTermCap) {
            throw IterationLimitError("hyp2f1: series did not converge", sum.value(), term);
        }
        const double dd = static_cast<double>(d);
        term *= (alpha + dd) * (beta + dd) * z / ((gamma + dd) * (dd + 1.0));
        sum.add(term);
        if (term == 0.0) {
            break;
        }
        const double next_rho = std::fabs((alpha + dd + 1.0) * (beta + dd + 1.0) * z /
                                          ((gamma + dd + 1.0) * (dd + 2.0)));
        if (next_rho < 1.0) {
            const double rho_eff = std::max(next_rho, std::fabs(z));
            const double tail = std::fabs(term) * next_rho / (1.0 - rho_eff);
            if (tail < kTailTolerance * std::fabs(sum.value())) {
                break;
            }
        }
    }
    return sum.value();
}

double hyp2f1_regularized(const HypArgs& args) {
    return hyp2f1(args) / std::exp(log_gamma(args.gamma));
}

double g_entropy(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("g_entropy: argument must be non-negative, got " + std::to_string(x));
    }
    if (x == 0.0) {
        return 0.0;
    }
    // (x+1) ln(x+1) - x ln x = ln(1+x) + x ln(1 + 1/x)
    return std::log1p(x) + x * std::log1p(1.0 / x);
}

double chu_vandermonde(std::uint32_t n, double b, double c) {
    const double den = pochhammer(c, n);
    if (den == 0.0) {
        throw DomainError("chu_vandermonde: (c)_n vanishes");
    }
    return pochhammer(c - b, n) / den;
}

RatioBounds f_ratio_bounds(std::uint32_t alpha, std::uint32_t beta, double z) {
    if (alpha < 1 || beta < 1 || !(z > 0.0 && z < 1.0)) {
        throw DomainError("f_ratio_bounds: requires alpha, beta >= 1 and 0 < z < 1");
    }
    const double a = alpha;
    const double b = beta;
    const double one_minus = 1.0 - z;
    return {1.0, (2.0 + z * b / a + a / b - 1.0 / a - 1.0 / b) / (one_minus * one_minus)};
}

double f_growth_bound(std::uint32_t alpha, std::uint32_t beta, double z) {
    if (alpha < 1 || beta < 1 || !(z > 0.0 && z < 1.0)) {
        throw DomainError("f_growth_bound: requires alpha, beta >= 1 and 0 < z < 1");
    }
    const double lo = std::min(alpha, beta);
    const double hi = std::max(alpha, beta);
    const double base = 3.0 + z + z * (hi - lo) - 1.0 / lo - 1.0 / hi;
    return std::pow(base, lo) / std::pow(1.0 - z, lo + hi + 1.0);
}

}  // namespace earate::special

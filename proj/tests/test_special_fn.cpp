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

#include <doctest.h>

#include <cmath>
#include <random>

#include <gmpxx.h>

#include "earate/error.hpp"
#include "earate/special_fn.hpp"

using namespace earate::special;

namespace {

// Exact terminating 2F1(-n1, -n2; gamma; z) over the rationals.
mpq_class exact_hyp2f1(unsigned n1, unsigned n2, unsigned gamma, const mpq_class& z) {
    mpq_class term = 1;
    mpq_class sum = 1;
    for (unsigned k = 0; k < std::min(n1, n2); ++k) {
        term *= mpq_class(-static_cast<long>(n1) + k) * mpq_class(-static_cast<long>(n2) + k);
        term /= mpq_class(gamma + k) * mpq_class(k + 1);
        term *= z;
        sum += term;
    }
    return sum;
}

mpz_class factorial(unsigned n) {
    mpz_class f = 1;
    for (unsigned i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

}  // namespace

TEST_CASE("log_factorial against exact factorials") {
    for (unsigned n = 0; n <= 60; ++n) {
        const double exact = std::log(mpf_class(factorial(n), 256).get_d());
        CHECK(log_factorial(n) == doctest::Approx(exact).epsilon(1e-14));
    }
}

TEST_CASE("log_gamma matches lgamma and rejects poles") {
    for (double x : {0.5, 1.0, 2.5, 10.0, 171.3}) {
        CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(log_gamma(0.0), earate::DomainError);
    CHECK_THROWS_AS(log_gamma(-3.0), earate::DomainError);
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(3.0, 4) == doctest::Approx(3.0 * 4 * 5 * 6));
    CHECK(pochhammer(-2.0, 3) == 0.0);
    CHECK(pochhammer(0.5, 2) == doctest::Approx(0.75));
}

TEST_CASE("terminating hypergeometric against a rational oracle") {
    const mpq_class zs[] = {mpq_class(1, 10), mpq_class(1, 3), mpq_class(7, 8), mpq_class(99, 100)};
    for (unsigned gamma = 1; gamma <= 4; ++gamma) {
        for (const auto& zq : zs) {
            for (unsigned n1 = 0; n1 <= 12; ++n1) {
                for (unsigned n2 = 0; n2 <= 12; ++n2) {
                    const double exact = mpq_class(exact_hyp2f1(n1, n2, gamma, zq)).get_d();
                    const double got = hyp2f1_terminating(n1, n2, gamma, zq.get_d());
                    CHECK(got == doctest::Approx(exact).epsilon(1e-12));
                    CHECK(std::exp(log_hyp2f1_terminating(n1, n2, gamma, zq.get_d())) ==
                          doctest::Approx(exact).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("nonterminating series: closed forms and guards") {
    // 2F1(1, 1; 1; z) = 1/(1-z)
    CHECK(hyp2f1_nonterminating(1, 1, 1, 0.3) == doctest::Approx(1.0 / 0.7).epsilon(1e-14));
    // 2F1(a, b; b; z) = (1-z)^-a
    CHECK(hyp2f1_nonterminating(2.5, 3, 3, 0.6) == doctest::Approx(std::pow(0.4, -2.5)).epsilon(1e-13));
    CHECK_THROWS_AS(hyp2f1_nonterminating(1, 1, 1, 1.0), earate::DomainError);
    CHECK_THROWS_AS(hyp2f1_nonterminating(40, 40, 1, 0.999999, 100), earate::IterationLimitError);
}

TEST_CASE("iteration limit error carries the partial sum") {
    try {
        hyp2f1_nonterminating(40, 40, 1, 0.999999, 50);
        FAIL("expected IterationLimitError");
    } catch (const earate::IterationLimitError& e) {
        CHECK(e.partial_sum() > 1.0);
        CHECK(std::isfinite(e.last_term()));
    }
}

TEST_CASE("Euler transform identity on random terminating cases") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<unsigned> n(0, 25);
    std::uniform_int_distribution<unsigned> g(1, 6);
    std::uniform_real_distribution<double> z(0.01, 0.95);
    for (int i = 0; i < 500; ++i) {
        const unsigned n1 = n(rng), n2 = n(rng), gamma = g(rng);
        const double zz = z(rng);
        const double lhs = log_hyp2f1_terminating(n1, n2, gamma, zz);
        const double rhs = (gamma + n1 + n2) * std::log1p(-zz) +
                           log_hyp2f1_nonterminating(gamma + n1, gamma + n2, gamma, zz);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("regularized hypergeometric divides by Gamma(gamma)") {
    const HypArgs a{-3, 2.5, 4, 0.4};
    CHECK(hyp2f1_regularized(a) == doctest::Approx(hyp2f1(a) / 6.0).epsilon(1e-14));
}

TEST_CASE("g_entropy") {
    CHECK(g_entropy(0.0) == 0.0);
    CHECK(g_entropy(1.0) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(g_entropy(1e-300) >= 0.0);
    CHECK_THROWS_AS(g_entropy(-0.1), earate::DomainError);
}

TEST_CASE("Chu-Vandermonde equals the Gauss sum") {
    for (unsigned n = 0; n <= 10; ++n) {
        for (double b : {-4.0, 0.5, 2.0}) {
            const double c = 6.5;
            CHECK(chu_vandermonde(n, b, c) == doctest::Approx(hyp2f1({-double(n), b, c, 1.0})).epsilon(1e-11));
        }
    }
}

TEST_CASE("ratio and growth bounds contain the true values") {
    for (unsigned alpha = 1; alpha <= 15; ++alpha) {
        for (unsigned beta = 1; beta <= 15; beta += 2) {
            for (double z : {0.1, 0.5, 0.9}) {
                const double f = hyp2f1_nonterminating(alpha, beta, 1, z);
                const double f1 = hyp2f1_nonterminating(alpha + 1.0, beta + 1.0, 1, z);
                const auto rb = f_ratio_bounds(alpha, beta, z);
                CHECK(f1 / f >= rb.lower * (1 - 1e-12));
                CHECK(f1 / f <= rb.upper * (1 + 1e-12));
                CHECK(f1 <= f_growth_bound(alpha, beta, z) * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("compensated summation recovers lost bits") {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) {
        s.add(1e-16);
    }
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

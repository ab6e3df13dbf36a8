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
#include <numbers>
#include <random>
#include <sstream>

#include "earate/channel.hpp"
#include "earate/error.hpp"
#include "earate/fock_state.hpp"
#include "earate/special_fn.hpp"

using namespace earate;

namespace {

const ChannelParams kP = make_params(0.1, 0.5, 2.0);

}  // namespace

TEST_CASE("selection rule and symmetry of the ray elements") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::uint32_t> idx(0, 30);
    for (int i = 0; i < 2000; ++i) {
        const auto n1 = idx(rng), n2 = idx(rng), m1 = idx(rng), m2 = idx(rng);
        const double v = lambda_element(kP, n1, n2, m1, m2);
        if (std::int64_t(n1) - m1 != std::int64_t(n2) - m2) {
            CHECK(v == 0.0);
        } else {
            CHECK(v == doctest::Approx(lambda_element(kP, m1, m2, n1, n2)).epsilon(1e-13));
        }
    }
}

TEST_CASE("phase rotation") {
    for (std::uint32_t n = 1; n < 6; ++n) {
        const auto r0 = rotated_element(kP, 0.0, n + 2, n + 1, n, n - 1);
        CHECK(r0.imag() == 0.0);
        CHECK(r0.real() == doctest::Approx(lambda_element(kP, n + 2, n + 1, n, n - 1)).epsilon(1e-14));
    }
    // theta = pi flips odd rays
    const double lam = lambda_element(kP, 3, 2, 2, 1);
    const auto rot = rotated_element(kP, std::numbers::pi, 3, 2, 2, 1);
    CHECK(rot.real() == doctest::Approx(-lam).epsilon(1e-12));
    CHECK(std::abs(rot.imag()) < 1e-12 * std::abs(lam));
    const auto even = rotated_element(kP, std::numbers::pi, 4, 2, 2, 0);
    CHECK(even.real() == doctest::Approx(lambda_element(kP, 4, 2, 2, 0)).epsilon(1e-12));
}

TEST_CASE("diagonal law: both printed forms agree") {
    for (const auto& p : {kP, make_params(0.3, 0.2, 1.0), make_params(0.05, 1.0, 4.0)}) {
        for (std::uint32_t n1 = 0; n1 <= 25; n1 += 2) {
            for (std::uint32_t n2 = 0; n2 <= 25; n2 += 3) {
                const double pd = p_diag(p, n1, n2);
                CHECK(pd == doctest::Approx(lambda_element(p, n1, n2, n1, n2)).epsilon(1e-13));
                CHECK(pd == doctest::Approx(p_diag_nonterminating(p, n1, n2)).epsilon(1e-10));
            }
        }
    }
    CHECK_THROWS_AS(p_diag_nonterminating(make_params(0.5, 1.0, 0.5), 1, 1), DomainError);
}

TEST_CASE("vacuum signal gives a thermal marginal") {
    const auto p = make_params(0.3, 1e-14, 2.0);
    const double nt = p.n_t;
    for (std::uint32_t n = 0; n < 10; ++n) {
        CHECK(p_diag(p, n, 0) == doctest::Approx(std::pow(nt, n) / std::pow(1 + nt, n + 1)).epsilon(1e-10));
        CHECK(p_diag(p, n, 1) < 1e-13);
    }
}

TEST_CASE("truncation cutoff") {
    const auto n = truncation_cutoff(kP, 1e-12);
    CHECK(n > 0);
    CHECK(1.0 - build_dephased_state(kP, n).trace() <= 1e-12);
    std::uint32_t prev = 0;
    for (double ns : {0.1, 0.3, 0.5, 1.0, 1.5}) {
        const auto m = truncation_cutoff(make_params(0.1, ns, 2.0), 1e-12);
        CHECK(m >= prev);
        prev = m;
    }
    CHECK(truncation_cutoff(kP, 0.5) >= 1);
    CHECK_THROWS_AS(truncation_cutoff(kP, 0.0), DomainError);
    CHECK(resolve_cutoff(kP, 1e-12, 8) == 8);
    CHECK(tail_mass_bound(kP, n) <= 1e-12);
    CHECK(marginal_tail_bound(kP, n) >= 0.0);
}

TEST_CASE("cutoff guard") {
    CHECK_THROWS_AS(build_dephased_state(kP, 70000), ResourceError);
}

TEST_CASE("wide constellation is numerically dephased") {
    const std::uint32_t cutoff = 12;
    const auto psk = build_psk_state(kP, 4, cutoff);
    const auto deph = build_dephased_state(kP, cutoff);
    for (std::uint32_t a = 0; a <= cutoff; ++a) {
        for (std::uint32_t b = 0; b <= cutoff; ++b) {
            CHECK(psk.element({a, b}, {a, b}) == deph.element({a, b}, {a, b}));
            if (a > 0 && b > 0) {
                CHECK(psk.element({a, b}, {a - 1, b - 1}) == 0.0);
            }
        }
    }
    CHECK(psk_entropy_gap(kP, 4, cutoff) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(hs_perturbation_norm_sq(kP, 4, cutoff) == 0.0);
}

TEST_CASE("block structure follows the period") {
    const std::uint32_t cutoff = 9;
    const auto s = build_psk_state(kP, 1, cutoff);
    for (const auto& b : s.blocks()) {
        for (const auto& f : b.basis) {
            CHECK(std::int64_t(f.n1) - f.n2 == b.key.delta_modes);
            CHECK(f.n1 % 2 == b.key.residue);
        }
    }
    CHECK(s.period() == 2);
    CHECK(build_dephased_state(kP, cutoff).period() == 0);
    CHECK(s.element({3, 1}, {1, 0}) == 0.0);  // off the ray
    CHECK(s.element({3, 1}, {2, 0}) == 0.0);  // odd shift under period 2
}

TEST_CASE("Gaussian entropy of the unmodulated state") {
    for (const auto& p : {kP, make_params(0.3, 0.2, 1.0), make_params(0.05, 1.0, 4.0)}) {
        const auto cutoff = resolve_cutoff(p, 1e-12);
        const auto r = von_neumann_entropy(build_psk_state(p, 0, cutoff));
        CHECK(std::abs(r.entropy - conditional_entropy(p)) < 1e-6);
        CHECK(r.negative_eig_floor > -1e-9);
        CHECK(r.truncation_tail <= 1e-12);
    }
}

TEST_CASE("weak coupling: product of thermal states") {
    const auto p = make_params(1e-9, 0.4, 0.7);
    const auto cutoff = resolve_cutoff(p, 1e-12);
    const double expect = special::g_entropy(p.n_t) + special::g_entropy(p.n_s);
    CHECK(std::abs(dephased_entropy(p, cutoff) - expect) < 1e-12 * (1 + std::abs(std::log(1e-12))) + 1e-8);
    CHECK(std::abs(holevo_continuous(p, cutoff)) < 1e-7);
}

TEST_CASE("holevo ordering over constellation sizes") {
    const auto cutoff = resolve_cutoff(kP, 1e-12);
    const double cont = holevo_continuous(kP, cutoff);
    double prev = -1.0;
    for (std::uint32_t ell = 0; ell <= 4; ++ell) {
        const double h = holevo_psk(kP, ell, cutoff);
        CHECK(h >= prev - 1e-9);
        CHECK(h <= cont + 1e-9);
        CHECK(cont - h == doctest::Approx(psk_entropy_gap(kP, ell, cutoff)).epsilon(1e-6));
        prev = h;
    }
}

TEST_CASE("state csv export") {
    std::ostringstream os;
    write_state_csv(build_psk_state(kP, 1, 3), os);
    const auto text = os.str();
    CHECK(text.rfind("n1,n2,nbar1,nbar2,value\n", 0) == 0);
    CHECK(text.find("nan") == std::string::npos);
}

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

#include "earate/bounds.hpp"
#include "earate/channel.hpp"
#include "earate/error.hpp"
#include "earate/fock_state.hpp"
#include "earate/special_fn.hpp"

using namespace earate;
using namespace earate::bounds;

namespace {

using ld = long double;

// Independent transcription of the mixed-state entropy lower bound, written
// from the printed expression line by line in extended precision.
ld mixed_entropy_reference(ld e, ld s, ld t) {
    const ld s1 = s + 1, t1 = t + 1;
    const ld u = e * s + t + 1;  // eta n_s + n_t + 1
    const ld v = e * s + 1;
    const ld s12 = s1 * s1;

    ld total = std::log(s1 * t * (t - e + 1) / (t - e)) + s * std::log(s1 / s) + s * std::log(t / (t - e));
    total += (e * s + t) * std::log((t - e + 1) / (t - e));
    total += std::log(t1 * (e - t) / (t * (e - t - 1))) * ((e + 1) * s + t + 1);

    const ld g1 = 1 - 1 / s12 + 2 * e / (s12 * t1 * t1 * t1) + (-1 - 2 * e) / (s12 * t1 * t1) +
                  2 / (s12 * t1) - 2 * e * s1 / (u * u * u) + (2 * e + 2 * e * s + 1) / (u * u) - 2 / u;
    total -= s * std::log(3 + e / (t * (t - e + 1))) * g1;

    const ld g2 = -1 - e - 2 * (e + 1) * s + (e + 1) / s12 - s * (s + 2) * t / s12 -
                  4 * e / (s12 * t1 * t1 * t1) + (3 * e + 2) / (s12 * t1 * t1) - 3 / (s12 * t1) -
                  6 * e * e * s * s12 / (u * u * u * u) +
                  4 * e * s1 * (s * (e + e * s + 2) + 1) / (u * u * u) -
                  s1 * (3 * e + 8 * e * s + 2) / (u * u) + (4 * s + 3) / u;
    total += e * s / (e - 3 * (e - 1) * t + 3 * t * t) * g2;

    const ld g3 = 1 / s12 + (e - (e - 2) * e * s) / (t * v * v * v) + 2 * e / (s12 * t1 * t1 * t1) +
                  (e - 1) / (s12 * t1 * t1) + e / (s12 * t1) - 2 * e * s1 / (v * u * u * u) +
                  (-e + e * e * s * s1 + 1) / (v * v * u * u) + e * ((e - 2) * s - 1) / (v * v * v * u);
    total += e * s / (e - t - 1) * g3;

    const ld g4 = (1 - 2 * u) / (u * u) +
                  (s * (2 * t * (-e + 2 * t + 3) + 2) + s * s * t1 * t1 * t1 + (2 * t + 1) * t1) /
                      (s12 * t1 * t1 * t1);
    total += t * (-e + t + 1) / (e + 3 * t * (-e + t + 1)) * g4;
    return total;
}

}  // namespace

TEST_CASE("mixed entropy: two transcriptions agree") {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> eta(1e-3, 0.999), lg(-3.0, 1.0);
    int compared = 0;
    double worst = 0.0;
    while (compared < 1000) {
        const auto p = make_params(eta(rng), std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)));
        const auto v = validity_check(p);
        if (!v.valid || !v.nt_gt_eta) {
            continue;
        }
        const double got = mixed_entropy_terms(p).total();
        const double ref = static_cast<double>(mixed_entropy_reference(p.eta, p.n_s, p.n_t));
        const double rel = std::abs(got - ref) / std::max(1.0, std::abs(ref));
        worst = std::max(worst, rel);
        ++compared;
    }
    MESSAGE("worst relative difference " << worst);
    CHECK(worst < 1e-12);
}

TEST_CASE("fidelity bound and its companions") {
    const auto p = make_params(0.1, 0.5, 2.0);
    const double x = 0.05 / 2.8;
    CHECK(*fidelity_gap_bound(p, 3).value == doctest::Approx(std::pow(x, 8) / (1 - std::pow(x, 8))).epsilon(1e-12));
    CHECK(*fidelity_gap_bound(p, 3).value == doctest::Approx(1.034e-14).epsilon(1e-3));
    CHECK(*fidelity_remainder_magnitude(p, 3).value == doctest::Approx(std::pow(x, 12)).epsilon(1e-12));
    CHECK(*trace_distance_bound(p, 3).value == doctest::Approx(2.033e-7).epsilon(1e-3));
    CHECK_THROWS_AS(trace_distance_bound(p, 0), earate::DomainError);
    CHECK(*fidelity_gap_bound(make_params(0.1, 1e-12, 2.0), 2).value < 1e-40);
    // td(ell)^2 / td(ell+1) approaches 2 as x^L vanishes
    const double r = std::pow(*trace_distance_bound(p, 3).value, 2) / *trace_distance_bound(p, 4).value;
    CHECK(r == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("mask precedence") {
    const auto bad = make_params(1.0, 1.0, 5.0);  // n_t = 0: outside validity
    CHECK(fidelity_gap_bound(bad, 2).reason == MaskReason::lemma1_invalid);
    CHECK(achievable_rate_closed_form(bad).reason == MaskReason::lemma1_invalid);
    CHECK(achievable_rate_closed_form(make_params(0.1, 1.0, 0.05)).reason == MaskReason::lemma1_invalid);
    const auto low = make_params(0.5, 0.01, 0.5);  // valid but n_t <= eta
    CHECK(validity_check(low).valid);
    CHECK(achievable_rate_closed_form(low).reason == MaskReason::nt_le_eta);
    CHECK(mask_reason_code(MaskReason::nt_le_eta) == "NT_LE_ETA");
    CHECK(mask_reason_code(MaskReason::none).empty());
    const auto vac = make_limit_params(0.3, 0.0, 1.0);
    CHECK(advantage_ratio(vac, std::nullopt).ratio_optimal.reason == MaskReason::c_classical_zero);
}

TEST_CASE("penalty variants and the proof form") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> eta(0.01, 0.9), lg(-2.0, 1.0);
    int n = 0;
    while (n < 300) {
        const auto p = make_params(eta(rng), std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)));
        if (!validity_check(p).valid) {
            continue;
        }
        ++n;
        for (std::uint32_t ell = 0; ell <= 4; ++ell) {
            const auto sym = continuity_penalty(p, ell, PolyVariant::symmetrized);
            const auto proof = continuity_penalty_proof_form(p, ell);
            REQUIRE(sym.value.has_value());
            CHECK(*sym.value == doctest::Approx(*proof.value).epsilon(1e-9));
            CHECK(continuity_penalty(p, ell, PolyVariant::printed).value.has_value());
        }
    }
    // variants coincide once the L-independent terms stop mattering
    const auto p = make_params(0.1, 0.5, 2.0);
    CHECK(*continuity_penalty(p, 0, PolyVariant::printed).value !=
          *continuity_penalty(p, 0, PolyVariant::symmetrized).value);
}

TEST_CASE("symmetrized polynomials reproduce the geometric sums") {
    const auto r = reduced(make_params(0.3, 0.2, 1.0));
    const auto c = proof_coefficients(r);
    const double k = 1 - r.a - r.b + r.a * r.b - r.a * r.b * r.z;
    CHECK(c.c0 == doctest::Approx(k * k));
    for (double big_l : {1.0, 2.0, 8.0}) {
        const auto pp = penalty_polynomials(r, big_l, PolyVariant::symmetrized);
        double sum_at_one = 0.0;
        for (double v : pp) {
            sum_at_one += v;
        }
        // sum of P_i equals the q -> 1 residue 24 C4 L^4
        CHECK(sum_at_one == doctest::Approx(24.0 * c.c4 * std::pow(big_l, 4)).epsilon(1e-10));
        CHECK(pp[4] == doctest::Approx(c.c0));
    }
    CHECK(penalty_ratio(r) == doctest::Approx(convergence_base(make_params(0.3, 0.2, 1.0))).epsilon(1e-12));
}

TEST_CASE("penalty limits") {
    const auto p = make_params(0.1, 0.5, 2.0);
    CHECK(*continuity_penalty(p, 8).value < 1e-200);
    CHECK(*continuity_penalty(make_params(0.1, 1e-13, 2.0), 2).value < 1e-40);
    double prev = 1e300;
    for (std::uint32_t ell = 0; ell <= 6; ++ell) {
        const double v = *continuity_penalty(p, ell).value;
        CHECK(v < prev);
        prev = v;
        CHECK(*psk_achievable_rate(p, ell).value <= *achievable_rate_closed_form(p).value);
    }
    CHECK(*psk_achievable_rate(p, 8).value == doctest::Approx(*achievable_rate_closed_form(p).value).epsilon(1e-14));
}

TEST_CASE("closed form decomposition and dominance") {
    for (const auto& p : {make_params(0.1, 0.5, 2.0), make_params(0.001, 0.1, 5.0), make_params(1e-4, 1.0, 5.0)}) {
        const double mixed = *mixed_entropy_lower_bound(p).value;
        const double closed = *achievable_rate_closed_form(p).value;
        CHECK(closed + conditional_entropy(p) == doctest::Approx(mixed).epsilon(1e-14));
        const auto cutoff = resolve_cutoff(p, 1e-12);
        CHECK(mixed <= dephased_entropy(p, cutoff) + 1e-6);
        CHECK(closed <= holevo_continuous(p, cutoff) + 1e-6);
    }
    CHECK(*achievable_rate_closed_form(make_params(1e-4, 1.0, 5.0)).value <= 0.0);
}

TEST_CASE("advantage ratio clamps vacuous rates") {
    const auto p = make_params(0.1, 0.5, 2.0);
    const auto r = advantage_ratio(p, 3);
    CHECK(*psk_achievable_rate(p, 3).value < 0.0);
    CHECK(*r.ratio_psk.value == 0.0);
    CHECK(*r.ratio_optimal.value > 1.0);
    const auto q = make_params(0.1, 1e-3, 11.1);
    const auto rq = advantage_ratio(q, 6);
    CHECK(*rq.ratio_psk.value > 1.0);
    CHECK(*rq.ratio_psk.value <= *rq.ratio_optimal.value);
}

TEST_CASE("variant names") {
    CHECK(parse_poly_variant("printed") == PolyVariant::printed);
    CHECK(parse_poly_variant("symmetrized") == PolyVariant::symmetrized);
    CHECK_FALSE(parse_poly_variant("other").has_value());
    CHECK(constellation_size(6) == 64.0);
}

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

#include "earate/bounds.hpp"
#include "earate/channel.hpp"
#include "earate/error.hpp"
#include "earate/fock_state.hpp"
#include "earate/oracle.hpp"

using namespace earate;

TEST_CASE("tmsv coefficients") {
    const auto v = oracle::tmsv_vector(0.5, 40);
    double norm = 0.0;
    for (double x : v) {
        norm += x * x;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v[0] == doctest::Approx(std::sqrt(1.0 / 1.5)));
    CHECK(v[2] == doctest::Approx(std::sqrt(0.25 / std::pow(1.5, 3))));
}

TEST_CASE("beamsplitter is unitary and conserves photons") {
    const double eta = 0.37;
    CHECK(oracle::beamsplitter_element(eta, 1, 1, 3, 0) == 0.0);
    for (std::uint32_t n1 = 0; n1 <= 6; ++n1) {
        for (std::uint32_t n2 = 0; n2 <= 6; ++n2) {
            const std::uint32_t total = n1 + n2;
            double col = 0.0;
            for (std::uint32_t m1 = 0; m1 <= total; ++m1) {
                const double b = oracle::beamsplitter_element(eta, m1, total - m1, n1, n2);
                col += b * b;
            }
            CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // transmitted single photon
    CHECK(std::abs(oracle::beamsplitter_element(eta, 1, 0, 1, 0)) == doctest::Approx(std::sqrt(eta)));
}

TEST_CASE("environment cutoff") {
    CHECK(oracle::environment_cutoff(0.0) == 0);
    const auto n = oracle::environment_cutoff(2.0);
    const double w = 1.0 - std::pow(2.0 / 3.0, n + 1);
    CHECK(w >= 1.0 - 1e-12);
    CHECK(oracle::environment_cutoff(2.0, {1e-12, 17}) == 17);
}

TEST_CASE("dense channel output matches the analytic elements") {
    const auto p = make_params(0.3, 0.2, 1.0);
    const std::uint32_t cutoff = 5;
    const auto dense = oracle::simulate_channel_output(p, 0.0, cutoff);
    CHECK(dense.entries.rows() == 36);
    double worst = 0.0;
    for (std::uint32_t a = 0; a <= cutoff; ++a) {
        for (std::uint32_t b = 0; b <= cutoff; ++b) {
            for (std::uint32_t c = 0; c <= cutoff; ++c) {
                for (std::uint32_t d = 0; d <= cutoff; ++d) {
                    worst = std::max(worst, std::abs(dense.at(a, b, c, d) - lambda_element(p, a, b, c, d)));
                }
            }
        }
    }
    CHECK(worst < 1e-10);
    CHECK((dense.entries - dense.entries.adjoint()).norm() < 1e-13);
}

TEST_CASE("dense guards") {
    const auto p = make_params(0.3, 0.2, 1.0);
    CHECK_THROWS_AS(oracle::simulate_channel_output(p, 0.0, oracle::kMaxDenseCutoff + 1), ResourceError);
    CHECK_THROWS_AS(oracle::simulate_psk_output(p, 13, 4), ResourceError);
}

TEST_CASE("psk mixture, dephasing and trace norm") {
    const auto p = make_params(0.3, 0.2, 1.0);
    const std::uint32_t cutoff = 8;
    const auto mix = oracle::simulate_psk_output(p, 1, cutoff);
    const auto deph = oracle::dephase(mix);
    CHECK(oracle::trace_norm_difference(deph, deph) == doctest::Approx(0.0));
    for (std::uint32_t a = 0; a <= cutoff; ++a) {
        CHECK(deph.at(a, 0, a, 0).real() == doctest::Approx(p_diag(p, a, 0)).epsilon(1e-9));
    }
    // the mixture keeps only even rays
    CHECK(std::abs(mix.at(2, 1, 1, 0)) < 1e-15);
    CHECK(std::abs(mix.at(3, 2, 1, 0)) > 1e-6);
    const double td = oracle::trace_norm_difference(mix, deph);
    CHECK(td > 0.0);
    CHECK(td <= *bounds::trace_distance_bound(p, 1).value);
    CHECK(oracle::dense_entropy(mix) <= oracle::dense_entropy(deph) + 1e-12);
}

TEST_CASE("direct series sit below the closed bounds") {
    for (const auto& p : {make_params(0.1, 0.5, 2.0), make_params(0.3, 0.2, 1.0)}) {
        const auto cutoff = resolve_cutoff(p, 1e-12);
        for (std::uint32_t ell = 1; ell <= 2; ++ell) {
            const double fid = oracle::direct_fidelity_series(p, ell, cutoff);
            CHECK(fid >= 0.0);
            CHECK(fid <= *bounds::fidelity_gap_bound(p, ell).value);
            const double ent = oracle::direct_entropy_series(p, ell, cutoff);
            CHECK(ent >= 0.0);
            CHECK(ent == doctest::Approx(psk_entropy_gap(p, ell, cutoff)).epsilon(0.2));
        }
    }
}

TEST_CASE("environment truncation independence") {
    for (double nb : {0.5, 2.0, 5.0}) {
        const auto p = make_params(0.3, 0.2, nb);
        const std::uint32_t cutoff = 6;
        const auto n_env = oracle::environment_cutoff(nb);
        const auto base = oracle::simulate_channel_output(p, 0.0, cutoff, {1e-12, n_env});
        const auto doubled = oracle::simulate_channel_output(p, 0.0, cutoff, {1e-12, 2 * n_env});
        CHECK((base.entries - doubled.entries).cwiseAbs().maxCoeff() < 1e-10);
    }
}

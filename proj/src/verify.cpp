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

#include "earate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "earate/bounds.hpp"
#include "earate/fock_state.hpp"
#include "earate/oracle.hpp"
#include "earate/special_fn.hpp"
#include "earate/study.hpp"

namespace earate {

namespace {

using bounds::PolyVariant;

std::string point_label(const ChannelParams& p) {
    return fmt::format("({:g}, {:g}, {:g})", p.eta, p.n_s, p.n_b);
}

CheckResult judge(std::string name, double residual, double tol, std::string detail = {},
                  bool warn_only = false) {
    CheckResult c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tol;
    c.detail = std::move(detail);
    const bool ok = residual <= tol;  // NaN fails
    c.status = ok ? CheckStatus::pass : (warn_only ? CheckStatus::warn : CheckStatus::fail);
    return c;
}

double rel_diff(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

void oracle_equivalence(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    const std::uint32_t cutoff = opt.level == VerifyLevel::full ? oracle::kMaxDenseCutoff : 6;
    for (const auto& p : reference_points()) {
        const auto dense = oracle::simulate_channel_output(p, 0.0, cutoff);
        double worst = 0.0;
        for (std::uint32_t n1 = 0; n1 <= cutoff; ++n1) {
            for (std::uint32_t n2 = 0; n2 <= cutoff; ++n2) {
                for (std::uint32_t m1 = 0; m1 <= cutoff; ++m1) {
                    for (std::uint32_t m2 = 0; m2 <= cutoff; ++m2) {
                        const double analytic = opt.element(p, n1, n2, m1, m2);
                        worst = std::max(worst, std::abs(dense.at(n1, n2, m1, m2) - analytic));
                    }
                }
            }
        }
        out.push_back(judge("oracle_equivalence " + point_label(p), worst, 1e-8,
                            fmt::format("indices <= {}", cutoff)));
    }
}

void oracle_phase_covariance(std::vector<CheckResult>& out) {
    const auto p = reference_points().front();
    const double theta = std::numbers::pi / 4.0;
    const std::uint32_t cutoff = 6;
    const auto r0 = oracle::simulate_channel_output(p, 0.0, cutoff);
    const auto rt = oracle::simulate_channel_output(p, theta, cutoff);
    double worst = 0.0;
    for (std::uint32_t n1 = 0; n1 <= cutoff; ++n1) {
        for (std::uint32_t n2 = 0; n2 <= cutoff; ++n2) {
            for (std::uint32_t m1 = 0; m1 <= cutoff; ++m1) {
                for (std::uint32_t m2 = 0; m2 <= cutoff; ++m2) {
                    const double delta = static_cast<double>(n1) - m1;
                    const auto expect = std::polar(1.0, theta * delta) * r0.at(n1, n2, m1, m2);
                    worst = std::max(worst, std::abs(rt.at(n1, n2, m1, m2) - expect));
                }
            }
        }
    }
    out.push_back(judge("oracle_phase_covariance " + point_label(p), worst, 1e-10));
}

void oracle_gaussian_entropy(std::vector<CheckResult>& out) {
    // the thermal tail beyond 20 photons must stay well below 1e-5
    for (const auto& p : {make_params(0.3, 0.2, 1.0), make_params(0.5, 0.1, 0.5)}) {
        const auto dense = oracle::simulate_channel_output(p, 0.0, 20);
        const double s = oracle::dense_entropy(dense);
        out.push_back(judge("oracle_gaussian_entropy " + point_label(p),
                            std::abs(s - conditional_entropy(p)), 1e-5, "dense cutoff 20"));
    }
}

void trace_distance_dominance(std::vector<CheckResult>& out) {
    const auto p = make_params(0.3, 0.2, 1.0);
    const std::uint32_t cutoff = 10;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint32_t ell = 1; ell <= 3; ++ell) {
        const auto mix = oracle::simulate_psk_output(p, ell, cutoff);
        const double measured = oracle::trace_norm_difference(mix, oracle::dephase(mix));
        const double bound = *bounds::trace_distance_bound(p, ell).value;
        worst = std::max(worst, measured - bound);
    }
    out.push_back(judge("trace_distance_dominance " + point_label(p), std::max(worst, 0.0), 0.0,
                        fmt::format("max(measured - bound) = {:.3e}, ell 1..3, dense cutoff {}",
                                    worst, cutoff)));
}

void normalization(std::vector<CheckResult>& out) {
    for (const auto& p : reference_points()) {
        const auto cutoff = resolve_cutoff(p, kDefaultTailTol);
        const double defect = 1.0 - build_dephased_state(p, cutoff).trace();
        // a trace above one by more than rounding is as wrong as a large tail
        const double residual = defect < -1e-14 ? std::abs(defect) + 1.0 : defect;
        out.push_back(judge("normalization " + point_label(p), residual,
                            kDefaultTailTol, fmt::format("cutoff {}", cutoff)));
    }
}

void p_form_equivalence(std::vector<CheckResult>& out) {
    double worst = 0.0;
    std::size_t samples = 0;
    for (const auto& p : standard_grid()) {
        if (!(p.n_t > p.eta)) {
            continue;
        }
        for (std::uint32_t n1 = 0; n1 <= 30; n1 += 3) {
            for (std::uint32_t n2 = 0; n2 <= 30; n2 += 5) {
                worst = std::max(worst, rel_diff(p_diag_nonterminating(p, n1, n2), p_diag(p, n1, n2)));
                ++samples;
            }
        }
    }
    out.push_back(judge("p_form_equivalence", worst, 1e-10, fmt::format("{} samples", samples)));
}

void gaussian_entropy(std::vector<CheckResult>& out) {
    for (const auto& p : reference_points()) {
        const auto cutoff = resolve_cutoff(p, kDefaultTailTol);
        const double s = von_neumann_entropy(build_psk_state(p, 0, cutoff)).entropy;
        out.push_back(judge("gaussian_entropy " + point_label(p),
                            std::abs(s - conditional_entropy(p)), 1e-6,
                            fmt::format("cutoff {}", cutoff)));
    }
}

void selection_rule(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    const auto p = reference_points().front();
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<std::uint32_t> idx(0, 40);
    std::size_t nonzero = 0;
    std::size_t tried = 0;
    while (tried < 10000) {
        const std::uint32_t n1 = idx(rng), n2 = idx(rng), m1 = idx(rng), m2 = idx(rng);
        if (static_cast<std::int64_t>(n1) - m1 == static_cast<std::int64_t>(n2) - m2) {
            continue;
        }
        ++tried;
        if (opt.element(p, n1, n2, m1, m2) != 0.0) {
            ++nonzero;
        }
    }
    out.push_back(judge("selection_rule", static_cast<double>(nonzero), 0.0,
                        "10000 off-ray quadruples"));
}

void fidelity_dominance(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    const auto grid = opt.level == VerifyLevel::full ? standard_grid() : reference_points();
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t violations = 0;
    for (const auto& p : grid) {
        const auto cutoff = resolve_cutoff(p, kDefaultTailTol);
        for (std::uint32_t ell = 1; ell <= 5; ++ell) {
            const double series = oracle::direct_fidelity_series(p, ell, cutoff);
            const double bound = *bounds::fidelity_gap_bound(p, ell).value;
            worst = std::max(worst, series - bound);
            violations += series > bound;
        }
    }
    out.push_back(judge("fidelity_dominance", static_cast<double>(violations), 0.0,
                        fmt::format("{} points x ell 1..5, max(series - bound) = {:.3e}",
                                    grid.size(), worst)));
}

void closed_form_dominance(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    std::vector<ChannelParams> grid;
    if (opt.level == VerifyLevel::full) {
        for (double eta : {0.1, 0.001}) {
            const auto g = dominance_grid(eta, 20, 10);
            grid.insert(grid.end(), g.begin(), g.end());
        }
    } else {
        grid = reference_points();
        const auto g = dominance_grid(0.1, 4, 3);
        grid.insert(grid.end(), g.begin(), g.end());
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& p : grid) {
        const auto cutoff = resolve_cutoff(p, kDefaultTailTol);
        const double numeric = holevo_continuous(p, cutoff);
        const double closed = *bounds::achievable_rate_closed_form(p).value;
        worst = std::max(worst, closed - numeric);
    }
    out.push_back(judge("closed_form_dominance", worst, 1e-6,
                        fmt::format("{} points, max(closed - numeric)", grid.size())));
}

void decomposition_identity(std::vector<CheckResult>& out) {
    double worst = 0.0;
    for (const auto& p : standard_grid()) {
        const double mixed = *bounds::mixed_entropy_lower_bound(p).value;
        const double closed = *bounds::achievable_rate_closed_form(p).value;
        worst = std::max(worst, std::abs(closed + conditional_entropy(p) - mixed) /
                                    std::max(1.0, std::abs(mixed)));
    }
    out.push_back(judge("decomposition_identity", worst, 1e-12));
}

void entropy_ordering(std::vector<CheckResult>& out) {
    double worst = 0.0;
    for (const auto& p : reference_points()) {
        const auto cutoff = resolve_cutoff(p, kDefaultTailTol);
        double prev = psk_entropy_gap(p, 0, cutoff);
        worst = std::max(worst, -prev - 1e-8);
        for (std::uint32_t ell = 1; ell <= 5; ++ell) {
            const double gap = psk_entropy_gap(p, ell, cutoff);
            // S(ell) <= S(ell+1) + 1e-8 and S(ell+1) <= S(dephased) + 2e-8
            worst = std::max({worst, gap - prev - 1e-8, -gap - 2e-8});
            prev = gap;
        }
    }
    out.push_back(judge("entropy_ordering", worst, 0.0, "dephasing chain, ell 0..5", true));
}

void convergence(std::vector<CheckResult>& out) {
    for (const auto& p : reference_points()) {
        const auto cutoff = resolve_cutoff(p, kDefaultTailTol);
        const auto c = convergence_slopes(p, 5, cutoff);
        out.push_back(judge("convergence_monotone " + point_label(p), c.decreasing ? 0.0 : 1.0,
                            0.0));
        double excess = -std::numeric_limits<double>::infinity();
        std::string slopes;
        for (std::size_t i = 0; i < c.slopes.size(); ++i) {
            excess = std::max(excess, c.slopes[i] - (c.log_base + 0.1));
            slopes += fmt::format("{}{:.3f}", i ? " " : "", c.slopes[i]);
        }
        out.push_back(judge("convergence_slope " + point_label(p), std::max(excess, 0.0), 0.0,
                            fmt::format("ln x = {:.3f}, slopes [{}]", c.log_base, slopes), true));
    }
}

void hypergeometric_identities(const VerifyOptions& opt, std::vector<CheckResult>& out) {
    using namespace special;
    const std::uint32_t nmax = opt.level == VerifyLevel::full ? 30 : 12;

    // Euler transform on terminating cases
    double euler = 0.0;
    for (std::uint32_t gamma = 1; gamma <= 5; ++gamma) {
        for (double z : {0.05, 0.3, 0.6, 0.9}) {
            for (std::uint32_t n1 = 0; n1 <= nmax; n1 += 3) {
                for (std::uint32_t n2 = 0; n2 <= nmax; n2 += 2) {
                    const double lhs = log_hyp2f1_terminating(n1, n2, gamma, z);
                    const double rhs = (gamma + n1 + n2) * std::log1p(-z) +
                                       log_hyp2f1_nonterminating(gamma + n1, gamma + n2, gamma, z);
                    euler = std::max(euler, std::abs(std::expm1(lhs - rhs)));
                }
            }
        }
    }
    out.push_back(judge("hyp_euler_transform", euler, 1e-10));

    // Gauss summation at z = 1 with a terminating upper parameter. Two
    // families: beta = -n2 (same-sign terms, any size) and positive beta with
    // small n, where the alternating series stays well conditioned.
    struct GaussCase {
        std::uint32_t n;
        double b;
        double c;
    };
    std::vector<GaussCase> gauss_cases;
    for (std::uint32_t n = 0; n <= nmax; ++n) {
        for (std::uint32_t m = 0; m <= nmax; m += 3) {
            for (double c : {1.0, 2.0, 3.5, 7.0}) {
                gauss_cases.push_back({n, -static_cast<double>(m), c});
            }
        }
    }
    for (std::uint32_t n = 0; n <= 8; ++n) {
        for (double b : {0.5, 1.0, 3.25}) {
            for (double c : {4.0, 5.5, 9.0}) {
                gauss_cases.push_back({n, b, c});
            }
        }
    }
    double gauss = 0.0;
    double chu = 0.0;
    for (const auto& g : gauss_cases) {
        const double series = hyp2f1({-static_cast<double>(g.n), g.b, g.c, 1.0});
        const double closed = std::exp(log_gamma(g.c) + log_gamma(g.c + g.n - g.b) -
                                       log_gamma(g.c + g.n) - log_gamma(g.c - g.b));
        gauss = std::max(gauss, rel_diff(series, closed));
        chu = std::max(chu, rel_diff(series, chu_vandermonde(g.n, g.b, g.c)));
    }
    out.push_back(judge("hyp_gauss", gauss, 1e-10, fmt::format("{} cases", gauss_cases.size())));

    // Chu-Vandermonde: Pochhammer form above and exact binomial convolution
    auto binom = [](unsigned n, unsigned k) {
        unsigned __int128 r = 1;
        for (unsigned i = 1; i <= k; ++i) {
            r = r * (n - k + i) / i;
        }
        return r;
    };
    std::size_t mismatches = 0;
    for (unsigned r = 0; r <= 40; r += opt.level == VerifyLevel::full ? 1 : 5) {
        for (unsigned s = 0; s <= 40; s += opt.level == VerifyLevel::full ? 1 : 5) {
            for (unsigned n = 0; n <= r + s; ++n) {
                unsigned __int128 lhs = 0;
                for (unsigned k = 0; k <= std::min(n, r); ++k) {
                    if (n - k <= s) {
                        lhs += binom(r, k) * binom(s, n - k);
                    }
                }
                mismatches += lhs != binom(r + s, n);
            }
        }
    }
    out.push_back(judge("hyp_chu_vandermonde", std::max(chu, static_cast<double>(mismatches)),
                        1e-10, fmt::format("binomial mismatches {}", mismatches)));

    // ratio and growth bounds (tolerance for the equality cases at alpha = 1)
    const std::uint32_t amax = opt.level == VerifyLevel::full ? 50 : 12;
    constexpr double kRel = 1e-12;
    std::size_t ratio_bad = 0;
    std::size_t growth_bad = 0;
    std::size_t cases = 0;
    for (std::uint32_t alpha = 1; alpha <= amax; ++alpha) {
        for (std::uint32_t beta = 1; beta <= amax; ++beta) {
            for (int zi = 1; zi <= 19; ++zi) {
                const double z = 0.05 * zi;
                const double upper_log = log_hyp2f1_nonterminating(alpha + 1.0, beta + 1.0, 1, z);
                const double lower_log = log_hyp2f1_nonterminating(alpha, beta, 1, z);
                const double log_ratio = upper_log - lower_log;
                const auto rb = f_ratio_bounds(alpha, beta, z);
                ratio_bad += log_ratio < std::log(rb.lower) - kRel ||
                             log_ratio > std::log(rb.upper) + kRel;
                growth_bad += upper_log > std::log(f_growth_bound(alpha, beta, z)) + kRel;
                ++cases;
            }
        }
    }
    out.push_back(judge("hyp_ratio_bounds", static_cast<double>(ratio_bad), 0.0,
                        fmt::format("{} cases", cases)));
    out.push_back(judge("hyp_growth_bound", static_cast<double>(growth_bad), 0.0,
                        fmt::format("{} cases", cases)));
}

void penalty_consistency(std::vector<CheckResult>& out) {
    for (auto variant : {PolyVariant::printed, PolyVariant::symmetrized}) {
        double worst = -std::numeric_limits<double>::infinity();
        std::size_t compared = 0;
        for (const auto& p : standard_grid()) {
            const auto cutoff = resolve_cutoff(p, kDefaultTailTol);
            for (std::uint32_t ell = 1; ell <= 5; ++ell) {
                const double nu = std::sqrt(hs_perturbation_norm_sq(p, ell, cutoff));
                if (!(nu < 0.1)) {
                    continue;
                }
                const auto penalty = bounds::continuity_penalty(p, ell, variant);
                const double series = oracle::direct_entropy_series(p, ell, cutoff);
                worst = std::max(worst, series - 10.0 * nu * nu * nu - *penalty.value);
                ++compared;
            }
        }
        out.push_back(judge(fmt::format("penalty_consistency[{}]", bounds::poly_variant_name(variant)),
                            std::max(worst, 0.0), 0.0,
                            fmt::format("{} comparisons, max(series - slack - penalty) = {:.3e}",
                                        compared, worst),
                            true));
    }
}

}  // namespace

std::string_view check_status_name(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::pass:
            return "PASS";
        case CheckStatus::warn:
            return "WARN";
        case CheckStatus::fail:
            return "FAIL";
    }
    return "FAIL";
}

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
    VerifyOptions opt = options;
    if (!opt.element) {
        opt.element = [](const ChannelParams& p, std::uint32_t n1, std::uint32_t n2,
                         std::uint32_t m1, std::uint32_t m2) { return lambda_element(p, n1, n2, m1, m2); };
    }
    std::vector<CheckResult> out;
    oracle_equivalence(opt, out);
    oracle_phase_covariance(out);
    if (opt.level == VerifyLevel::full) {
        oracle_gaussian_entropy(out);
    }
    trace_distance_dominance(out);
    selection_rule(opt, out);
    normalization(out);
    p_form_equivalence(out);
    gaussian_entropy(out);
    fidelity_dominance(opt, out);
    closed_form_dominance(opt, out);
    decomposition_identity(out);
    entropy_ordering(out);
    convergence(out);
    hypergeometric_identities(opt, out);
    penalty_consistency(out);
    return out;
}

std::string format_check(const CheckResult& c) {
    return fmt::format("{}  {}  residual={:.3e} tol={:.1e}{}{}", check_status_name(c.status), c.name,
                       c.residual, c.tolerance, c.detail.empty() ? "" : "  ", c.detail);
}

}  // namespace earate

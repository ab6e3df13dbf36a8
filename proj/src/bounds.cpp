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

#include "earate/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "earate/error.hpp"
#include "earate/special_fn.hpp"

namespace earate::bounds {

namespace {

double sq(double v) { return v * v; }
double cube(double v) { return v * v * v; }

// Shared validity gate; the first failing condition names the mask.
MaskReason lemma1_gate(const ChannelParams& p) {
    return validity_check(p).valid ? MaskReason::none : MaskReason::lemma1_invalid;
}

MaskReason closed_form_gate(const ChannelParams& p) {
    const auto v = validity_check(p);
    if (!v.valid) {
        return MaskReason::lemma1_invalid;
    }
    if (!v.nt_gt_eta) {
        return MaskReason::nt_le_eta;
    }
    return MaskReason::none;
}

MaskReason penalty_gate(const ChannelParams& p) {
    if (!validity_check(p).valid) {
        return MaskReason::lemma1_invalid;
    }
    if (!(penalty_ratio(reduced(p)) < 1.0)) {
        return MaskReason::q_ge_1;
    }
    return MaskReason::none;
}

// x^L computed as exp(L ln x) so that large ell underflows cleanly.
double x_pow(const ChannelParams& p, double power) {
    const double x = convergence_base(p);
    if (x == 0.0) {
        return 0.0;
    }
    return std::exp(power * std::log(x));
}

std::array<double, 5> printed_polynomials(const ReducedParams& r, double big_l) {
    const double a = r.a;
    const double b = r.b;
    const double z = r.z;
    const double ab = a * b;
    const double a2b2 = ab * ab;
    const double a2b = a * ab;
    const double ab2 = ab * b;
    const double k2 = sq(1.0 - a - b + ab - ab * z);
    const double l2 = big_l * big_l;
    const double l3 = l2 * big_l;
    const double l4 = l3 * big_l;
    const double z2 = z * z;
    const double z3 = z2 * z;
    const double z4 = z3 * z;

    std::array<double, 5> out{};
    out[0] = k2 +
             (4 * sq(1 - a) * sq(1 - b) - 4 * (1 - a) * (1 - b) * (-1 + 3 * ab) * z +
              (13 * a2b2 - 3 * a2b - 3 * ab2 - 6 * ab + a + b + 1) * z2 +
              (-6 * a2b2 - a2b - ab2 + 6 * ab) * z3 + a2b2 * z4) *
                 l2 +
             (4 * (1 - a) * (1 - b) * (a + b - 2 * ab) * z +
              (20 * a2b2 - 13 * a2b - 13 * ab2 + 3 * a + 3 * b) * z2 +
              (ab * (-16 * ab + a + b + 8)) * z3 + 4 * a2b2 * z4) *
                 l3 +
             (sq(2 * ab * z - 2 * ab + a + b) * z2) * l4;
    out[1] = -4 * k2 +
             (-4 * sq(1 - a) * sq(1 - b) + 4 * (1 - a) * (1 - b) * (3 * ab - 1) * z +
              (-13 * a2b2 + 3 * a2b + 3 * ab2 + 6 * ab - a - b - 1) * z2 +
              (ab * (6 * ab + a + b - 6)) * z3 - a2b2 * z4) *
                 l2 +
             (12 * (1 - a) * (1 - b) * (a + b - 2 * ab) * z +
              (60 * a2b2 - 39 * a2b - 39 * ab2 + 9 * a + 9 * b) * z2 +
              (3 * ab * (a + b - 16 * ab + 8)) * z3 + 12 * a2b2 * z4) *
                 l3 +
             (11 * sq(-2 * ab + a + b) * z2 + 44 * ab * (-2 * ab + a + b) * z3 + 44 * a2b2 * z4) *
                 l4;
    out[2] = 6 * k2 +
             (-4 * sq(1 - a) * sq(1 - b) + 4 * (1 - a) * (a - b) * (3 * ab - 1) * z +
              (-13 * a2b2 + 3 * a2b + 3 * ab2 + 6 * ab - a - b - 1) * z2 +
              ab * (6 * ab + a + b - 6) * z3 - a2b2 * z4) *
                 l2 +
             (12 * (1 - a) * (a - b) * (a + b - 2 * ab) * z +
              (60 * a2b2 - 39 * a2b - 39 * ab2 + 9 * a + 9 * b) * z2 +
              3 * ab * (-16 * ab + a + b + 8) * z3 + 12 * a2b2 * z4) *
                 l3 +
             (11 * sq(-2 * ab + a + b) * z2 + 44 * ab * (-2 * ab + a + b) * z3 + 44 * a2b2 * z4) *
                 l4;
    out[3] = -4 * k2 +
             (4 * sq(1 - a) * sq(a - b) - 4 * (1 - a) * (a - b) * (-1 + 3 * ab) * z +
              (13 * a2b2 - 3 * a2b - 3 * ab2 - 6 * ab + a + b + 1) * z2 +
              (-6 * a2b2 - a2b - ab2 + 6 * ab) * z3 + a2b2 * z4) *
                 l2 +
             (4 * (1 - a) * (1 - b) * (2 * ab - a - b) * z +
              (-20 * a2b2 + 13 * a2b + 13 * ab2 - 3 * a - 3 * b) * z2 +
              (16 * a2b2 - a2b - ab2 - 8 * ab) * z3 - 4 * a2b2 * z4) *
                 l3 +
             (sq(2 * ab * z - 2 * ab + a + b) * z2) * l4;
    out[4] = k2;
    return out;
}

std::array<double, 5> symmetrized_polynomials(const ReducedParams& r, double big_l) {
    const auto c = proof_coefficients(r);
    const double c2 = c.c2 * big_l * big_l;
    const double c3 = c.c3 * big_l * big_l * big_l;
    const double c4 = c.c4 * std::pow(big_l, 4);
    // q^k coefficients of (1-q)^4, (1+q)(1-q)^2, (1+4q+q^2)(1-q), 1+11q+11q^2+q^3
    return {c.c0 + c2 + c3 + c4,
            -4 * c.c0 - c2 + 3 * c3 + 11 * c4,
            6 * c.c0 - c2 - 3 * c3 + 11 * c4,
            -4 * c.c0 + c2 - c3 + c4,
            c.c0};
}

}  // namespace

std::string_view mask_reason_code(MaskReason r) noexcept {
    switch (r) {
        case MaskReason::lemma1_invalid:
            return "LEMMA1_INVALID";
        case MaskReason::nt_le_eta:
            return "NT_LE_ETA";
        case MaskReason::q_ge_1:
            return "Q_GE_1";
        case MaskReason::c_classical_zero:
            return "C_CLASSICAL_ZERO";
        case MaskReason::none:
            break;
    }
    return "";
}

std::string_view poly_variant_name(PolyVariant v) noexcept {
    return v == PolyVariant::printed ? "printed" : "symmetrized";
}

std::optional<PolyVariant> parse_poly_variant(std::string_view s) noexcept {
    if (s == "printed") {
        return PolyVariant::printed;
    }
    if (s == "symmetrized") {
        return PolyVariant::symmetrized;
    }
    return std::nullopt;
}

double constellation_size(std::uint32_t ell) noexcept { return std::ldexp(1.0, static_cast<int>(ell)); }

MaskedValue fidelity_gap_bound(const ChannelParams& p, std::uint32_t ell) {
    if (auto m = lemma1_gate(p); m != MaskReason::none) {
        return MaskedValue::masked(m);
    }
    const double xl = x_pow(p, constellation_size(ell));
    return MaskedValue::of(xl / (1.0 - xl));
}

MaskedValue fidelity_remainder_magnitude(const ChannelParams& p, std::uint32_t ell) {
    if (auto m = lemma1_gate(p); m != MaskReason::none) {
        return MaskedValue::masked(m);
    }
    return MaskedValue::of(x_pow(p, 1.5 * constellation_size(ell)));
}

MaskedValue trace_distance_bound(const ChannelParams& p, std::uint32_t ell) {
    if (ell == 0) {
        throw DomainError("trace-distance bound needs ell >= 1");
    }
    const auto f = fidelity_gap_bound(p, ell);
    if (f.is_masked()) {
        return f;
    }
    return MaskedValue::of(2.0 * std::sqrt(*f.value));
}

ProofCoefficients proof_coefficients(const ReducedParams& r) {
    const double a = r.a;
    const double b = r.b;
    const double z = r.z;
    const double ab = a * b;
    ProofCoefficients c;
    c.c0 = sq(penalty_denominator(r));
    c.c2 = 4 * sq(1 - a) * sq(1 - b) + 4 * (1 - a) * (1 - b) * (1 - 3 * ab) * z +
           (1 + a + b - 6 * ab - 3 * a * ab - 3 * ab * b + 13 * ab * ab) * z * z +
           (6 - a - b - 6 * ab) * ab * cube(z) + ab * ab * std::pow(z, 4);
    c.c3 = 4 * (1 - a) * (1 - b) * (a + b - 2 * ab) * z +
           (3 * a + 3 * b - 13 * a * ab - 13 * ab * b + 20 * ab * ab) * z * z +
           (8 * ab + a * ab + ab * b - 16 * ab * ab) * cube(z) + 4 * ab * ab * std::pow(z, 4);
    c.c4 = sq(a + b - 2 * ab * (1 - z)) * z * z;
    return c;
}

std::array<double, 5> penalty_polynomials(const ReducedParams& r, double big_l, PolyVariant v) {
    return v == PolyVariant::printed ? printed_polynomials(r, big_l)
                                     : symmetrized_polynomials(r, big_l);
}

double penalty_denominator(const ReducedParams& r) noexcept {
    return 1.0 - r.a - r.b + r.a * r.b - r.a * r.b * r.z;
}

double penalty_ratio(const ReducedParams& r) noexcept { return r.c * r.c / penalty_denominator(r); }

MaskedValue continuity_penalty(const ChannelParams& p, std::uint32_t ell, PolyVariant v) {
    if (auto m = penalty_gate(p); m != MaskReason::none) {
        return MaskedValue::masked(m);
    }
    const auto r = reduced(p);
    const double big_l = constellation_size(ell);
    const double big_q = penalty_ratio(r);
    const double q = big_q == 0.0 ? 0.0 : std::exp(big_l * std::log(big_q));
    if (q == 0.0) {
        return MaskedValue::of(0.0);
    }
    const auto poly = penalty_polynomials(r, big_l, v);
    double series = 0.0;
    double qi = 1.0;
    for (double pi : poly) {
        series += pi * qi;
        qi *= q;
    }
    const double k = penalty_denominator(r);
    return MaskedValue::of(r.d * q / (cube(k) * std::pow(1.0 - q, 5)) * series);
}

MaskedValue continuity_penalty_proof_form(const ChannelParams& p, std::uint32_t ell) {
    if (auto m = penalty_gate(p); m != MaskReason::none) {
        return MaskedValue::masked(m);
    }
    const auto r = reduced(p);
    const auto c = proof_coefficients(r);
    const double big_l = constellation_size(ell);
    const double big_q = penalty_ratio(r);
    const double q = big_q == 0.0 ? 0.0 : std::exp(big_l * std::log(big_q));
    if (q == 0.0) {
        return MaskedValue::of(0.0);
    }
    const double u = 1.0 - q;
    // sum_i i^k q^i for k = 0, 2, 3, 4
    const double s0 = q / u;
    const double s2 = q * (1 + q) / cube(u);
    const double s3 = q * (1 + 4 * q + q * q) / std::pow(u, 4);
    const double s4 = q * (1 + 11 * q + 11 * q * q + cube(q)) / std::pow(u, 5);
    const double k = penalty_denominator(r);
    const double series = c.c0 * s0 + c.c2 * sq(big_l) * s2 + c.c3 * cube(big_l) * s3 +
                          c.c4 * std::pow(big_l, 4) * s4;
    return MaskedValue::of(r.d / cube(k) * series);
}

double MixedEntropyTerms::total() const noexcept {
    special::CompensatedSum s;
    for (double t : {log_terms, noise_terms, hyp_log_term, quartic_term, eta_term, thermal_term}) {
        s.add(t);
    }
    return s.value();
}

MixedEntropyTerms mixed_entropy_terms(const ChannelParams& p) {
    const double e = p.eta;
    const double s = p.n_s;
    const double t = p.n_t;
    const double s1 = s + 1.0;
    const double t1 = t + 1.0;
    const double m = e * s + t + 1.0;  // 1 + mean photon number at Bob
    const double es1 = e * s + 1.0;

    MixedEntropyTerms out;
    out.log_terms = std::log(s1 * t * (t - e + 1.0) / (t - e)) + s * std::log(s1 / s) +
                    s * std::log(t / (t - e));

    out.noise_terms = (e * s + t) * std::log((t - e + 1.0) / (t - e)) +
                      std::log(t1 * (e - t) / (t * (e - t - 1.0))) * ((e + 1.0) * s + t + 1.0);

    out.hyp_log_term =
        -s * std::log(3.0 + e / (t * (t - e + 1.0))) *
        (1.0 - 1.0 / sq(s1) + 2.0 * e / (sq(s1) * cube(t1)) + (-1.0 - 2.0 * e) / (sq(s1) * sq(t1)) +
         2.0 / (sq(s1) * t1) - 2.0 * e * s1 / cube(m) + (2.0 * e + 2.0 * e * s + 1.0) / sq(m) -
         2.0 / m);

    out.quartic_term =
        e * s / (e - 3.0 * (e - 1.0) * t + 3.0 * t * t) *
        (-1.0 - e - 2.0 * (e + 1.0) * s + (e + 1.0) / sq(s1) - s * (s + 2.0) * t / sq(s1) -
         4.0 * e / (sq(s1) * cube(t1)) + (3.0 * e + 2.0) / (sq(s1) * sq(t1)) -
         3.0 / (sq(s1) * t1) - 6.0 * e * e * s * sq(s1) / std::pow(m, 4) +
         4.0 * e * s1 * (s * (e + e * s + 2.0) + 1.0) / cube(m) -
         s1 * (3.0 * e + 8.0 * e * s + 2.0) / sq(m) + (4.0 * s + 3.0) / m);

    out.eta_term = e * s / (e - t - 1.0) *
                   (1.0 / sq(s1) + (e - (e - 2.0) * e * s) / (t * cube(es1)) +
                    2.0 * e / (sq(s1) * cube(t1)) + (e - 1.0) / (sq(s1) * sq(t1)) +
                    e / (sq(s1) * t1) - 2.0 * e * s1 / (es1 * cube(m)) +
                    (-e + e * e * s * s1 + 1.0) / (sq(es1) * sq(m)) +
                    e * ((e - 2.0) * s - 1.0) / (cube(es1) * m));

    out.thermal_term =
        t * (-e + t + 1.0) / (e + 3.0 * t * (-e + t + 1.0)) *
        ((1.0 - 2.0 * m) / sq(m) +
         (s * (2.0 * t * (-e + 2.0 * t + 3.0) + 2.0) + s * s * cube(t1) + (2.0 * t + 1.0) * t1) /
             (sq(s1) * cube(t1)));
    return out;
}

MaskedValue mixed_entropy_lower_bound(const ChannelParams& p) {
    if (auto m = closed_form_gate(p); m != MaskReason::none) {
        return MaskedValue::masked(m);
    }
    return MaskedValue::of(mixed_entropy_terms(p).total());
}

MaskedValue achievable_rate_closed_form(const ChannelParams& p) {
    const auto mixed = mixed_entropy_lower_bound(p);
    if (mixed.is_masked()) {
        return mixed;
    }
    return MaskedValue::of(*mixed.value - conditional_entropy(p));
}

MaskedValue psk_achievable_rate(const ChannelParams& p, std::uint32_t ell, PolyVariant v) {
    const auto rate = achievable_rate_closed_form(p);
    if (rate.is_masked()) {
        return rate;
    }
    const auto penalty = continuity_penalty(p, ell, v);
    if (penalty.is_masked()) {
        return penalty;
    }
    return MaskedValue::of(*rate.value - *penalty.value);
}

AdvantageRatio advantage_ratio(const ChannelParams& p, std::optional<std::uint32_t> ell,
                               PolyVariant v) {
    const auto caps = reference_capacities(p);
    const auto rate = ell ? psk_achievable_rate(p, *ell, v) : achievable_rate_closed_form(p);
    AdvantageRatio out;
    if (!(caps.c_classical > 0.0)) {
        out.ratio_optimal = MaskedValue::masked(MaskReason::c_classical_zero);
        out.ratio_psk = rate.is_masked() ? rate : MaskedValue::masked(MaskReason::c_classical_zero);
        return out;
    }
    out.ratio_optimal = MaskedValue::of(caps.c_ea / caps.c_classical);
    out.ratio_psk = rate.is_masked()
                        ? rate
                        : MaskedValue::of(std::max(*rate.value, 0.0) / caps.c_classical);
    return out;
}

}  // namespace earate::bounds

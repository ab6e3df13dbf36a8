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

#ifndef EARATE_BOUNDS_HPP
#define EARATE_BOUNDS_HPP

// Closed-form convergence and rate bounds for PSK-modulated TMSV.
//
// Notation: x = eta n_s / (1 + n_t), L = 2^ell, K = 1 - a - b + ab - abz and
// Q = c^2 / K (algebraically equal to x).

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "earate/channel.hpp"

namespace earate::bounds {

enum class MaskReason { none, lemma1_invalid, nt_le_eta, q_ge_1, c_classical_zero };

/// "LEMMA1_INVALID", "NT_LE_ETA", "Q_GE_1", "C_CLASSICAL_ZERO" or "" for none.
std::string_view mask_reason_code(MaskReason r) noexcept;

/// A value that is either present or absent with exactly one reason.
struct MaskedValue {
    std::optional<double> value;
    MaskReason reason = MaskReason::none;

    static MaskedValue of(double v) { return {v, MaskReason::none}; }
    static MaskedValue masked(MaskReason r) { return {std::nullopt, r}; }
    bool is_masked() const noexcept { return !value.has_value(); }
};

/// Reading of the penalty polynomials P0..P4.
///   printed:     coefficients as typeset, with "abg" read as abz
///   symmetrized: coefficients regenerated from C0..C4 by the geometric series
enum class PolyVariant { printed, symmetrized };

std::string_view poly_variant_name(PolyVariant v) noexcept;
std::optional<PolyVariant> parse_poly_variant(std::string_view s) noexcept;

/// L = 2^ell as a double (exact for every ell the callers use).
double constellation_size(std::uint32_t ell) noexcept;

// --- fidelity and trace distance -------------------------------------------

/// x^L / (1 - x^L).
MaskedValue fidelity_gap_bound(const ChannelParams& p, std::uint32_t ell);

/// x^{3L/2}: magnitude of the unquantified remainder, never added to the bound.
MaskedValue fidelity_remainder_magnitude(const ChannelParams& p, std::uint32_t ell);

/// 2 sqrt(x^L / (1 - x^L)) via Fuchs-van de Graaf. Throws DomainError for ell = 0.
MaskedValue trace_distance_bound(const ChannelParams& p, std::uint32_t ell);

// --- Holevo-continuity penalty ----------------------------------------------

struct ProofCoefficients {
    double c0 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
};

ProofCoefficients proof_coefficients(const ReducedParams& r);

/// P0..P4 evaluated at (a, b, z, L).
std::array<double, 5> penalty_polynomials(const ReducedParams& r, double big_l, PolyVariant v);

/// 1 - a - b + ab - abz.
double penalty_denominator(const ReducedParams& r) noexcept;

/// c^2 / (1 - a - b + ab - abz).
double penalty_ratio(const ReducedParams& r) noexcept;

/// d q / (K^3 (1-q)^5) sum_i P_i q^i with q = Q^L.
MaskedValue continuity_penalty(const ChannelParams& p, std::uint32_t ell,
                               PolyVariant v = PolyVariant::symmetrized);

/// d / K^3 sum_{i>=1} q^i (C0 + C2 L^2 i^2 + C3 L^3 i^3 + C4 L^4 i^4), summed
/// in closed form.
MaskedValue continuity_penalty_proof_form(const ChannelParams& p, std::uint32_t ell);

// --- achievable rate ---------------------------------------------------------

/// The six displayed line groups of the mixed-entropy lower bound.
struct MixedEntropyTerms {
    double log_terms = 0.0;        ///< ln[...] + n_s ln((n_s+1)/n_s) + n_s ln(n_t/(n_t-eta))
    double noise_terms = 0.0;      ///< (eta n_s + n_t) ln(...) + ln[...] ((eta+1) n_s + n_t + 1)
    double hyp_log_term = 0.0;     ///< -n_s ln[3 + z] ( ... )
    double quartic_term = 0.0;     ///< eta n_s / (eta - 3(eta-1) n_t + 3 n_t^2) ( ... )
    double eta_term = 0.0;         ///< eta n_s / (eta - n_t - 1) ( ... )
    double thermal_term = 0.0;     ///< n_t (n_t - eta + 1) / (eta + 3 n_t (n_t - eta + 1)) ( ... )

    double total() const noexcept;
};

/// Unchecked evaluation; needs n_t > eta for finite logarithms.
MixedEntropyTerms mixed_entropy_terms(const ChannelParams& p);

MaskedValue mixed_entropy_lower_bound(const ChannelParams& p);

/// mixed_entropy_lower_bound - g(mu+ - 1/2) - g(mu- - 1/2). May be negative.
MaskedValue achievable_rate_closed_form(const ChannelParams& p);

/// achievable_rate_closed_form - continuity_penalty, unclamped.
MaskedValue psk_achievable_rate(const ChannelParams& p, std::uint32_t ell,
                                PolyVariant v = PolyVariant::symmetrized);

struct AdvantageRatio {
    MaskedValue ratio_psk;
    MaskedValue ratio_optimal;
};

/// Ratios to the unassisted capacity. With ell absent the continuous closed
/// form is used. Negative rates are clamped to zero before dividing.
AdvantageRatio advantage_ratio(const ChannelParams& p, std::optional<std::uint32_t> ell,
                               PolyVariant v = PolyVariant::symmetrized);

}  // namespace earate::bounds

#endif

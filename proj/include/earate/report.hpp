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

#ifndef EARATE_REPORT_HPP
#define EARATE_REPORT_HPP

// One parameter point's full ledger and its flat JSON / CSV forms.
//
// Field order (JSON keys and CSV columns alike) is the order of
// report_field_names(). Masked values appear as null with a companion
// "<field>_reason" code; fields that do not apply (no ell given, numeric
// evaluation disabled) are null with a null reason.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "earate/bounds.hpp"
#include "earate/channel.hpp"
#include "earate/fock_state.hpp"

namespace earate {

enum class Units { nats, bits };

/// Fixed 17-significant-digit lowercase e-notation.
std::string format_number(double v);

struct ReportOptions {
    std::optional<std::uint32_t> ell;
    std::uint32_t cutoff = 0;  ///< 0 = chosen from tail_tol
    double tail_tol = kDefaultTailTol;
    std::uint32_t max_cutoff = kDefaultMaxCutoff;
    bounds::PolyVariant variant = bounds::PolyVariant::symmetrized;
    bool numeric = true;
    unsigned workers = 0;
};

struct Residual {
    std::string name;
    std::optional<double> value;
    bool entropic = false;  ///< scaled by the display unit
};

struct BoundReport {
    ChannelParams params;
    std::optional<std::uint32_t> ell;
    bounds::PolyVariant variant = bounds::PolyVariant::symmetrized;
    bool lemma1_valid = false;
    bool nt_gt_eta = false;
    double validity_margin = 0.0;
    std::optional<std::uint32_t> cutoff;
    std::optional<double> truncation_tail;

    bounds::MaskedValue fidelity_gap_bound;
    bounds::MaskedValue fidelity_remainder;
    bounds::MaskedValue trace_distance_bound;
    bounds::MaskedValue continuity_penalty;
    bounds::MaskedValue continuity_penalty_printed;
    bounds::MaskedValue continuity_penalty_symmetrized;
    bounds::MaskedValue mixed_entropy_lower_bound;
    bounds::MaskedValue closed_form_rate;
    bounds::MaskedValue psk_rate;
    std::optional<double> holevo_numeric_continuous;
    std::optional<double> holevo_numeric_psk;
    double conditional_entropy = 0.0;
    double c_ea = 0.0;
    double c_classical = 0.0;
    bounds::MaskedValue ratio_psk;
    bounds::MaskedValue ratio_optimal;
    std::vector<Residual> oracle_residuals;

    /// True when the headline rate (psk_rate with ell, closed_form_rate
    /// without) is masked.
    bool masked() const noexcept;
};

/// Cutoff for numerical entropies: the rigorous envelope search where it
/// applies, otherwise the thermal-marginal bound alone; clamped to max_cutoff.
std::uint32_t numeric_cutoff(const ChannelParams& p, double tail_tol, std::uint32_t max_cutoff);

BoundReport make_report(const ChannelParams& p, const ReportOptions& opt);

std::vector<std::string> report_field_names();
std::string report_json(const BoundReport& r, Units u = Units::nats);
std::string report_csv_header();
std::string report_csv_row(const BoundReport& r, Units u = Units::nats);
/// Aligned "name  value" lines for terminals.
std::string report_text(const BoundReport& r, Units u = Units::nats);

}  // namespace earate

#endif

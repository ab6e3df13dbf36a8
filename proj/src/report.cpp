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

#include "earate/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "earate/error.hpp"
#include "earate/oracle.hpp"

namespace earate {

namespace {

using bounds::MaskedValue;

struct Field {
    std::string name;
    std::optional<std::string> json;  ///< rendered JSON value, nullopt = null
    std::string csv;                  ///< rendered CSV cell, empty = null
};

double unit_scale(Units u) { return u == Units::bits ? 1.0 / std::numbers::ln2 : 1.0; }

class FieldList {
public:
    explicit FieldList(Units u) : scale_(unit_scale(u)) {}

    void number(std::string name, std::optional<double> v, bool entropic = false) {
        if (v && std::isfinite(*v)) {
            const auto s = format_number(entropic ? *v * scale_ : *v);
            fields_.push_back({std::move(name), s, s});
        } else {
            fields_.push_back({std::move(name), std::nullopt, ""});
        }
    }

    void masked(const std::string& name, const MaskedValue& v, bool entropic = false) {
        number(name, v.value, entropic);
        const auto code = bounds::mask_reason_code(v.reason);
        if (code.empty()) {
            fields_.push_back({name + "_reason", std::nullopt, ""});
        } else {
            text(name + "_reason", std::string(code));
        }
    }

    void integer(std::string name, std::optional<std::uint64_t> v) {
        if (v) {
            const auto s = fmt::format("{}", *v);
            fields_.push_back({std::move(name), s, s});
        } else {
            fields_.push_back({std::move(name), std::nullopt, ""});
        }
    }

    void boolean(std::string name, bool v) {
        fields_.push_back({std::move(name), v ? "true" : "false", v ? "true" : "false"});
    }

    void text(std::string name, const std::string& v) {
        fields_.push_back({std::move(name), "\"" + v + "\"", v});
    }

    const std::vector<Field>& fields() const { return fields_; }

private:
    double scale_;
    std::vector<Field> fields_;
};

// Absent (not applicable) value: null without a reason.
MaskedValue absent() { return {}; }

const char* const kResidualNames[] = {
    "normalization_defect",   "closed_form_gap",        "psk_entropy_gap",
    "direct_fidelity_series", "direct_entropy_series",  "hs_norm_sq",
};

FieldList build_fields(const BoundReport& r, Units u) {
    FieldList f(u);
    f.number("eta", r.params.eta);
    f.number("n_s", r.params.n_s);
    f.number("n_b", r.params.n_b);
    f.number("n_t", r.params.n_t);
    f.integer("ell", r.ell);
    f.text("units", u == Units::bits ? "bits" : "nats");
    f.text("p_poly_variant", std::string(bounds::poly_variant_name(r.variant)));
    f.boolean("lemma1_valid", r.lemma1_valid);
    f.boolean("nt_gt_eta", r.nt_gt_eta);
    f.number("validity_margin", r.validity_margin);
    f.integer("cutoff", r.cutoff);
    f.number("truncation_tail", r.truncation_tail);
    f.masked("fidelity_gap_bound", r.fidelity_gap_bound);
    f.masked("fidelity_remainder", r.fidelity_remainder);
    f.masked("trace_distance_bound", r.trace_distance_bound);
    f.masked("continuity_penalty", r.continuity_penalty, true);
    f.masked("continuity_penalty_printed", r.continuity_penalty_printed, true);
    f.masked("continuity_penalty_symmetrized", r.continuity_penalty_symmetrized, true);
    f.masked("mixed_entropy_lower_bound", r.mixed_entropy_lower_bound, true);
    f.masked("closed_form_rate", r.closed_form_rate, true);
    f.masked("psk_rate", r.psk_rate, true);
    f.number("holevo_numeric_continuous", r.holevo_numeric_continuous, true);
    f.number("holevo_numeric_psk", r.holevo_numeric_psk, true);
    f.number("conditional_entropy", r.conditional_entropy, true);
    f.number("c_ea", r.c_ea, true);
    f.number("c_classical", r.c_classical, true);
    f.masked("ratio_psk", r.ratio_psk);
    f.masked("ratio_optimal", r.ratio_optimal);
    for (const char* name : kResidualNames) {
        const auto it = std::find_if(r.oracle_residuals.begin(), r.oracle_residuals.end(),
                                     [&](const Residual& x) { return x.name == name; });
        if (it == r.oracle_residuals.end()) {
            f.number(std::string("residual_") + name, std::nullopt);
        } else {
            f.number(std::string("residual_") + name, it->value, it->entropic);
        }
    }
    return f;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.16e}", v); }

bool BoundReport::masked() const noexcept {
    return ell ? psk_rate.is_masked() : closed_form_rate.is_masked();
}

std::uint32_t numeric_cutoff(const ChannelParams& p, double tail_tol, std::uint32_t max_cutoff) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw DomainError("tail_tol must lie in (0, 1)");
    }
    try {
        return resolve_cutoff(p, tail_tol, max_cutoff);
    } catch (const DomainError&) {
        // envelopes diverge outside the validity region
    }
    for (std::uint32_t n = 1; n < max_cutoff; ++n) {
        if (marginal_tail_bound(p, n) <= tail_tol) {
            return n;
        }
    }
    return max_cutoff;
}

BoundReport make_report(const ChannelParams& p, const ReportOptions& opt) {
    using namespace bounds;
    BoundReport r;
    r.params = p;
    r.ell = opt.ell;
    r.variant = opt.variant;
    const auto v = validity_check(p);
    r.lemma1_valid = v.valid;
    r.nt_gt_eta = v.nt_gt_eta;
    r.validity_margin = v.margin;

    if (opt.ell) {
        const std::uint32_t ell = *opt.ell;
        r.fidelity_gap_bound = fidelity_gap_bound(p, ell);
        r.fidelity_remainder = fidelity_remainder_magnitude(p, ell);
        r.trace_distance_bound = ell >= 1 ? trace_distance_bound(p, ell) : absent();
        r.continuity_penalty = continuity_penalty(p, ell, opt.variant);
        r.continuity_penalty_printed = continuity_penalty(p, ell, PolyVariant::printed);
        r.continuity_penalty_symmetrized = continuity_penalty(p, ell, PolyVariant::symmetrized);
        r.psk_rate = psk_achievable_rate(p, ell, opt.variant);
    }
    r.mixed_entropy_lower_bound = mixed_entropy_lower_bound(p);
    r.closed_form_rate = achievable_rate_closed_form(p);
    r.conditional_entropy = conditional_entropy(p);
    const auto caps = reference_capacities(p);
    r.c_ea = caps.c_ea;
    r.c_classical = caps.c_classical;
    const auto ratio = advantage_ratio(p, opt.ell, opt.variant);
    r.ratio_psk = ratio.ratio_psk;
    r.ratio_optimal = ratio.ratio_optimal;

    // numerical entropies need z, i.e. n_t > 0
    if (opt.numeric && p.n_t > 0.0) {
        const std::uint32_t cutoff =
            opt.cutoff > 0 ? opt.cutoff : numeric_cutoff(p, opt.tail_tol, opt.max_cutoff);
        r.cutoff = cutoff;
        const auto dephased = build_dephased_state(p, cutoff);
        r.truncation_tail = dephased.tail_bound();
        r.holevo_numeric_continuous = holevo_continuous(p, cutoff);
        r.oracle_residuals.push_back({"normalization_defect", 1.0 - dephased.trace(), false});
        if (!r.closed_form_rate.is_masked()) {
            r.oracle_residuals.push_back(
                {"closed_form_gap", *r.holevo_numeric_continuous - *r.closed_form_rate.value, true});
        }
        if (opt.ell) {
            const std::uint32_t ell = *opt.ell;
            const double gap = psk_entropy_gap(p, ell, cutoff, opt.workers);
            r.holevo_numeric_psk = *r.holevo_numeric_continuous - gap;
            r.oracle_residuals.push_back({"psk_entropy_gap", gap, true});
            r.oracle_residuals.push_back(
                {"direct_fidelity_series", oracle::direct_fidelity_series(p, ell, cutoff), false});
            r.oracle_residuals.push_back(
                {"direct_entropy_series", oracle::direct_entropy_series(p, ell, cutoff), true});
            r.oracle_residuals.push_back({"hs_norm_sq", hs_perturbation_norm_sq(p, ell, cutoff), false});
        }
    }
    return r;
}

std::vector<std::string> report_field_names() {
    BoundReport empty;
    std::vector<std::string> out;
    const auto fields = build_fields(empty, Units::nats);
    for (const auto& f : fields.fields()) {
        out.push_back(f.name);
    }
    return out;
}

std::string report_json(const BoundReport& r, Units u) {
    std::string out = "{";
    bool first = true;
    const auto fields = build_fields(r, u);
    for (const auto& f : fields.fields()) {
        out += fmt::format("{}\"{}\":{}", first ? "" : ",", f.name, f.json.value_or("null"));
        first = false;
    }
    out += "}";
    return out;
}

std::string report_csv_header() {
    std::string out;
    const auto names = report_field_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += (i ? "," : "") + names[i];
    }
    return out;
}

std::string report_csv_row(const BoundReport& r, Units u) {
    std::string out;
    const auto fields = build_fields(r, u);
    for (std::size_t i = 0; i < fields.fields().size(); ++i) {
        out += (i ? "," : "") + fields.fields()[i].csv;
    }
    return out;
}

std::string report_text(const BoundReport& r, Units u) {
    const auto fields = build_fields(r, u);
    std::size_t width = 0;
    for (const auto& f : fields.fields()) {
        width = std::max(width, f.name.size());
    }
    std::string out;
    for (const auto& f : fields.fields()) {
        if (f.name.ends_with("_reason") && !f.json) {
            continue;
        }
        out += fmt::format("{:<{}}  {}\n", f.name, width, f.json ? f.csv : "null");
    }
    return out;
}

}  // namespace earate

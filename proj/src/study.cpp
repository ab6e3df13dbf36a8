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

#include "earate/study.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "earate/error.hpp"
#include "earate/oracle.hpp"
#include "parallel.hpp"

namespace earate {

namespace {

using bounds::MaskedValue;

double unit_scale(Units u) { return u == Units::bits ? 1.0 / std::numbers::ln2 : 1.0; }

std::string csv_cell(const std::optional<double>& v, double scale = 1.0) {
    return v ? format_number(*v * scale) : std::string();
}

std::string json_value(const std::optional<double>& v, double scale = 1.0) {
    return v ? format_number(*v * scale) : std::string("null");
}

std::string reason_csv(const MaskedValue& v) { return std::string(bounds::mask_reason_code(v.reason)); }

std::string reason_json(const MaskedValue& v) {
    const auto code = bounds::mask_reason_code(v.reason);
    return code.empty() ? std::string("null") : fmt::format("\"{}\"", code);
}

std::vector<double> log_space(double lo, double hi, std::uint32_t n) {
    std::vector<double> out(n);
    const double l0 = std::log(lo);
    const double l1 = std::log(hi);
    for (std::uint32_t i = 0; i < n; ++i) {
        out[i] = n == 1 ? lo : std::exp(l0 + (l1 - l0) * i / (n - 1));
    }
    if (n > 1) {
        out.front() = lo;
        out.back() = hi;
    }
    return out;
}

}  // namespace

std::vector<double> AxisRange::values() const { return log_space(min, max, count); }

void validate(const GridSpec& spec) {
    if (!(spec.eta > 0.0 && spec.eta < 1.0)) {
        throw DomainError("grid eta must lie in (0, 1)");
    }
    for (const auto* axis : {&spec.ns_range, &spec.nt_range}) {
        if (axis->count < 2) {
            throw DomainError("grid axis count must be >= 2");
        }
        if (!(axis->min > 0.0) || !(axis->max > axis->min) || !std::isfinite(axis->max)) {
            throw DomainError("grid axis needs 0 < min < max");
        }
    }
}

ChannelParams params_from_nt(double eta, double n_s, double n_t) {
    auto p = make_params(eta, n_s, n_t / (1.0 - eta));
    p.n_t = n_t;
    return p;
}

std::vector<LevelsetRow> run_levelset(const GridSpec& spec) {
    validate(spec);
    const auto ns = spec.ns_range.values();
    const auto nt = spec.nt_range.values();
    std::vector<LevelsetRow> rows(ns.size() * nt.size());
    detail::parallel_for(
        rows.size(),
        [&](std::size_t k) {
            const double n_s = ns[k / nt.size()];
            const double n_t = nt[k % nt.size()];
            const auto p = params_from_nt(spec.eta, n_s, n_t);
            const auto v = validity_check(p);
            const auto ratio = bounds::advantage_ratio(p, spec.ell, spec.variant);
            LevelsetRow& row = rows[k];
            row.eta = spec.eta;
            row.n_s = n_s;
            row.n_t = n_t;
            row.n_b = p.n_b;
            row.lemma1_valid = v.valid;
            row.nt_gt_eta = v.nt_gt_eta;
            row.ratio_psk = ratio.ratio_psk;
            row.ratio_optimal = ratio.ratio_optimal;
            row.closed_form_rate = bounds::achievable_rate_closed_form(p);
            if (spec.with_numeric) {
                const auto cutoff = numeric_cutoff(p, spec.tail_tol, spec.max_cutoff);
                row.holevo_numeric = holevo_continuous(p, cutoff);
            }
        },
        spec.workers);
    return rows;
}

std::string levelset_csv(const std::vector<LevelsetRow>& rows, bool with_numeric, Units u) {
    const double s = unit_scale(u);
    std::string out =
        "eta,n_s,n_t,n_b,lemma1_valid,nt_gt_eta,ratio_psk,ratio_psk_reason,ratio_optimal,"
        "ratio_optimal_reason,closed_form_rate,closed_form_rate_reason";
    out += with_numeric ? ",holevo_numeric\n" : "\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}", format_number(r.eta),
                           format_number(r.n_s), format_number(r.n_t), format_number(r.n_b),
                           r.lemma1_valid, r.nt_gt_eta, csv_cell(r.ratio_psk.value),
                           reason_csv(r.ratio_psk), csv_cell(r.ratio_optimal.value),
                           reason_csv(r.ratio_optimal), csv_cell(r.closed_form_rate.value, s),
                           reason_csv(r.closed_form_rate));
        out += with_numeric ? "," + csv_cell(r.holevo_numeric, s) + "\n" : "\n";
    }
    return out;
}

std::string levelset_json(const std::vector<LevelsetRow>& rows, bool with_numeric, Units u) {
    const double s = unit_scale(u);
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += fmt::format(
            "{}{{\"eta\":{},\"n_s\":{},\"n_t\":{},\"n_b\":{},\"lemma1_valid\":{},\"nt_gt_eta\":{},"
            "\"ratio_psk\":{},\"ratio_psk_reason\":{},\"ratio_optimal\":{},"
            "\"ratio_optimal_reason\":{},\"closed_form_rate\":{},\"closed_form_rate_reason\":{}",
            i ? "," : "", format_number(r.eta), format_number(r.n_s), format_number(r.n_t),
            format_number(r.n_b), r.lemma1_valid, r.nt_gt_eta, json_value(r.ratio_psk.value),
            reason_json(r.ratio_psk), json_value(r.ratio_optimal.value),
            reason_json(r.ratio_optimal), json_value(r.closed_form_rate.value, s),
            reason_json(r.closed_form_rate));
        if (with_numeric) {
            out += ",\"holevo_numeric\":" + json_value(r.holevo_numeric, s);
        }
        out += "}";
    }
    out += "]";
    return out;
}

ConvergeTable run_converge(const ChannelParams& p, const ConvergeOptions& opt) {
    if (opt.ell_max > kMaxConvergeEll) {
        throw DomainError(fmt::format("ell_max must be <= {}", kMaxConvergeEll));
    }
    ConvergeTable t;
    t.params = p;
    t.cutoff = opt.cutoff > 0 ? opt.cutoff : numeric_cutoff(p, opt.tail_tol, opt.max_cutoff);
    if (static_cast<std::uint64_t>(t.cutoff) << opt.ell_max > kConvergeBudget) {
        throw ResourceError(fmt::format("cutoff {} with ell_max {} exceeds the budget {}",
                                        t.cutoff, opt.ell_max, kConvergeBudget));
    }
    t.holevo_continuous = holevo_continuous(p, t.cutoff);
    for (std::uint32_t ell = 0; ell <= opt.ell_max; ++ell) {
        ConvergeRow row;
        row.ell = ell;
        row.gap = psk_entropy_gap(p, ell, t.cutoff, opt.workers);
        row.holevo_psk = t.holevo_continuous - row.gap;
        row.fidelity_gap_bound = bounds::fidelity_gap_bound(p, ell);
        row.trace_distance_bound = ell >= 1 ? bounds::trace_distance_bound(p, ell) : MaskedValue{};
        row.continuity_penalty = bounds::continuity_penalty(p, ell, opt.variant);
        row.direct_fidelity_series = oracle::direct_fidelity_series(p, ell, t.cutoff);
        row.direct_entropy_series = oracle::direct_entropy_series(p, ell, t.cutoff);
        row.hs_norm_sq = hs_perturbation_norm_sq(p, ell, t.cutoff);
        t.rows.push_back(row);
    }
    return t;
}

std::string converge_csv(const ConvergeTable& t, Units u) {
    const double s = unit_scale(u);
    std::string out =
        "ell,holevo_psk,gap,fidelity_gap_bound,fidelity_gap_bound_reason,trace_distance_bound,"
        "trace_distance_bound_reason,continuity_penalty,continuity_penalty_reason,"
        "direct_fidelity_series,direct_entropy_series,hs_norm_sq\n";
    for (const auto& r : t.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.ell,
                           format_number(r.holevo_psk * s), format_number(r.gap * s),
                           csv_cell(r.fidelity_gap_bound.value), reason_csv(r.fidelity_gap_bound),
                           csv_cell(r.trace_distance_bound.value),
                           reason_csv(r.trace_distance_bound),
                           csv_cell(r.continuity_penalty.value, s), reason_csv(r.continuity_penalty),
                           format_number(r.direct_fidelity_series),
                           format_number(r.direct_entropy_series * s), format_number(r.hs_norm_sq));
    }
    return out;
}

std::string converge_json(const ConvergeTable& t, Units u) {
    const double s = unit_scale(u);
    std::string out = fmt::format(
        "{{\"eta\":{},\"n_s\":{},\"n_b\":{},\"n_t\":{},\"cutoff\":{},\"holevo_continuous\":{},"
        "\"rows\":[",
        format_number(t.params.eta), format_number(t.params.n_s), format_number(t.params.n_b),
        format_number(t.params.n_t), t.cutoff, format_number(t.holevo_continuous * s));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        out += fmt::format(
            "{}{{\"ell\":{},\"holevo_psk\":{},\"gap\":{},\"fidelity_gap_bound\":{},"
            "\"fidelity_gap_bound_reason\":{},\"trace_distance_bound\":{},"
            "\"trace_distance_bound_reason\":{},\"continuity_penalty\":{},"
            "\"continuity_penalty_reason\":{},\"direct_fidelity_series\":{},"
            "\"direct_entropy_series\":{},\"hs_norm_sq\":{}}}",
            i ? "," : "", r.ell, format_number(r.holevo_psk * s), format_number(r.gap * s),
            json_value(r.fidelity_gap_bound.value), reason_json(r.fidelity_gap_bound),
            json_value(r.trace_distance_bound.value), reason_json(r.trace_distance_bound),
            json_value(r.continuity_penalty.value, s), reason_json(r.continuity_penalty),
            format_number(r.direct_fidelity_series), format_number(r.direct_entropy_series * s),
            format_number(r.hs_norm_sq));
    }
    out += "]}";
    return out;
}

std::string converge_text(const ConvergeTable& t, Units u) {
    const double s = unit_scale(u);
    auto cell = [](const MaskedValue& v, double scale) {
        if (v.value) {
            return fmt::format("{:12.4e}", *v.value * scale);
        }
        const auto code = bounds::mask_reason_code(v.reason);
        return fmt::format("{:>12}", code.empty() ? "-" : code);
    };
    std::string out = fmt::format(
        "eta={} n_s={} n_b={} n_t={} cutoff={} holevo_continuous={:.10e} ({})\n", t.params.eta,
        t.params.n_s, t.params.n_b, t.params.n_t, t.cutoff, t.holevo_continuous * s,
        u == Units::bits ? "bits" : "nats");
    out += fmt::format("{:>3} {:>18} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n", "ell",
                       "holevo_psk", "gap", "fid_bound", "fid_series", "trace_bound", "penalty",
                       "ent_series", "hs_norm_sq");
    for (const auto& r : t.rows) {
        out += fmt::format("{:>3} {:18.10e} {:12.4e} {} {:12.4e} {} {} {:12.4e} {:12.4e}\n", r.ell,
                           r.holevo_psk * s, r.gap * s, cell(r.fidelity_gap_bound, 1.0),
                           r.direct_fidelity_series, cell(r.trace_distance_bound, 1.0),
                           cell(r.continuity_penalty, s), r.direct_entropy_series * s, r.hs_norm_sq);
    }
    return out;
}

ConvergenceSlopes convergence_slopes(const ChannelParams& p, std::uint32_t ell_max,
                                     std::uint32_t cutoff, double floor, unsigned workers) {
    ConvergenceSlopes out;
    out.log_base = std::log(convergence_base(p));
    for (std::uint32_t ell = 0; ell <= ell_max; ++ell) {
        out.gaps.push_back(psk_entropy_gap(p, ell, cutoff, workers));
    }
    for (std::uint32_t ell = 0; ell < ell_max; ++ell) {
        const double g0 = out.gaps[ell];
        const double g1 = out.gaps[ell + 1];
        if (g0 > floor && g1 > floor) {
            out.slope_ell.push_back(ell);
            out.slopes.push_back((std::log(g1) - std::log(g0)) /
                                 (bounds::constellation_size(ell + 1) - bounds::constellation_size(ell)));
        }
        if (g0 > floor && !(g1 < g0)) {
            out.decreasing = false;
        }
    }
    return out;
}

std::vector<ChannelParams> reference_points() {
    return {make_params(0.1, 0.5, 2.0), make_params(0.3, 0.2, 1.0), make_params(0.05, 1.0, 4.0)};
}

std::vector<ChannelParams> standard_grid() {
    std::vector<ChannelParams> out;
    for (double eta : {0.05, 0.1, 0.3}) {
        for (double n_s : {0.1, 0.5, 1.0}) {
            for (double n_b : {1.0, 2.0, 4.0}) {
                out.push_back(make_params(eta, n_s, n_b));
            }
        }
    }
    return out;
}

std::vector<ChannelParams> dominance_grid(double eta, std::uint32_t ns_count, std::uint32_t nt_count) {
    constexpr double kPhotonCeiling = 4.0;  // keeps the automatic cutoff <= 128
    std::vector<ChannelParams> out;
    for (double n_s : log_space(1e-3, kPhotonCeiling, ns_count)) {
        auto probe = make_params(eta, n_s, 1.0);
        const double floor = 1.05 * std::max(eta, validity_check(probe).threshold);
        const double ceiling = kPhotonCeiling - eta * n_s;
        for (double n_t : log_space(floor, ceiling, nt_count)) {
            out.push_back(params_from_nt(eta, n_s, n_t));
        }
    }
    return out;
}

}  // namespace earate

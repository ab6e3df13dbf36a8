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

#ifndef EARATE_STUDY_HPP
#define EARATE_STUDY_HPP

// Multi-point studies behind the levelset and converge subcommands, and the
// parameter grids shared by the verification suites.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "earate/bounds.hpp"
#include "earate/channel.hpp"
#include "earate/fock_state.hpp"
#include "earate/report.hpp"

namespace earate {

/// Log-spaced axis: count points from min to max inclusive.
struct AxisRange {
    double min = 0.0;
    double max = 0.0;
    std::uint32_t count = 0;

    std::vector<double> values() const;
};

/// Level-set grid over (n_s, n_t) at fixed eta; n_b = n_t / (1 - eta).
struct GridSpec {
    double eta = 0.1;
    AxisRange ns_range{1e-3, 10.0, 40};
    AxisRange nt_range{1e-2, 10.0, 40};
    std::optional<std::uint32_t> ell = 6;  ///< nullopt = continuous phase
    bool with_numeric = false;
    bounds::PolyVariant variant = bounds::PolyVariant::symmetrized;
    double tail_tol = kDefaultTailTol;
    std::uint32_t max_cutoff = kDefaultMaxCutoff;
    unsigned workers = 0;
};

/// Throws DomainError unless counts >= 2, 0 < min < max and 0 < eta < 1.
void validate(const GridSpec& spec);

/// Params on the (n_s, n_t) axes, keeping n_t exactly as given.
ChannelParams params_from_nt(double eta, double n_s, double n_t);

struct LevelsetRow {
    double eta = 0.0;
    double n_s = 0.0;
    double n_t = 0.0;
    double n_b = 0.0;
    bool lemma1_valid = false;
    bool nt_gt_eta = false;
    bounds::MaskedValue ratio_psk;
    bounds::MaskedValue ratio_optimal;
    bounds::MaskedValue closed_form_rate;
    std::optional<double> holevo_numeric;
};

/// One row per grid point, n_s-major.
std::vector<LevelsetRow> run_levelset(const GridSpec& spec);

std::string levelset_csv(const std::vector<LevelsetRow>& rows, bool with_numeric,
                         Units u = Units::nats);
std::string levelset_json(const std::vector<LevelsetRow>& rows, bool with_numeric,
                          Units u = Units::nats);

inline constexpr std::uint32_t kMaxConvergeEll = 8;
inline constexpr std::uint64_t kConvergeBudget = 65536;  ///< cutoff * 2^ell ceiling

struct ConvergeRow {
    std::uint32_t ell = 0;
    double holevo_psk = 0.0;
    double gap = 0.0;  ///< holevo_continuous - holevo_psk, accumulated per block
    bounds::MaskedValue fidelity_gap_bound;
    bounds::MaskedValue trace_distance_bound;  ///< absent at ell = 0
    bounds::MaskedValue continuity_penalty;
    double direct_fidelity_series = 0.0;
    double direct_entropy_series = 0.0;
    double hs_norm_sq = 0.0;
};

struct ConvergeTable {
    ChannelParams params;
    std::uint32_t cutoff = 0;
    double holevo_continuous = 0.0;
    std::vector<ConvergeRow> rows;
};

struct ConvergeOptions {
    std::uint32_t ell_max = 6;
    std::uint32_t cutoff = 0;  ///< 0 = chosen from tail_tol
    double tail_tol = kDefaultTailTol;
    std::uint32_t max_cutoff = kDefaultMaxCutoff;
    bounds::PolyVariant variant = bounds::PolyVariant::symmetrized;
    unsigned workers = 0;
};

/// Rows ell = 0..ell_max. Throws DomainError for ell_max > 8 and
/// ResourceError when cutoff * 2^ell_max exceeds the budget.
ConvergeTable run_converge(const ChannelParams& p, const ConvergeOptions& opt);

std::string converge_csv(const ConvergeTable& t, Units u = Units::nats);
std::string converge_json(const ConvergeTable& t, Units u = Units::nats);
std::string converge_text(const ConvergeTable& t, Units u = Units::nats);

/// Per-ell entropy gaps and the log-slopes between consecutive measurable
/// ones, in units of L = 2^ell.
struct ConvergenceSlopes {
    double log_base = 0.0;         ///< ln(eta n_s / (1 + n_t))
    std::vector<double> gaps;      ///< index = ell
    std::vector<std::uint32_t> slope_ell;  ///< lower ell of each measured pair
    std::vector<double> slopes;    ///< (ln gap(ell+1) - ln gap(ell)) / (L(ell+1) - L(ell))
    bool decreasing = true;        ///< every measurable gap below its predecessor
};

/// Gaps for ell = 0..ell_max; pairs count only when both gaps exceed `floor`.
ConvergenceSlopes convergence_slopes(const ChannelParams& p, std::uint32_t ell_max,
                                     std::uint32_t cutoff, double floor = 1e-12,
                                     unsigned workers = 0);

// --- shared grids --------------------------------------------------------------

/// The three reference points (0.1, 0.5, 2), (0.3, 0.2, 1), (0.05, 1, 4).
std::vector<ChannelParams> reference_points();

/// 27 points: eta in {0.05, 0.1, 0.3} x n_s in {0.1, 0.5, 1} x n_b in {1, 2, 4}.
std::vector<ChannelParams> standard_grid();

/// ns_count x nt_count points inside {lemma1 valid and n_t > eta} whose
/// automatic cutoff stays <= 128: n_s log-spaced in [1e-3, 4], n_t
/// log-spaced per n_s from just above max(eta, threshold) to 4 - eta n_s.
std::vector<ChannelParams> dominance_grid(double eta, std::uint32_t ns_count, std::uint32_t nt_count);

}  // namespace earate

#endif

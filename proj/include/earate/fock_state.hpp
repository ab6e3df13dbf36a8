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

#ifndef EARATE_FOCK_STATE_HPP
#define EARATE_FOCK_STATE_HPP

// Phase-modulated TMSV output state in a truncated two-mode Fock basis.
//
// Matrix elements of the theta = 0 state are nonzero only on the rays
// n1 - nbar1 = n2 - nbar2 = delta, and for delta >= 0 they read
//
//   sqrt((nbar1+delta)! (nbar2+delta)! / (nbar1! nbar2!))
//       * a^nbar1 b^nbar2 c^delta d * F[-nbar1, -nbar2; delta+1; z] / delta!
//
// with (a, b, c, d, z) from ReducedParams. Averaging over L = 2^ell equally
// spaced phases keeps only the rays with delta divisible by L; the
// continuous average keeps only the diagonal p(n1, n2). Coherences preserve
// n1 - n2 and shift n1 by multiples of L, so the state splits exactly into
// blocks keyed by (n1 - n2, n1 mod L).

#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "earate/channel.hpp"

namespace earate {

struct FockPair {
    std::uint32_t n1 = 0;  ///< Bob (received) mode
    std::uint32_t n2 = 0;  ///< idler mode
    auto operator<=>(const FockPair&) const = default;
};

struct BlockKey {
    std::int64_t delta_modes = 0;  ///< n1 - n2
    std::uint64_t residue = 0;     ///< n1 mod period (n1 itself when period == 0)
    auto operator<=>(const BlockKey&) const = default;
};

struct StateBlock {
    BlockKey key;
    std::vector<FockPair> basis;  ///< sorted by n1
    Eigen::MatrixXd matrix;       ///< real symmetric (theta = 0 phase reference)
};

/// Default probability tail left outside the truncation box.
inline constexpr double kDefaultTailTol = 1e-12;
/// Default per-mode cutoff ceiling; callers may override explicitly.
inline constexpr std::uint32_t kDefaultMaxCutoff = 256;

/// Block-sparse Hermitian operator on the box {0..cutoff}^2.
///
/// `period` is L = 2^ell for a PSK mixture (1 = unmodulated Gaussian state)
/// and 0 for the fully dephased limit.
class TruncatedState {
public:
    /// Validates the invariants (selection rule, Hermiticity to 1e-13,
    /// diagonal-only when period == 0) and sorts blocks by key.
    TruncatedState(std::uint32_t cutoff, std::uint64_t period, std::vector<StateBlock> blocks,
                   double tail_bound);

    std::uint32_t cutoff() const noexcept { return cutoff_; }
    std::uint64_t period() const noexcept { return period_; }
    const std::vector<StateBlock>& blocks() const noexcept { return blocks_; }
    /// Upper bound on the probability mass outside the box.
    double tail_bound() const noexcept { return tail_bound_; }

    double trace() const;
    /// <n1, n2| rho |nbar1, nbar2>, zero outside the stored blocks.
    double element(FockPair row, FockPair col) const;

private:
    std::uint32_t cutoff_;
    std::uint64_t period_;
    std::vector<StateBlock> blocks_;
    double tail_bound_;
};

struct EntropyResult {
    double entropy = 0.0;             ///< nats
    double truncation_tail = 0.0;     ///< mass bound outside the box
    double negative_eig_floor = 0.0;  ///< most negative eigenvalue seen before clamping
};

// --- matrix elements -----------------------------------------------------

/// ln <nbar1+delta, nbar2+delta| rho_0 |nbar1, nbar2> for delta >= 0.
/// Returns -inf for an exactly vanishing element.
double log_ray_element(const ReducedParams& r, std::uint32_t nbar1, std::uint32_t nbar2,
                       std::uint32_t delta);

/// <n1, n2| rho_{theta=0} |nbar1, nbar2>.
double lambda_element(const ChannelParams& p, std::uint32_t n1, std::uint32_t n2,
                      std::uint32_t nbar1, std::uint32_t nbar2);

/// ln p(n1, n2) via the terminating hypergeometric form.
double log_p_diag(const ReducedParams& r, std::uint32_t n1, std::uint32_t n2);

/// Diagonal law p(n1, n2) of the dephased state.
double p_diag(const ChannelParams& p, std::uint32_t n1, std::uint32_t n2);

/// p(n1, n2) through the non-terminating F[n1+1, n2+1; 1; z] form.
/// Requires n_t > eta (positivity of the prefactors and z < 1).
double p_diag_nonterminating(const ChannelParams& p, std::uint32_t n1, std::uint32_t n2);

/// e^{i theta (n1 - nbar1)} * lambda_element.
std::complex<double> rotated_element(const ChannelParams& p, double theta, std::uint32_t n1,
                                     std::uint32_t n2, std::uint32_t nbar1, std::uint32_t nbar2);

// --- truncation ------------------------------------------------------------

/// Rigorous upper bound on the diagonal mass outside {0..cutoff}^2. Uses the
/// smaller of the geometric-envelope bound (a(1+sqrt z))^n1 (b(1+sqrt z))^n2
/// and the union bound over the two thermal marginals.
/// Throws DomainError if either envelope base is >= 1.
double tail_mass_bound(const ChannelParams& p, std::uint32_t cutoff);

/// Union bound over the two thermal marginals alone. Valid for every
/// parameter point, including those where the envelopes diverge.
double marginal_tail_bound(const ChannelParams& p, std::uint32_t cutoff);

/// Smallest cutoff >= 1 whose tail_mass_bound is <= tail_tol.
std::uint32_t truncation_cutoff(const ChannelParams& p, double tail_tol);

/// truncation_cutoff clamped to `max_cutoff`.
std::uint32_t resolve_cutoff(const ChannelParams& p, double tail_tol,
                             std::uint32_t max_cutoff = kDefaultMaxCutoff);

// --- states and entropies ---------------------------------------------------

/// L = 2^ell phase-averaged state. ell = 0 is the unmodulated Gaussian state.
TruncatedState build_psk_state(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff);

/// Continuous phase average: diagonal with entries p_diag.
TruncatedState build_dephased_state(const ChannelParams& p, std::uint32_t cutoff);

/// Sum over blocks of -sum_i l_i ln l_i. Eigenvalues in (-1e-9, 0) are clamped
/// to zero; anything lower throws ConsistencyError.
EntropyResult von_neumann_entropy(const TruncatedState& state, unsigned workers = 0);

/// -sum p ln p over the box, straight from ln p (no state materialized).
double dephased_entropy(const ChannelParams& p, std::uint32_t cutoff);

/// S(rho_L) - conditional entropy (nats).
double holevo_psk(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff,
                  unsigned workers = 0);

/// S(dephased) - conditional entropy (nats).
double holevo_continuous(const ChannelParams& p, std::uint32_t cutoff);

/// S(dephased) - S(rho_L) accumulated block by block, which avoids the
/// cancellation of subtracting two full entropies.
double psk_entropy_gap(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff,
                       unsigned workers = 0);

/// Squared Hilbert-Schmidt norm of rho_L - dephased inside the box.
double hs_perturbation_norm_sq(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff);

/// Rows (n1, n2, nbar1, nbar2, value) of every stored element, sorted
/// lexicographically.
void write_state_csv(const TruncatedState& state, std::ostream& out);

}  // namespace earate

#endif

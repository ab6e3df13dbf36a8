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

#ifndef EARATE_ORACLE_HPP
#define EARATE_ORACLE_HPP

// Brute-force reference path: TMSV -> phase rotation -> beamsplitter against
// a thermal environment -> partial trace, all in a dense truncated Fock
// space. Shares no matrix-element formula with fock_state.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "earate/channel.hpp"

namespace earate::oracle {

/// Dense operator on {0..cutoff}^2, row/column index n1 * (cutoff + 1) + n2.
struct DenseTwoModeOperator {
    std::uint32_t cutoff = 0;
    Eigen::MatrixXcd entries;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(cutoff + 1); }
    Eigen::Index index(std::uint32_t n1, std::uint32_t n2) const noexcept {
        return static_cast<Eigen::Index>(n1) * (cutoff + 1) + n2;
    }
    std::complex<double> at(std::uint32_t n1, std::uint32_t n2, std::uint32_t nbar1,
                            std::uint32_t nbar2) const {
        return entries(index(n1, n2), index(nbar1, nbar2));
    }
};

inline constexpr std::uint32_t kMaxDenseCutoff = 24;

struct EnvironmentOptions {
    double weight_tol = 1e-12;  ///< stop once the thermal weight reaches 1 - weight_tol
    std::uint32_t max_photons = 0;  ///< explicit environment Fock cutoff; 0 = from weight_tol
};

/// Schmidt coefficients sqrt(n_s^n / (n_s+1)^(n+1)), n = 0..cutoff.
std::vector<double> tmsv_vector(double n_s, std::uint32_t cutoff);

/// <m1, m2| B(eta) |n1, n2> for the beamsplitter b = sqrt(eta) a + sqrt(1-eta) e,
/// w = -sqrt(1-eta) a + sqrt(eta) e. Zero unless m1 + m2 = n1 + n2.
double beamsplitter_element(double eta, std::uint32_t m1, std::uint32_t m2, std::uint32_t n1,
                            std::uint32_t n2);

/// Environment photon number at which the thermal weight reaches 1 - tol.
std::uint32_t environment_cutoff(double n_b, const EnvironmentOptions& env = {});

/// rho_{BI,theta} restricted to the box. Throws ResourceError past cutoff 24.
DenseTwoModeOperator simulate_channel_output(const ChannelParams& p, double theta,
                                             std::uint32_t cutoff,
                                             const EnvironmentOptions& env = {});

/// Uniform mixture of simulate_channel_output over theta = 2 pi k / 2^ell.
DenseTwoModeOperator simulate_psk_output(const ChannelParams& p, std::uint32_t ell,
                                         std::uint32_t cutoff,
                                         const EnvironmentOptions& env = {});

/// Keeps only the diagonal (continuous phase average).
DenseTwoModeOperator dephase(const DenseTwoModeOperator& op);

/// -tr rho ln rho from a dense Hermitian eigendecomposition.
double dense_entropy(const DenseTwoModeOperator& op);

/// Trace norm of the Hermitian difference x - y.
double trace_norm_difference(const DenseTwoModeOperator& x, const DenseTwoModeOperator& y);

/// sum_{D>=1} sum_nbar |f(nbar, L D)|^2 / (p(nbar) + p(nbar + L D)) inside the box.
double direct_fidelity_series(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff);

/// sum_{D>=1} sum_nbar |f(nbar, L D)|^2 (ln p' - ln p) / (p' - p) inside the box,
/// with the logarithmic mean taken as 1/p when |p' - p| < 1e-14 p.
double direct_entropy_series(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff);

}  // namespace earate::oracle

#endif

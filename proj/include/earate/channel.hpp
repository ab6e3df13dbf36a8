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

#ifndef EARATE_CHANNEL_HPP
#define EARATE_CHANNEL_HPP

#include <Eigen/Core>

namespace earate {

/// Physical triple of the lossy thermal-noise channel plus the derived
/// effective noise n_t = n_b * (1 - eta).
struct ChannelParams {
    double eta = 0.0;  ///< transmissivity
    double n_s = 0.0;  ///< mean signal photon number
    double n_b = 0.0;  ///< environment mean photon number
    double n_t = 0.0;  ///< derived effective noise
};

/// Validated constructor: 0 < eta <= 1, n_s > 0, n_b >= 0, all finite.
/// Throws DomainError naming the offending field.
ChannelParams make_params(double eta, double n_s, double n_b);

/// Same as make_params but also admits the closed limits eta = 0 and n_s = 0,
/// which several limiting-case checks need.
ChannelParams make_limit_params(double eta, double n_s, double n_b);

/// Dimensionless symbols shared by every hypergeometric coefficient formula.
struct ReducedParams {
    double a = 0.0;  ///< n_t / (1 + n_t)
    double b = 0.0;  ///< n_s (n_t - eta + 1) / ((1 + n_s)(1 + n_t))
    double c = 0.0;  ///< sqrt(eta) sqrt(n_s / (1 + n_s)) / (1 + n_t)
    double d = 0.0;  ///< 1 / ((1 + n_t)(1 + n_s))
    double z = 0.0;  ///< eta / ((n_t - eta + 1) n_t)
    double alpha_geo = 0.0;  ///< (a/(1-a)) (b/(1-b)) z
};

/// Throws SingularParameterError when n_t == 0 (z undefined).
ReducedParams reduced(const ChannelParams& p);

struct CovarianceData {
    double e = 0.0;
    double c = 0.0;
    double s = 0.0;
    double theta = 0.0;
    Eigen::Matrix4d lambda = Eigen::Matrix4d::Zero();
};

/// Covariance matrix of the conditional state in (q_B, p_B, q_I, p_I) ordering,
/// vacuum variance 1.
CovarianceData covariance(const ChannelParams& p, double theta);

struct SymplecticSpectrum {
    double mu_plus = 0.5;
    double mu_minus = 0.5;
    bool clamped = false;  ///< discriminant or mu_minus rounded below its floor
};

/// Symplectic eigenvalues in the vacuum = 1/2 convention.
SymplecticSpectrum symplectic_mu(const ChannelParams& p);

/// Entropy of the Gaussian conditional state, g(mu+ - 1/2) + g(mu- - 1/2), in nats.
double conditional_entropy(const ChannelParams& p);

struct Validity {
    bool valid = false;      ///< n_t above the convergence threshold
    double margin = 0.0;     ///< n_t - threshold
    bool nt_gt_eta = false;  ///< additionally required by the closed-form rate
    double threshold = 0.0;
};

Validity validity_check(const ChannelParams& p);

struct ReferenceCapacities {
    double c_ea = 0.0;
    double c_classical = 0.0;
};

ReferenceCapacities reference_capacities(const ChannelParams& p);

/// eta n_s / (1 + n_t): base of the constellation-size convergence rate.
double convergence_base(const ChannelParams& p) noexcept;

}  // namespace earate

#endif

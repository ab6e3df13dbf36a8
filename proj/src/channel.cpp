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

#include "earate/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "earate/error.hpp"
#include "earate/special_fn.hpp"

namespace earate {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string("channel parameter '") + field + "' must be finite");
    }
}

ChannelParams assemble(double eta, double n_s, double n_b) {
    ChannelParams p{eta, n_s, n_b, n_b * (1.0 - eta)};
    return p;
}

}  // namespace

ChannelParams make_params(double eta, double n_s, double n_b) {
    require_finite(eta, "eta");
    require_finite(n_s, "n_s");
    require_finite(n_b, "n_b");
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw DomainError("channel parameter 'eta' must lie in (0, 1], got " + std::to_string(eta));
    }
    if (!(n_s > 0.0)) {
        throw DomainError("channel parameter 'n_s' must be positive, got " + std::to_string(n_s));
    }
    if (!(n_b >= 0.0)) {
        throw DomainError("channel parameter 'n_b' must be non-negative, got " +
                          std::to_string(n_b));
    }
    return assemble(eta, n_s, n_b);
}

ChannelParams make_limit_params(double eta, double n_s, double n_b) {
    require_finite(eta, "eta");
    require_finite(n_s, "n_s");
    require_finite(n_b, "n_b");
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("channel parameter 'eta' must lie in [0, 1], got " + std::to_string(eta));
    }
    if (!(n_s >= 0.0)) {
        throw DomainError("channel parameter 'n_s' must be non-negative, got " +
                          std::to_string(n_s));
    }
    if (!(n_b >= 0.0)) {
        throw DomainError("channel parameter 'n_b' must be non-negative, got " +
                          std::to_string(n_b));
    }
    return assemble(eta, n_s, n_b);
}

ReducedParams reduced(const ChannelParams& p) {
    const double nt = p.n_t;
    const double ns = p.n_s;
    const double eta = p.eta;
    if (!(nt > 0.0)) {
        throw SingularParameterError("reduced parameters need n_t > 0 (z is undefined at n_t = 0)");
    }
    const double shifted = nt - eta + 1.0;
    if (!(shifted > 0.0)) {
        throw SingularParameterError("reduced parameters need n_t - eta + 1 > 0");
    }
    ReducedParams r;
    r.a = nt / (1.0 + nt);
    r.b = ns * shifted / ((1.0 + ns) * (1.0 + nt));
    r.c = std::sqrt(eta) * std::sqrt(ns / (1.0 + ns)) / (1.0 + nt);
    r.d = 1.0 / ((1.0 + nt) * (1.0 + ns));
    r.z = eta / (shifted * nt);
    r.alpha_geo = (r.a / (1.0 - r.a)) * (r.b / (1.0 - r.b)) * r.z;
    return r;
}

CovarianceData covariance(const ChannelParams& p, double theta) {
    CovarianceData cov;
    cov.e = 2.0 * (p.n_t + p.eta * p.n_s) + 1.0;
    cov.c = 2.0 * std::sqrt(p.eta * p.n_s * (p.n_s + 1.0));
    cov.s = 2.0 * p.n_s + 1.0;
    cov.theta = theta;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    Eigen::Matrix2d rot;
    rot << ct, st, st, -ct;
    cov.lambda.topLeftCorner<2, 2>() = cov.e * Eigen::Matrix2d::Identity();
    cov.lambda.bottomRightCorner<2, 2>() = cov.s * Eigen::Matrix2d::Identity();
    cov.lambda.topRightCorner<2, 2>() = cov.c * rot;
    cov.lambda.bottomLeftCorner<2, 2>() = cov.c * rot;
    return cov;
}

SymplecticSpectrum symplectic_mu(const ChannelParams& p) {
    const double ns = p.n_s;
    const double sum = p.n_t + (1.0 + p.eta) * ns + 1.0;
    double disc = sum * sum - 4.0 * p.eta * ns * (ns + 1.0);
    SymplecticSpectrum out;
    if (disc < 0.0) {
        disc = 0.0;
        out.clamped = true;
    }
    const double root = std::sqrt(disc);
    const double shift = p.n_t + (p.eta - 1.0) * ns;
    out.mu_plus = 0.5 * (root + shift);
    out.mu_minus = 0.5 * (root - shift);
    if (out.mu_minus < 0.5) {
        out.clamped = out.clamped || out.mu_minus < 0.5 - 1e-12;
        out.mu_minus = 0.5;
    }
    if (out.mu_plus < 0.5) {
        out.clamped = out.clamped || out.mu_plus < 0.5 - 1e-12;
        out.mu_plus = 0.5;
    }
    if (out.mu_plus < out.mu_minus) {
        std::swap(out.mu_plus, out.mu_minus);
    }
    return out;
}

double conditional_entropy(const ChannelParams& p) {
    const auto mu = symplectic_mu(p);
    return special::g_entropy(mu.mu_plus - 0.5) + special::g_entropy(mu.mu_minus - 0.5);
}

Validity validity_check(const ChannelParams& p) {
    const double u = p.eta * p.n_s;
    const double root = std::sqrt(4.0 * u * p.n_s + 4.0 * u + 1.0);
    // (-(1+2u) + root)/2 rewritten without cancellation.
    const double second = 2.0 * u * p.n_s * (1.0 - p.eta) / (root + 1.0 + 2.0 * u);
    Validity v;
    v.threshold = std::max(u - 1.0, second);
    v.margin = p.n_t - v.threshold;
    v.valid = v.margin > 0.0;
    v.nt_gt_eta = p.n_t > p.eta;
    return v;
}

ReferenceCapacities reference_capacities(const ChannelParams& p) {
    using special::g_entropy;
    const auto mu = symplectic_mu(p);
    const double out_mean = p.eta * p.n_s + p.n_t;
    ReferenceCapacities r;
    r.c_classical = g_entropy(out_mean) - g_entropy(p.n_t);
    r.c_ea = g_entropy(p.n_s) + g_entropy(out_mean) - g_entropy(mu.mu_plus - 0.5) -
             g_entropy(mu.mu_minus - 0.5);
    return r;
}

double convergence_base(const ChannelParams& p) noexcept {
    return p.eta * p.n_s / (1.0 + p.n_t);
}

}  // namespace earate

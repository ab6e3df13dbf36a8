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

#include "earate/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "earate/error.hpp"
#include "earate/fock_state.hpp"
#include "earate/special_fn.hpp"
#include "parallel.hpp"

namespace earate::oracle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double n_log(std::uint64_t n, double x) {
    if (n == 0) {
        return 0.0;
    }
    return x > 0.0 ? static_cast<double>(n) * std::log(x) : kNegInf;
}

double log_binomial(std::uint32_t n, std::uint32_t k) {
    using special::log_factorial;
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_thermal_weight(double n_b, std::uint32_t k) {
    if (n_b == 0.0) {
        return k == 0 ? 0.0 : kNegInf;
    }
    return k * std::log(n_b / (n_b + 1.0)) - std::log1p(n_b);
}

void check_dense_cutoff(std::uint32_t cutoff) {
    if (cutoff > kMaxDenseCutoff) {
        throw ResourceError("dense oracle cutoff " + std::to_string(cutoff) + " exceeds " +
                            std::to_string(kMaxDenseCutoff));
    }
}

double entropy_of(const Eigen::VectorXd& eig) {
    special::CompensatedSum s;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        const double l = eig(i);
        if (l < -1e-9) {
            throw ConsistencyError("dense oracle state has a negative eigenvalue");
        }
        if (l > 0.0) {
            s.add(-l * std::log(l));
        }
    }
    return s.value();
}

// ln of the logarithmic mean (ln q - ln p) / (q - p), given ln p and ln q.
double log_log_mean(double lp, double lq) {
    const double lo = std::min(lp, lq);
    const double gap = std::abs(lq - lp);
    const double rel = std::expm1(gap);
    if (rel < 1e-14) {
        return -lo;
    }
    return std::log(gap) - lo - std::log(rel);
}

template <typename Term>
double ray_series(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff, Term term) {
    const auto r = reduced(p);
    if (ell >= 32) {
        return 0.0;
    }
    const std::uint64_t period = std::uint64_t{1} << ell;
    std::vector<double> rows(cutoff + 1, 0.0);
    detail::parallel_for(rows.size(), [&](std::size_t row) {
        const auto nb1 = static_cast<std::uint32_t>(row);
        special::CompensatedSum s;
        for (std::uint64_t delta = period; nb1 + delta <= cutoff; delta += period) {
            const auto dd = static_cast<std::uint32_t>(delta);
            for (std::uint32_t nb2 = 0; nb2 + dd <= cutoff; ++nb2) {
                const double lf = log_ray_element(r, nb1, nb2, dd);
                if (lf == kNegInf) {
                    continue;
                }
                const double lp = log_p_diag(r, nb1, nb2);
                const double lq = log_p_diag(r, nb1 + dd, nb2 + dd);
                s.add(std::exp(term(lf, lp, lq)));
            }
        }
        rows[row] = s.value();
    });
    special::CompensatedSum total;
    for (double v : rows) {
        total.add(v);
    }
    return total.value();
}

}  // namespace

std::vector<double> tmsv_vector(double n_s, std::uint32_t cutoff) {
    if (!(n_s >= 0.0) || !std::isfinite(n_s)) {
        throw DomainError("n_s must be finite and >= 0");
    }
    std::vector<double> out(cutoff + 1);
    const double lr = n_s > 0.0 ? std::log(n_s / (n_s + 1.0)) : kNegInf;
    const double l0 = -std::log1p(n_s);
    for (std::uint32_t n = 0; n <= cutoff; ++n) {
        out[n] = n == 0 ? std::exp(0.5 * l0) : std::exp(0.5 * (n * lr + l0));
    }
    return out;
}

double beamsplitter_element(double eta, std::uint32_t m1, std::uint32_t m2, std::uint32_t n1,
                            std::uint32_t n2) {
    if (static_cast<std::uint64_t>(m1) + m2 != static_cast<std::uint64_t>(n1) + n2) {
        return 0.0;
    }


    const double norm = 0.5 * (special::log_factorial(m1) + special::log_factorial(m2) -
                               special::log_factorial(n1) - special::log_factorial(n2));
    // i photons of the signal and j = m1 - i of the environment end up in mode 1
    const std::uint32_t i_lo = m1 > n2 ? m1 - n2 : 0;
    const std::uint32_t i_hi = std::min(n1, m1);
    special::CompensatedSum s;
    for (std::uint32_t i = i_lo; i <= i_hi; ++i) {
        const std::uint32_t j = m1 - i;
        const double lt = log_binomial(n1, i) + log_binomial(n2, j) + n_log(i + n2 - j, eta) * 0.5 +
                          n_log(n1 - i + j, 1.0 - eta) * 0.5 + norm;
        if (lt == kNegInf) {
            continue;
        }
        const double sign = ((n1 - i) % 2 == 0) ? 1.0 : -1.0;
        s.add(sign * std::exp(lt));
    }
    return s.value();
}

std::uint32_t environment_cutoff(double n_b, const EnvironmentOptions& env) {
    if (env.max_photons > 0) {
        return env.max_photons;
    }
    if (n_b == 0.0) {
        return 0;
    }
    // 1 - sum_{k<=K} w_k = (n_b / (n_b + 1))^(K+1)
    const double lr = std::log(n_b / (n_b + 1.0));
    const double need = std::log(env.weight_tol) / lr;
    const auto k = static_cast<std::uint32_t>(std::max(0.0, std::ceil(need) - 1.0));
    return k;
}

DenseTwoModeOperator simulate_channel_output(const ChannelParams& p, double theta,
                                             std::uint32_t cutoff, const EnvironmentOptions& env) {
    check_dense_cutoff(cutoff);
    const std::uint32_t dim = cutoff + 1;
    DenseTwoModeOperator out;
    out.cutoff = cutoff;
    out.entries = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
    const auto amp = tmsv_vector(p.n_s, cutoff);
    const std::uint32_t k_max = environment_cutoff(p.n_b, env);

    std::vector<std::pair<Eigen::Index, std::complex<double>>> v;
    v.reserve(dim);
    for (std::uint32_t k = 0; k <= k_max; ++k) {
        const double lw = log_thermal_weight(p.n_b, k);
        if (lw == kNegInf) {
            break;
        }
        const double w = std::exp(lw);
        // conditional output for environment photon number k, traced over the
        // wasted mode occupation mw
        for (std::uint32_t mw = 0; mw <= cutoff + k; ++mw) {
            v.clear();
            for (std::uint32_t mb = 0; mb <= cutoff; ++mb) {
                const std::int64_t n = static_cast<std::int64_t>(mb) + mw - k;
                if (n < 0 || n > static_cast<std::int64_t>(cutoff)) {
                    continue;
                }
                const auto nn = static_cast<std::uint32_t>(n);
                const double bs = beamsplitter_element(p.eta, mb, mw, nn, k);
                if (bs == 0.0) {
                    continue;
                }
                v.emplace_back(out.index(mb, nn), amp[nn] * bs * std::polar(1.0, theta * nn));
            }
            for (const auto& [i, vi] : v) {
                for (const auto& [j, vj] : v) {
                    out.entries(i, j) += w * vi * std::conj(vj);
                }
            }
        }
    }
    return out;
}

DenseTwoModeOperator simulate_psk_output(const ChannelParams& p, std::uint32_t ell,
                                         std::uint32_t cutoff, const EnvironmentOptions& env) {
    if (ell > 12) {
        throw ResourceError("dense PSK mixture limited to ell <= 12");
    }
    const std::uint32_t big_l = 1u << ell;
    DenseTwoModeOperator out;
    out.cutoff = cutoff;
    const auto base = simulate_channel_output(p, 0.0, cutoff, env);
    out.entries = Eigen::MatrixXcd::Zero(base.entries.rows(), base.entries.cols());
    // rotating by theta multiplies <n1 n2|.|m1 m2> by e^{i theta (n2 - m2)}
    const std::uint32_t dim = cutoff + 1;
    for (std::uint32_t k = 0; k < big_l; ++k) {
        const double theta = 2.0 * M_PI * k / big_l;
        for (Eigen::Index i = 0; i < base.entries.rows(); ++i) {
            const auto ni = static_cast<double>(i % dim);
            for (Eigen::Index j = 0; j < base.entries.cols(); ++j) {
                const auto nj = static_cast<double>(j % dim);
                out.entries(i, j) += base.entries(i, j) * std::polar(1.0 / big_l, theta * (ni - nj));
            }
        }
    }
    return out;
}

DenseTwoModeOperator dephase(const DenseTwoModeOperator& op) {
    DenseTwoModeOperator out;
    out.cutoff = op.cutoff;
    out.entries = Eigen::MatrixXcd::Zero(op.entries.rows(), op.entries.cols());
    out.entries.diagonal() = op.entries.diagonal();
    return out;
}

double dense_entropy(const DenseTwoModeOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConsistencyError("dense eigendecomposition failed");
    }
    return entropy_of(solver.eigenvalues());
}

double trace_norm_difference(const DenseTwoModeOperator& x, const DenseTwoModeOperator& y) {
    if (x.entries.rows() != y.entries.rows()) {
        throw DomainError("operators have different dimensions");
    }
    const Eigen::MatrixXcd diff = x.entries - y.entries;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConsistencyError("dense eigendecomposition failed");
    }
    return solver.eigenvalues().cwiseAbs().sum();
}

double direct_fidelity_series(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff) {
    return ray_series(p, ell, cutoff, [](double lf, double lp, double lq) {
        const double hi = std::max(lp, lq);
        const double lsum = hi + std::log1p(std::exp(std::min(lp, lq) - hi));
        return 2.0 * lf - lsum;
    });
}

double direct_entropy_series(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff) {
    return ray_series(p, ell, cutoff, [](double lf, double lp, double lq) {
        return 2.0 * lf + log_log_mean(lp, lq);
    });
}

}  // namespace earate::oracle

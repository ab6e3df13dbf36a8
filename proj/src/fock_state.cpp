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

#include "earate/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "earate/error.hpp"
#include "earate/special_fn.hpp"
#include "parallel.hpp"

namespace earate {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHermitianTol = 1e-13;
constexpr double kEigenClamp = -1e-9;

// n * ln(x) with the conventions 0 * ln(anything) = 0 and ln(0) = -inf.
double n_log(std::uint64_t n, double x) {
    if (n == 0) {
        return 0.0;
    }
    if (x <= 0.0) {
        return kNegInf;
    }
    return static_cast<double>(n) * std::log(x);
}

double xlogx_neg(double lp) {
    // -p ln p from ln p
    if (lp == kNegInf) {
        return 0.0;
    }
    return -std::exp(lp) * lp;
}

std::uint64_t period_for(std::uint32_t ell) {
    return ell >= 63 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << ell);
}

struct TailBases {
    double env_a;
    double env_b;
    double d;
};

TailBases envelope_bases(const ReducedParams& r) {
    const double s = 1.0 + std::sqrt(r.z);
    return {r.a * s, r.b * s, r.d};
}

double envelope_tail(const TailBases& t, std::uint32_t cutoff) {
    const double pa = std::pow(t.env_a, cutoff + 1.0);
    const double pb = std::pow(t.env_b, cutoff + 1.0);
    const double outside = pa + pb - pa * pb;
    return t.d / ((1.0 - t.env_a) * (1.0 - t.env_b)) * outside;
}

double marginal_tail(const ChannelParams& p, std::uint32_t cutoff) {
    const double bob_mean = p.eta * p.n_s + p.n_t;
    const double x1 = bob_mean / (bob_mean + 1.0);
    const double x2 = p.n_s / (p.n_s + 1.0);
    return std::pow(x1, cutoff + 1.0) + std::pow(x2, cutoff + 1.0);
}

// Tail bound for a built state; falls back to the marginal bound when the
// envelope is unusable.
double state_tail_bound(const ChannelParams& p, std::uint32_t cutoff) {
    double bound = marginal_tail(p, cutoff);
    const auto r = reduced(p);
    const auto t = envelope_bases(r);
    if (t.env_a < 1.0 && t.env_b < 1.0) {
        bound = std::min(bound, envelope_tail(t, cutoff));
    }
    return std::min(bound, 1.0);
}

void check_cutoff(std::uint32_t cutoff) {
    if (cutoff > 1u << 16) {
        throw ResourceError("cutoff " + std::to_string(cutoff) + " is beyond the supported range");
    }
}

// Bases of every block of the L-periodic state, in key order.
std::vector<StateBlock> enumerate_blocks(std::uint32_t cutoff, std::uint64_t period) {
    std::vector<StateBlock> blocks;
    const std::int64_t n = cutoff;
    for (std::int64_t k = -n; k <= n; ++k) {
        const std::int64_t lo = std::max<std::int64_t>(0, k);
        const std::int64_t hi = std::min<std::int64_t>(n, n + k);
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        const std::uint64_t residues = period == 0 ? 0 : std::min<std::uint64_t>(period, span);
        if (period == 0 || period > static_cast<std::uint64_t>(n)) {
            // singleton blocks, residue = n1 (n1 mod L == n1 when L > cutoff)
            for (std::int64_t n1 = lo; n1 <= hi; ++n1) {
                StateBlock b;
                b.key = {k, static_cast<std::uint64_t>(n1)};
                b.basis.push_back({static_cast<std::uint32_t>(n1), static_cast<std::uint32_t>(n1 - k)});
                blocks.push_back(std::move(b));
            }
            continue;
        }
        std::vector<StateBlock> by_residue(static_cast<std::size_t>(period));
        for (std::int64_t n1 = lo; n1 <= hi; ++n1) {
            const auto res = static_cast<std::uint64_t>(n1) % period;
            auto& b = by_residue[static_cast<std::size_t>(res)];
            b.key = {k, res};
            b.basis.push_back({static_cast<std::uint32_t>(n1), static_cast<std::uint32_t>(n1 - k)});
        }
        (void)residues;
        for (auto& b : by_residue) {
            if (!b.basis.empty()) {
                blocks.push_back(std::move(b));
            }
        }
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const StateBlock& x, const StateBlock& y) { return x.key < y.key; });
    return blocks;
}

void fill_block(StateBlock& block, const ReducedParams& r) {
    const auto m = static_cast<Eigen::Index>(block.basis.size());
    block.matrix.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const FockPair lo = block.basis[static_cast<std::size_t>(i)];
        for (Eigen::Index j = i; j < m; ++j) {
            const FockPair hi = block.basis[static_cast<std::size_t>(j)];
            const std::uint32_t delta = hi.n1 - lo.n1;
            const double v = std::exp(log_ray_element(r, lo.n1, lo.n2, delta));
            block.matrix(i, j) = v;
            block.matrix(j, i) = v;
        }
    }
}

struct BlockSpectrum {
    double entropy = 0.0;
    double min_eig = 0.0;
};

BlockSpectrum block_spectrum(const StateBlock& block) {
    const auto& m = block.matrix;
    BlockSpectrum out;
    auto accumulate = [&](double l) {
        out.min_eig = std::min(out.min_eig, l);
        if (l <= kEigenClamp) {
            throw ConsistencyError(fmt::format(
                "eigenvalue {:.3e} of block ({}, {}) is below the clamp threshold", l,
                block.key.delta_modes, block.key.residue));
        }
        if (l > 0.0) {
            out.entropy -= l * std::log(l);
        }
    };
    if (m.rows() == 1) {
        accumulate(m(0, 0));
        return out;
    }
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol) {
        throw ConsistencyError(fmt::format("block ({}, {}) is not Hermitian (residual {:.3e})",
                                           block.key.delta_modes, block.key.residue, asym));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConsistencyError("eigendecomposition failed");
    }
    special::CompensatedSum s;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double l = solver.eigenvalues()(i);
        const double before = out.entropy;
        accumulate(l);
        s.add(out.entropy - before);
    }
    out.entropy = s.value();
    return out;
}

}  // namespace

TruncatedState::TruncatedState(std::uint32_t cutoff, std::uint64_t period,
                               std::vector<StateBlock> blocks, double tail_bound)
    : cutoff_(cutoff), period_(period), blocks_(std::move(blocks)), tail_bound_(tail_bound) {
    std::sort(blocks_.begin(), blocks_.end(),
              [](const StateBlock& x, const StateBlock& y) { return x.key < y.key; });
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto& b = blocks_[i];
        if (i > 0 && blocks_[i - 1].key == b.key) {
            throw ConsistencyError("duplicate block key");
        }
        if (b.basis.empty() || b.matrix.rows() != static_cast<Eigen::Index>(b.basis.size()) ||
            b.matrix.cols() != b.matrix.rows()) {
            throw ConsistencyError("block matrix does not match its basis");
        }
        if (period_ == 0 && b.basis.size() != 1) {
            throw ConsistencyError("dephased state must be diagonal");
        }
        for (std::size_t j = 0; j < b.basis.size(); ++j) {
            const auto& f = b.basis[j];
            if (f.n1 > cutoff_ || f.n2 > cutoff_) {
                throw ConsistencyError("basis element outside the truncation box");
            }
            if (static_cast<std::int64_t>(f.n1) - static_cast<std::int64_t>(f.n2) !=
                b.key.delta_modes) {
                throw ConsistencyError("basis element violates the n1 - n2 selection rule");
            }
            const std::uint64_t res = period_ == 0 ? f.n1 : f.n1 % period_;
            if (res != b.key.residue) {
                throw ConsistencyError("basis element violates the period selection rule");
            }
            if (j > 0 && !(b.basis[j - 1].n1 < f.n1)) {
                throw ConsistencyError("block basis must be sorted by n1");
            }
        }
        if (b.matrix.rows() > 1 &&
            (b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() > kHermitianTol) {
            throw ConsistencyError("block matrix is not Hermitian");
        }
    }
}

double TruncatedState::trace() const {
    special::CompensatedSum s;
    for (const auto& b : blocks_) {
        for (Eigen::Index i = 0; i < b.matrix.rows(); ++i) {
            s.add(b.matrix(i, i));
        }
    }
    return s.value();
}

double TruncatedState::element(FockPair row, FockPair col) const {
    const std::int64_t k_row = static_cast<std::int64_t>(row.n1) - row.n2;
    const std::int64_t k_col = static_cast<std::int64_t>(col.n1) - col.n2;
    if (k_row != k_col) {
        return 0.0;
    }
    const std::uint64_t r_row = period_ == 0 ? row.n1 : row.n1 % period_;
    const std::uint64_t r_col = period_ == 0 ? col.n1 : col.n1 % period_;
    if (r_row != r_col) {
        return 0.0;
    }
    const BlockKey key{k_row, r_row};
    const auto it = std::lower_bound(
        blocks_.begin(), blocks_.end(), key,
        [](const StateBlock& b, const BlockKey& k) { return b.key < k; });
    if (it == blocks_.end() || it->key != key) {
        return 0.0;
    }
    auto index_of = [&](FockPair f) -> Eigen::Index {
        const auto pos = std::lower_bound(it->basis.begin(), it->basis.end(), f,
                                          [](const FockPair& x, const FockPair& y) { return x.n1 < y.n1; });
        if (pos == it->basis.end() || *pos != f) {
            return -1;
        }
        return static_cast<Eigen::Index>(pos - it->basis.begin());
    };
    const auto i = index_of(row);
    const auto j = index_of(col);
    if (i < 0 || j < 0) {
        return 0.0;
    }
    return it->matrix(i, j);
}

double log_ray_element(const ReducedParams& r, std::uint32_t nbar1, std::uint32_t nbar2,
                       std::uint32_t delta) {
    using special::log_factorial;
    const double powers = n_log(nbar1, r.a) + n_log(nbar2, r.b) + n_log(delta, r.c);
    if (powers == kNegInf) {
        return kNegInf;
    }
    const double binom = 0.5 * (log_factorial(nbar1 + delta) - log_factorial(nbar1) +
                                log_factorial(nbar2 + delta) - log_factorial(nbar2));
    const double hyp = special::log_hyp2f1_terminating(nbar1, nbar2, delta + 1, r.z);
    return binom + powers + std::log(r.d) + hyp - log_factorial(delta);
}

double lambda_element(const ChannelParams& p, std::uint32_t n1, std::uint32_t n2,
                      std::uint32_t nbar1, std::uint32_t nbar2) {
    const std::int64_t d1 = static_cast<std::int64_t>(n1) - nbar1;
    const std::int64_t d2 = static_cast<std::int64_t>(n2) - nbar2;
    if (d1 != d2) {
        return 0.0;
    }
    const auto r = reduced(p);
    if (d1 >= 0) {
        return std::exp(log_ray_element(r, nbar1, nbar2, static_cast<std::uint32_t>(d1)));
    }
    // real symmetric at theta = 0
    return std::exp(log_ray_element(r, n1, n2, static_cast<std::uint32_t>(-d1)));
}

double log_p_diag(const ReducedParams& r, std::uint32_t n1, std::uint32_t n2) {
    const double powers = n_log(n1, r.a) + n_log(n2, r.b);
    if (powers == kNegInf) {
        return kNegInf;
    }
    return std::log(r.d) + powers + special::log_hyp2f1_terminating(n1, n2, 1, r.z);
}

double p_diag(const ChannelParams& p, std::uint32_t n1, std::uint32_t n2) {
    return std::exp(log_p_diag(reduced(p), n1, n2));
}

double p_diag_nonterminating(const ChannelParams& p, std::uint32_t n1, std::uint32_t n2) {
    const double nt = p.n_t;
    const double eta = p.eta;
    const double ns = p.n_s;
    if (!(nt > eta)) {
        throw DomainError("non-terminating form of p(n1, n2) requires n_t > eta");
    }
    const auto r = reduced(p);
    const double gap = nt - eta;
    const double log_pref = std::log(gap / ((gap + 1.0) * nt * (1.0 + ns)));
    const double log_x1 = std::log((eta - nt) / (-1.0 + eta - nt));
    const double log_x2 = std::log(ns * gap / ((1.0 + ns) * nt));
    const double hyp = special::log_hyp2f1_nonterminating(n1 + 1.0, n2 + 1.0, 1, r.z);
    return std::exp(log_pref + n1 * log_x1 + n2 * log_x2 + hyp);
}

std::complex<double> rotated_element(const ChannelParams& p, double theta, std::uint32_t n1,
                                     std::uint32_t n2, std::uint32_t nbar1, std::uint32_t nbar2) {
    const double v = lambda_element(p, n1, n2, nbar1, nbar2);
    const double delta = static_cast<double>(n1) - static_cast<double>(nbar1);
    if (delta == 0.0) {
        return {v, 0.0};
    }
    return std::polar(v, theta * delta);
}

double tail_mass_bound(const ChannelParams& p, std::uint32_t cutoff) {
    const auto t = envelope_bases(reduced(p));
    if (!(t.env_a < 1.0) || !(t.env_b < 1.0)) {
        throw DomainError(fmt::format(
            "truncation envelopes a(1+sqrt z) = {:.6g}, b(1+sqrt z) = {:.6g} must be < 1; "
            "check validity_check() for these parameters",
            t.env_a, t.env_b));
    }
    return std::min({envelope_tail(t, cutoff), marginal_tail(p, cutoff), 1.0});
}

double marginal_tail_bound(const ChannelParams& p, std::uint32_t cutoff) {
    return std::min(marginal_tail(p, cutoff), 1.0);
}

std::uint32_t truncation_cutoff(const ChannelParams& p, double tail_tol) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw DomainError("tail_tol must lie in (0, 1)");
    }
    constexpr std::uint32_t kSearchLimit = 1u << 20;
    for (std::uint32_t n = 1; n < kSearchLimit; ++n) {
        if (tail_mass_bound(p, n) <= tail_tol) {
            return n;
        }
    }
    throw ResourceError("no cutoff below 2^20 reaches the requested tail tolerance");
}

std::uint32_t resolve_cutoff(const ChannelParams& p, double tail_tol, std::uint32_t max_cutoff) {
    return std::min(truncation_cutoff(p, tail_tol), max_cutoff);
}

TruncatedState build_psk_state(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff) {
    check_cutoff(cutoff);
    const auto r = reduced(p);
    const std::uint64_t period = period_for(ell);
    auto blocks = enumerate_blocks(cutoff, period);
    detail::parallel_for(blocks.size(), [&](std::size_t i) { fill_block(blocks[i], r); });
    return TruncatedState(cutoff, period, std::move(blocks), state_tail_bound(p, cutoff));
}

TruncatedState build_dephased_state(const ChannelParams& p, std::uint32_t cutoff) {
    check_cutoff(cutoff);
    const auto r = reduced(p);
    auto blocks = enumerate_blocks(cutoff, 0);
    for (auto& b : blocks) {
        const FockPair f = b.basis.front();
        b.matrix.resize(1, 1);
        b.matrix(0, 0) = std::exp(log_p_diag(r, f.n1, f.n2));
    }
    return TruncatedState(cutoff, 0, std::move(blocks), state_tail_bound(p, cutoff));
}

EntropyResult von_neumann_entropy(const TruncatedState& state, unsigned workers) {
    const auto& blocks = state.blocks();
    std::vector<BlockSpectrum> spectra(blocks.size());
    detail::parallel_for(
        blocks.size(), [&](std::size_t i) { spectra[i] = block_spectrum(blocks[i]); }, workers);
    EntropyResult out;
    special::CompensatedSum s;
    for (const auto& sp : spectra) {
        s.add(sp.entropy);
        out.negative_eig_floor = std::min(out.negative_eig_floor, sp.min_eig);
    }
    out.entropy = std::max(0.0, s.value());
    out.truncation_tail = state.tail_bound();
    return out;
}

double dephased_entropy(const ChannelParams& p, std::uint32_t cutoff) {
    check_cutoff(cutoff);
    const auto r = reduced(p);
    std::vector<double> rows(cutoff + 1);
    detail::parallel_for(rows.size(), [&](std::size_t n1) {
        special::CompensatedSum s;
        for (std::uint32_t n2 = 0; n2 <= cutoff; ++n2) {
            s.add(xlogx_neg(log_p_diag(r, static_cast<std::uint32_t>(n1), n2)));
        }
        rows[n1] = s.value();
    });
    special::CompensatedSum total;
    for (double v : rows) {
        total.add(v);
    }
    return total.value();
}

double holevo_psk(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff,
                  unsigned workers) {
    const auto state = build_psk_state(p, ell, cutoff);
    return von_neumann_entropy(state, workers).entropy - conditional_entropy(p);
}

double holevo_continuous(const ChannelParams& p, std::uint32_t cutoff) {
    return dephased_entropy(p, cutoff) - conditional_entropy(p);
}

double psk_entropy_gap(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff,
                       unsigned workers) {
    const auto state = build_psk_state(p, ell, cutoff);
    const auto r = reduced(p);
    const auto& blocks = state.blocks();
    std::vector<double> gaps(blocks.size(), 0.0);
    detail::parallel_for(
        blocks.size(),
        [&](std::size_t i) {
            const auto& b = blocks[i];
            if (b.basis.size() == 1) {
                return;
            }
            special::CompensatedSum diag;
            for (const auto& f : b.basis) {
                diag.add(xlogx_neg(log_p_diag(r, f.n1, f.n2)));
            }
            gaps[i] = diag.value() - block_spectrum(b).entropy;
        },
        workers);
    special::CompensatedSum total;
    for (double g : gaps) {
        total.add(g);
    }
    return total.value();
}

double hs_perturbation_norm_sq(const ChannelParams& p, std::uint32_t ell, std::uint32_t cutoff) {
    check_cutoff(cutoff);
    const auto r = reduced(p);
    const std::uint64_t period = period_for(ell);
    special::CompensatedSum s;
    for (std::uint64_t delta = period; delta <= cutoff; delta += period) {
        const auto dd = static_cast<std::uint32_t>(delta);
        for (std::uint32_t nb1 = 0; nb1 + dd <= cutoff; ++nb1) {
            for (std::uint32_t nb2 = 0; nb2 + dd <= cutoff; ++nb2) {
                s.add(std::exp(2.0 * log_ray_element(r, nb1, nb2, dd)));
            }
        }
        if (period > cutoff) {
            break;
        }
    }
    return 2.0 * s.value();
}

void write_state_csv(const TruncatedState& state, std::ostream& out) {
    struct Row {
        FockPair row;
        FockPair col;
        double value;
    };
    std::vector<Row> rows;
    for (const auto& b : state.blocks()) {
        for (std::size_t i = 0; i < b.basis.size(); ++i) {
            for (std::size_t j = 0; j < b.basis.size(); ++j) {
                rows.push_back({b.basis[i], b.basis[j],
                                b.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        return std::tie(x.row.n1, x.row.n2, x.col.n1, x.col.n2) <
               std::tie(y.row.n1, y.row.n2, y.col.n1, y.col.n2);
    });
    out << "n1,n2,nbar1,nbar2,value\n";
    for (const auto& r : rows) {
        out << fmt::format("{},{},{},{},{:.16e}\n", r.row.n1, r.row.n2, r.col.n1, r.col.n2, r.value);
    }
}

}  // namespace earate

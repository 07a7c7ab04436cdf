// SPDX-License-Identifier: Apache-2.0
//
// risde: large-system analysis of distributed-RIS assisted MISO downlinks
// Copyright (C) 2026 risde contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risde/estimation.hpp"

#include <cmath>

#include "risde/channels.hpp"
#include "risde/rng.hpp"

namespace risde {

namespace {

double subphase_count(Protocol protocol, const SystemDims& dims, const TrainingConfig& cfg) {
    if (protocol != Protocol::MmseDft) return 1.0;
    const double nl = static_cast<double>(dims.N()) * dims.L;
    if (nl == 0.0) return 1.0;
    const double S = nl / dims.M + 1.0;
    return cfg.integer_ceil_s ? std::ceil(S) : S;
}

}  // namespace

TrainingOverhead training_overhead_unchecked(Protocol protocol, const SystemDims& dims,
                                             const TrainingConfig& cfg) {
    TrainingOverhead to;
    to.S = subphase_count(protocol, dims, cfg);
    to.overhead_symbols = to.S * cfg.tau_s;
    if (protocol == Protocol::PerfectCsi && cfg.perfect_csi_full_prefactor) {
        to.overhead_symbols = 0.0;
        to.prefactor = 1.0;
    } else {
        to.prefactor = 1.0 - to.overhead_symbols / cfg.tau_c;
    }
    return to;
}

TrainingOverhead training_overhead(Protocol protocol, const SystemDims& dims,
                                   const TrainingConfig& cfg) {
    TrainingOverhead to = training_overhead_unchecked(protocol, dims, cfg);
    if (to.prefactor <= 0.0)
        throw std::invalid_argument("training_overhead: overhead exceeds the coherence block");
    return to;
}

cmat dft_training_matrix(int S, int cols) {
    if (S < 1) throw std::invalid_argument("dft_training_matrix: S must be >= 1");
    cmat V(S, cols);
    for (int s = 0; s < S; ++s)
        for (int n = 0; n < cols; ++n)
            V(s, n) = std::polar(1.0, -2.0 * M_PI * n * s / S);
    return V;
}

DftObservations simulate_dft_observations(const ChannelRealization& real,
                                          const ChannelStatistics& stats,
                                          const TrainingConfig& cfg, std::uint64_t seed,
                                          std::uint64_t trial) {
    const auto& d = stats.dims;
    if (static_cast<int>(real.h_d.size()) != d.K)
        throw std::invalid_argument("simulate_dft_observations: wrong realization");
    const double S = subphase_count(Protocol::MmseDft, d, cfg);

    DftObservations obs;
    obs.r0.resize(d.K);
    obs.rl.assign(d.L, std::vector<cvec>(d.K));

    const double sd0 = std::sqrt(1.0 / (S * cfg.rho_p * cfg.tau_s));
    for (int k = 0; k < d.K; ++k) {
        RngStream rng(seed, RngDomain::TrainNoiseDirect, trial, static_cast<std::uint64_t>(k));
        obs.r0[k] = real.h_d[k] + sd0 * rng.cn_vector(d.M);
    }
    for (int l = 0; l < d.L; ++l) {
        const double sdl = std::sqrt(1.0 / (S * cfg.rho_p * cfg.tau_s * d.M * stats.beta_1[l]));
        for (int k = 0; k < d.K; ++k) {
            RngStream rng(seed, RngDomain::TrainNoiseRis, trial, static_cast<std::uint64_t>(k),
                          static_cast<std::uint64_t>(l));
            obs.rl[l][k] = real.h_2[l][k] + sdl * rng.cn_vector(d.N());
        }
    }
    return obs;
}

DftLinkEstimates mmse_dft_link_estimates(const DftObservations& obs,
                                         const ChannelStatistics& stats,
                                         const TrainingConfig& cfg) {
    const auto& d = stats.dims;
    DftLinkEstimates est;
    est.S = subphase_count(Protocol::MmseDft, d, cfg);
    est.hn_d.resize(d.K);
    est.hn_2.assign(d.L, std::vector<cvec>(d.K));

    for (int k = 0; k < d.K; ++k) {
        const double bn = stats.beta_n_d(k);
        const double w = bn / (bn + 1.0 / (est.S * cfg.rho_p * cfg.tau_s));
        est.hn_d[k] = w * (obs.r0[k] - stats.h_bar_d[k]);
    }
    for (int l = 0; l < d.L; ++l) {
        for (int k = 0; k < d.K; ++k) {
            const double bn = stats.beta_n_2(l, k);
            const double w =
                bn / (bn + 1.0 / (est.S * cfg.rho_p * cfg.tau_s * d.M * stats.beta_1[l]));
            est.hn_2[l][k] = w * (obs.rl[l][k] - stats.h_bar_2[l][k]);
        }
    }
    return est;
}

ChannelEstimate assemble_dft_estimate(const DftLinkEstimates& links,
                                      const ChannelStatistics& stats, const PhaseProfile& phases,
                                      const TrainingConfig& cfg) {
    const auto& d = stats.dims;
    ChannelEstimate est;
    est.protocol = Protocol::MmseDft;
    est.h_hat.resize(d.K);
    est.mu_hat.resize(d.K);
    est.C.resize(d.K);

    std::vector<cmat> W(d.L);
    for (int l = 0; l < d.L; ++l) W[l] = stats.H1[l] * stats.H1[l].adjoint();

    for (int k = 0; k < d.K; ++k) {
        est.mu_hat[k] = aggregate_mean(stats, phases, k);
        cvec h = est.mu_hat[k] + links.hn_d[k];
        for (int l = 0; l < d.L; ++l)
            h += stats.H1[l] * phases.block(l, d.N()).cwiseProduct(links.hn_2[l][k]);
        est.h_hat[k] = std::move(h);

        const double bn = stats.beta_n_d(k);
        cmat C = bn * bn / (bn + 1.0 / (links.S * cfg.rho_p * cfg.tau_s)) *
                 cmat::Identity(d.M, d.M);
        for (int l = 0; l < d.L; ++l) {
            const double b2 = stats.beta_n_2(l, k);
            C += b2 * b2 /
                 (b2 + 1.0 / (links.S * cfg.rho_p * cfg.tau_s * d.M * stats.beta_1[l])) * W[l];
        }
        est.C[k] = std::move(C);
    }
    return est;
}

ChannelEstimate mmse_dft_estimate(const DftObservations& obs, const ChannelStatistics& stats,
                                  const PhaseProfile& phases, const TrainingConfig& cfg) {
    return assemble_dft_estimate(mmse_dft_link_estimates(obs, stats, cfg), stats, phases, cfg);
}

DeMatrices build_de_matrices(const ChannelStatistics& stats, const TrainingConfig& cfg) {
    const auto& d = stats.dims;
    DeMatrices de;
    de.R.resize(d.K);
    de.Q.resize(d.K);
    de.RQR.resize(d.K);

    std::vector<cmat> W(d.L);
    for (int l = 0; l < d.L; ++l) W[l] = stats.H1[l] * stats.H1[l].adjoint();

    const double reg = 1.0 / (cfg.rho_p * cfg.tau_s);
    for (int k = 0; k < d.K; ++k) {
        cmat R = stats.beta_n_d(k) * cmat::Identity(d.M, d.M);
        for (int l = 0; l < d.L; ++l) R += stats.beta_n_2(l, k) * W[l];

        // eigendecomposition keeps R, Q and RQR consistent and exposes conditioning
        Eigen::SelfAdjointEigenSolver<cmat> eig(R);
        const dvec& lam = eig.eigenvalues();
        const double cond = (lam[d.M - 1] + reg) / (lam[0] + reg);
        if (!(cond < 1e14))
            throw std::runtime_error("build_de_matrices: regularized covariance too ill-conditioned");

        dvec q = (lam.array() + reg).inverse();
        dvec rqr = lam.array().square() * q.array();
        de.R[k] = std::move(R);
        de.Q[k] = eig.eigenvectors() * q.asDiagonal() * eig.eigenvectors().adjoint();
        de.RQR[k] = eig.eigenvectors() * rqr.asDiagonal() * eig.eigenvectors().adjoint();
    }
    return de;
}

std::vector<cvec> simulate_de_observation(const ChannelRealization& real,
                                          const ChannelStatistics& stats,
                                          const PhaseProfile& phases, const TrainingConfig& cfg,
                                          std::uint64_t seed, std::uint64_t trial) {
    const auto& d = stats.dims;
    std::vector<cvec> y(d.K);
    const double sd = std::sqrt(1.0 / (cfg.rho_p * cfg.tau_s));
    for (int k = 0; k < d.K; ++k) {
        RngStream rng(seed, RngDomain::TrainNoiseDe, trial, static_cast<std::uint64_t>(k));
        y[k] = aggregate_channel(real, stats, phases, k) + sd * rng.cn_vector(d.M);
    }
    return y;
}

ChannelEstimate mmse_de_estimate(const std::vector<cvec>& y, const ChannelStatistics& stats,
                                 const DeMatrices& de, const PhaseProfile& phases) {
    const auto& d = stats.dims;
    ChannelEstimate est;
    est.protocol = Protocol::DirectEstimate;
    est.h_hat.resize(d.K);
    est.mu_hat.resize(d.K);
    est.C = de.RQR;
    for (int k = 0; k < d.K; ++k) {
        est.mu_hat[k] = aggregate_mean(stats, phases, k);
        est.h_hat[k] = est.mu_hat[k] + de.R[k] * (de.Q[k] * (y[k] - est.mu_hat[k]));
    }
    return est;
}

ChannelEstimate perfect_estimate(const ChannelRealization& real, const ChannelStatistics& stats,
                                 const PhaseProfile& phases) {
    const auto& d = stats.dims;
    EquivalentStats eq = equivalent_stats(stats, phases);
    ChannelEstimate est;
    est.protocol = Protocol::PerfectCsi;
    est.h_hat.resize(d.K);
    est.mu_hat = eq.mu;
    est.C = eq.A;
    for (int k = 0; k < d.K; ++k) est.h_hat[k] = aggregate_channel(real, stats, phases, k);
    return est;
}

}  // namespace risde

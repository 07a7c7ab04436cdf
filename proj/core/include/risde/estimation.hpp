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

#pragma once

#include <cstdint>
#include <vector>

#include "risde/types.hpp"

namespace risde {

/// Sub-phase count and net-rate prefactor 1 - S*tau_s/tau_c for a protocol.
struct TrainingOverhead {
    double S = 1.0;
    double overhead_symbols = 0.0;  // S * tau_s
    double prefactor = 1.0;
};

/// Full-CE protocol: S = N*L/M + 1 (fractional by default); direct estimation:
/// S = 1. Throws when the overhead exceeds the coherence block.
TrainingOverhead training_overhead(Protocol protocol, const SystemDims& dims,
                                   const TrainingConfig& cfg);

/// As above but returns prefactor <= 0 instead of throwing.
TrainingOverhead training_overhead_unchecked(Protocol protocol, const SystemDims& dims,
                                             const TrainingConfig& cfg);

/// [V]_{s,n} = exp(-j 2 pi (n-1)(s-1)/S), S rows, `cols` leading DFT columns.
cmat dft_training_matrix(int S, int cols);

/// Post-processed training observations of the full-CE protocol. Effective
/// per-entry noise variances: 1/(S rho_p tau_s) on the direct link and
/// 1/(S rho_p tau_s M beta_1l) on surface links.
struct DftObservations {
    std::vector<cvec> r0;               // K of M
    std::vector<std::vector<cvec>> rl;  // [L][K] of N
};

DftObservations simulate_dft_observations(const ChannelRealization& real,
                                          const ChannelStatistics& stats,
                                          const TrainingConfig& cfg, std::uint64_t seed,
                                          std::uint64_t trial);

/// Per-link MMSE estimates of the NLoS components under the full-CE protocol.
struct DftLinkEstimates {
    std::vector<cvec> hn_d;               // K of M
    std::vector<std::vector<cvec>> hn_2;  // [L][K] of N
    double S = 1.0;
};

DftLinkEstimates mmse_dft_link_estimates(const DftObservations& obs,
                                         const ChannelStatistics& stats,
                                         const TrainingConfig& cfg);

/// Aggregate channel estimate with its covariance model.
struct ChannelEstimate {
    std::vector<cvec> h_hat;   // K of M
    std::vector<cvec> mu_hat;  // K of M, deterministic mean part
    std::vector<cmat> C;       // K of M x M, estimate covariance
    Protocol protocol = Protocol::PerfectCsi;
};

/// Assembles the aggregate estimate and its covariance (sum of per-link
/// MMSE-filtered pieces) for the phases in force during data transmission.
ChannelEstimate assemble_dft_estimate(const DftLinkEstimates& links,
                                      const ChannelStatistics& stats, const PhaseProfile& phases,
                                      const TrainingConfig& cfg);

/// Convenience: observations -> link estimates -> aggregate estimate.
ChannelEstimate mmse_dft_estimate(const DftObservations& obs, const ChannelStatistics& stats,
                                  const PhaseProfile& phases, const TrainingConfig& cfg);

/// Aggregate-channel covariance R_k and regularized inverse Q_k of the
/// direct-estimation protocol, cached per scenario.
struct DeMatrices {
    std::vector<cmat> R;    // K of M x M
    std::vector<cmat> Q;    // K of M x M
    std::vector<cmat> RQR;  // K of M x M, estimate covariance
};

/// R_k = beta_n_d I + sum_l beta_n_2 H H^H; Q_k = (R_k + I/(rho_p tau_s))^-1.
/// Throws when the regularized matrix conditioning exceeds 1e14.
DeMatrices build_de_matrices(const ChannelStatistics& stats, const TrainingConfig& cfg);

/// y_k = h_k(phi) + n, n ~ CN(0, I/(rho_p tau_s)).
std::vector<cvec> simulate_de_observation(const ChannelRealization& real,
                                          const ChannelStatistics& stats,
                                          const PhaseProfile& phases, const TrainingConfig& cfg,
                                          std::uint64_t seed, std::uint64_t trial);

/// h_hat_k = mu_k + R_k Q_k (y_k - mu_k); C_k = R_k Q_k R_k.
ChannelEstimate mmse_de_estimate(const std::vector<cvec>& y, const ChannelStatistics& stats,
                                 const DeMatrices& de, const PhaseProfile& phases);

/// Truth passthrough: h_hat = h, C = A, mu_hat = mu.
ChannelEstimate perfect_estimate(const ChannelRealization& real, const ChannelStatistics& stats,
                                 const PhaseProfile& phases);

}  // namespace risde

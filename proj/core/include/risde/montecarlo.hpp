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
#include <optional>
#include <vector>

#include "risde/estimation.hpp"
#include "risde/types.hpp"

namespace risde {

struct McConfig {
    int trials = 500;
    std::uint64_t seed = 1;
    bool report_variance = true;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const {
        if (trials < 1) throw std::invalid_argument("McConfig: trials must be >= 1");
    }
};

/// Finite-size SINR estimate assembled from sampled moments of the effective
/// channels; stderrs are block-jackknife estimates.
struct McSinrReport {
    dvec gamma_hat;                 // K
    std::vector<cplx> mean_eff;     // K, sample mean of h_k^H h_hat_k
    dvec var_eff;                   // K, sample variance of h_k^H h_hat_k
    dvec interf_hat;                // K, sample mean of sum_{f!=k} p_f |h_k^H h_hat_f|^2
    double psi_hat = 0.0;           // sample mean of tr(P Hhat Hhat^H)
    dvec gamma_stderr;              // K
    dvec mean_eff_stderr;           // K (magnitude)
    double psi_stderr = 0.0;
    double net_sum_rate = 0.0;
    double net_sum_rate_stderr = 0.0;
    double prefactor = 1.0;
};

/// MRT precoders g_k = zeta * h_hat_k with zeta^2 = P_max / Psi. With no
/// override, Psi is the sample value tr(P Hhat^H Hhat) of this estimate set.
struct MrtPrecoders {
    cmat G;  // M x K
    double zeta = 0.0;
    double psi_sample = 0.0;
};

MrtPrecoders mrt_precoders(const ChannelEstimate& estimates, const PowerConfig& powers,
                           std::optional<double> psi_mean = std::nullopt);

/// Simulates `trials` coherence blocks (channel draw + training + estimation),
/// accumulates the moments of the hardening-bound SINR, and assembles the
/// per-user report. Deterministic in (seed, trials) for any thread count.
McSinrReport mc_sinr(const ChannelStatistics& stats, const PhaseProfile& phases,
                     Protocol protocol, const PowerConfig& powers, const TrainingConfig& cfg,
                     const McConfig& mc);

/// Instantaneous SINR for one realization's estimates with estimation-error
/// covariance C_tilde_k = A_k - C_k.
dvec instantaneous_sinr(const ChannelEstimate& estimates, const ChannelStatistics& stats,
                        const PowerConfig& powers);

/// prefactor * sum log2(1 + gamma_hat).
double mc_net_sum_rate(const McSinrReport& report, double prefactor);

/// Instantaneous mode: mean over per-trial net rates.
double mc_net_sum_rate(const std::vector<double>& per_trial_rates);

}  // namespace risde

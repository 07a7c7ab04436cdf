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

#include <vector>

#include "risde/types.hpp"

namespace risde {

/// Rank-structured LoS outer product D_k; numerically equals mu_k mu_k^H.
cmat build_D(const ChannelStatistics& stats, const PhaseProfile& phases, int k);

/// Large-system SINR evaluator shared by every closed form. The protocol
/// fixes the estimate covariance C_k (full-CE filter, direct-estimation
/// R Q R, or the true covariance A_k for perfect CSI) and the prefactor;
/// the phase profile enters only through the aggregate LoS means.
///
/// gamma_k = p_k |tr(D_k + C_k)/M|^2 /
///           ( 1/M sum_{f != k} p_f/M tr((D_f + C_f)(D_k + A_k))
///             + 1/M sum_j p_j/M tr(D_j + C_j) / rho ).
class DetEqEvaluator {
  public:
    DetEqEvaluator(const ChannelStatistics& stats, const PowerConfig& powers,
                   const TrainingConfig& cfg, Protocol protocol);

    SinrReport evaluate(const PhaseProfile& phases) const;

    /// Net sum-rate at an arbitrary (not necessarily unit-modulus) phi.
    double objective(const cvec& phi) const;

    /// Wirtinger gradient d(net sum-rate)/d(phi*), length N*L. The ascent
    /// direction of Algorithm-style updates; for a real objective f the
    /// directional derivative along d(phi) is 2 Re(dphi^H g).
    cvec gradient(const cvec& phi) const;

    double prefactor() const { return prefactor_; }
    Protocol protocol() const { return protocol_; }
    Eigen::Index phase_count() const { return static_cast<Eigen::Index>(nl_); }

  private:
    SinrReport evaluate_phi(const cvec& phi) const;
    std::vector<cvec> means(const cvec& phi) const;

    int M_, K_, L_, N_;
    long nl_;
    Protocol protocol_;
    double rho_;
    double prefactor_;
    dvec p_;
    std::vector<cvec> h_bar_d_;
    std::vector<cmat> B_;    // K of M x NL, columns H1_l[:,n] * h_bar_2[l][k][n]
    std::vector<cmat> A_;    // K of M x M
    std::vector<cmat> C_;    // K of M x M
    dvec trC_;               // K
    dmat trCA_;              // K x K, tr(C_f A_k)
};

// Closed forms. The Rician entry points accept degenerate (kappa = 0,
// zero-LoS) statistics; the Rayleigh ones require Rayleigh mode.
SinrReport sinr_det_dft_rician(const ChannelStatistics& stats, const PhaseProfile& phases,
                               const PowerConfig& powers, const TrainingConfig& cfg);
SinrReport sinr_det_de_rician(const ChannelStatistics& stats, const PhaseProfile& phases,
                              const PowerConfig& powers, const TrainingConfig& cfg);
SinrReport sinr_det_perfect_rician(const ChannelStatistics& stats, const PhaseProfile& phases,
                                   const PowerConfig& powers, const TrainingConfig& cfg);
SinrReport sinr_det_noris(const ChannelStatistics& stats, const PowerConfig& powers,
                          const TrainingConfig& cfg);
SinrReport sinr_det_dft_rayleigh(const ChannelStatistics& stats, const PhaseProfile& phases,
                                 const PowerConfig& powers, const TrainingConfig& cfg);
SinrReport sinr_det_de_rayleigh(const ChannelStatistics& stats, const PowerConfig& powers,
                                const TrainingConfig& cfg);
SinrReport sinr_det_perfect_rayleigh(const ChannelStatistics& stats, const PowerConfig& powers,
                                     const TrainingConfig& cfg);

/// Closed scalar form for the semi-unitary special case with unit powers:
/// gamma_k = 1 / ( 1/M sum_{f != k} beta_df/beta_dk
///                 + sum_k' beta_dk' / (M beta_dk^2 rho (cbar N + 1)) ).
dvec sinr_special_case(const dvec& beta_d, double c_bar, int N, int M, double rho);

/// prefactor * sum_k log2(1 + gamma_k). Throws for prefactor <= 0.
double net_sum_rate(const dvec& gamma, double prefactor);

}  // namespace risde

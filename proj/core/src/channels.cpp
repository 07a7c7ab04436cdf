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

#include "risde/channels.hpp"

#include <cmath>

#include "risde/rng.hpp"

namespace risde {

ChannelRealization sample_realization(const ChannelStatistics& stats, std::uint64_t seed,
                                      std::uint64_t trial) {
    const auto& d = stats.dims;
    ChannelRealization real;
    real.fading = stats.fading;
    real.h_d.resize(d.K);
    real.h_2.assign(d.L, std::vector<cvec>(d.K));

    for (int k = 0; k < d.K; ++k) {
        RngStream rng(seed, RngDomain::ChannelDirect, trial, static_cast<std::uint64_t>(k));
        const double sd = std::sqrt(stats.beta_n_d(k));
        real.h_d[k] = stats.h_bar_d[k] + sd * rng.cn_vector(d.M);
    }
    for (int l = 0; l < d.L; ++l) {
        for (int k = 0; k < d.K; ++k) {
            RngStream rng(seed, RngDomain::ChannelRis, trial, static_cast<std::uint64_t>(k),
                          static_cast<std::uint64_t>(l));
            const double sd = std::sqrt(stats.beta_n_2(l, k));
            real.h_2[l][k] = stats.h_bar_2[l][k] + sd * rng.cn_vector(d.N());
        }
    }
    return real;
}

cvec aggregate_channel(const ChannelRealization& real, const ChannelStatistics& stats,
                       const PhaseProfile& phases, int k) {
    const auto& d = stats.dims;
    if (static_cast<int>(real.h_d.size()) != d.K)
        throw std::invalid_argument("aggregate_channel: realization/statistics mismatch");
    if (phases.size() != static_cast<Eigen::Index>(d.L) * d.N())
        throw std::invalid_argument("aggregate_channel: phase profile has wrong length");

    cvec h = real.h_d[k];
    for (int l = 0; l < d.L; ++l)
        h += stats.H1[l] * phases.block(l, d.N()).cwiseProduct(real.h_2[l][k]);
    return h;
}

cvec aggregate_mean(const ChannelStatistics& stats, const PhaseProfile& phases, int k) {
    const auto& d = stats.dims;
    cvec mu = stats.h_bar_d[k];
    for (int l = 0; l < d.L; ++l)
        mu += stats.H1[l] * phases.block(l, d.N()).cwiseProduct(stats.h_bar_2[l][k]);
    return mu;
}

EquivalentStats equivalent_stats(const ChannelStatistics& stats, const PhaseProfile& phases) {
    const auto& d = stats.dims;
    EquivalentStats eq;
    eq.mu.resize(d.K);
    eq.A.resize(d.K);

    std::vector<cmat> W(d.L);
    for (int l = 0; l < d.L; ++l) W[l] = stats.H1[l] * stats.H1[l].adjoint();

    for (int k = 0; k < d.K; ++k) {
        eq.mu[k] = aggregate_mean(stats, phases, k);
        cmat A = stats.beta_n_d(k) * cmat::Identity(d.M, d.M);
        for (int l = 0; l < d.L; ++l) A += stats.beta_n_2(l, k) * W[l];
        eq.A[k] = std::move(A);
    }
    return eq;
}

PhaseProfile random_phases(const SystemDims& dims, std::uint64_t seed, std::uint64_t index) {
    RngStream rng(seed, RngDomain::PhaseInit, index);
    const Eigen::Index nl = static_cast<Eigen::Index>(dims.L) * dims.N();
    cvec phi(nl);
    for (Eigen::Index i = 0; i < nl; ++i) phi[i] = std::polar(1.0, 2.0 * M_PI * rng.next_uniform());
    return PhaseProfile::from(std::move(phi));
}

}  // namespace risde

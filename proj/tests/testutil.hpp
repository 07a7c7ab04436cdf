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

#include <cmath>

#include "risde/channels.hpp"
#include "risde/rng.hpp"
#include "risde/types.hpp"

namespace risde::testutil {

/// Synthetic statistics with O(1) channel scales: unit-modulus-phase LoS
/// objects, beta in [0.1, 2], kappa in [0.5, 5]. Keeps conditioning mild so
/// exact-identity checks are meaningful.
inline ChannelStatistics random_stats(int M, int N1, int N2, int K, int L, Fading fading,
                                      std::uint64_t seed) {
    SystemDims dims{M, K, L, N1, N2};
    const int N = dims.N();
    RngStream rng(seed, RngDomain::Unitary, 42);

    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * rng.next_uniform(); };
    const bool ray = fading == Fading::Rayleigh;

    ChannelStatistics st;
    st.dims = dims;
    st.fading = fading;
    st.beta_d.resize(K);
    st.kappa_d.resize(K);
    st.beta_1.resize(L);
    st.beta_2.resize(L, K);
    st.kappa_2.resize(L, K);
    st.h_bar_d.resize(K);
    st.h_bar_2.assign(L, std::vector<cvec>(K));
    st.H1.resize(L);

    for (int k = 0; k < K; ++k) {
        st.beta_d[k] = uni(0.1, 2.0);
        st.kappa_d[k] = ray ? 0.0 : uni(0.5, 5.0);
        const double amp = ray ? 0.0
                               : std::sqrt(st.beta_d[k] * st.kappa_d[k] / (st.kappa_d[k] + 1.0));
        cvec v(M);
        for (int m = 0; m < M; ++m) v[m] = std::polar(amp, 2.0 * M_PI * rng.next_uniform());
        st.h_bar_d[k] = v;
    }
    for (int l = 0; l < L; ++l) {
        st.beta_1[l] = uni(0.5, 2.0);
        cmat H(M, N);
        const double a1 = std::sqrt(st.beta_1[l]);
        for (int n = 0; n < N; ++n)
            for (int m = 0; m < M; ++m) H(m, n) = std::polar(a1, 2.0 * M_PI * rng.next_uniform());
        st.H1[l] = H;
        for (int k = 0; k < K; ++k) {
            st.beta_2(l, k) = uni(0.1, 1.0);
            st.kappa_2(l, k) = ray ? 0.0 : uni(0.5, 5.0);
            const double amp =
                ray ? 0.0
                    : std::sqrt(st.beta_2(l, k) * st.kappa_2(l, k) / (st.kappa_2(l, k) + 1.0));
            cvec v(N);
            for (int n = 0; n < N; ++n) v[n] = std::polar(amp, 2.0 * M_PI * rng.next_uniform());
            st.h_bar_2[l][k] = v;
        }
    }
    return st;
}

/// Same statistics with kappa := 0 and LoS objects zeroed (Rayleigh view).
inline ChannelStatistics to_rayleigh(ChannelStatistics st) {
    st.fading = Fading::Rayleigh;
    st.kappa_d.setZero();
    st.kappa_2.setZero();
    for (auto& v : st.h_bar_d) v.setZero();
    for (auto& row : st.h_bar_2)
        for (auto& v : row) v.setZero();
    return st;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double rel_err_vec(const dvec& got, const dvec& want) {
    return (got - want).norm() / std::max(1e-300, want.norm());
}

}  // namespace risde::testutil

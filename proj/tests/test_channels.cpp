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

#include <doctest.h>

#include "risde/channels.hpp"
#include "testutil.hpp"

using namespace risde;
using namespace risde::testutil;

TEST_CASE("Rayleigh samples have zero mean and the stated covariance") {
    const ChannelStatistics st = random_stats(8, 2, 2, 1, 1, Fading::Rayleigh, 1);
    const int M = st.dims.M;
    const int trials = 100000;

    cvec mean = cvec::Zero(M);
    cmat cov = cmat::Zero(M, M);
    for (int t = 0; t < trials; ++t) {
        const ChannelRealization r = sample_realization(st, 9, t);
        mean += r.h_d[0];
        cov += r.h_d[0] * r.h_d[0].adjoint();
    }
    mean /= trials;
    cov /= trials;

    const double sigma = std::sqrt(st.beta_n_d(0) / 2.0);  // per real component
    for (int m = 0; m < M; ++m) {
        CHECK(std::abs(mean[m].real()) < 4.0 * sigma / std::sqrt(static_cast<double>(trials) / 2));
        CHECK(std::abs(mean[m].imag()) < 4.0 * sigma / std::sqrt(static_cast<double>(trials) / 2));
    }
    const cmat want = st.beta_n_d(0) * cmat::Identity(M, M);
    CHECK((cov - want).norm() / want.norm() < 0.05);
}

TEST_CASE("Rician sample covariance about the LoS mean") {
    const ChannelStatistics st = random_stats(8, 2, 2, 2, 1, Fading::Rician, 2);
    const int M = st.dims.M, k = 1;
    const int trials = 100000;

    cmat cov = cmat::Zero(M, M);
    for (int t = 0; t < trials; ++t) {
        const ChannelRealization r = sample_realization(st, 10, t);
        const cvec c = r.h_d[k] - st.h_bar_d[k];
        cov += c * c.adjoint();
    }
    cov /= trials;
    const cmat want = st.beta_n_d(k) * cmat::Identity(M, M);
    CHECK((cov - want).norm() / want.norm() < 0.05);
}

TEST_CASE("vanishing NLoS variance pins the realization to the mean") {
    ChannelStatistics st = random_stats(6, 2, 2, 1, 1, Fading::Rician, 3);
    st.kappa_d.setConstant(1e12);
    st.kappa_2.setConstant(1e12);
    const ChannelRealization r = sample_realization(st, 4, 0);
    CHECK((r.h_d[0] - st.h_bar_d[0]).norm() / st.h_bar_d[0].norm() < 1e-5);
    CHECK((r.h_2[0][0] - st.h_bar_2[0][0]).norm() / st.h_bar_2[0][0].norm() < 1e-5);
}

TEST_CASE("aggregate_channel reductions") {
    SUBCASE("no surfaces returns the direct channel") {
        const ChannelStatistics st = random_stats(5, 1, 1, 2, 0, Fading::Rician, 4);
        const ChannelRealization r = sample_realization(st, 5, 0);
        const PhaseProfile phi = PhaseProfile::all_ones(0);
        CHECK((aggregate_channel(r, st, phi, 0) - r.h_d[0]).norm() == 0.0);
    }
    SUBCASE("basis-vector user channel selects one column") {
        const ChannelStatistics st = random_stats(5, 2, 2, 1, 1, Fading::Rician, 5);
        ChannelRealization r = sample_realization(st, 6, 0);
        r.h_2[0][0] = cvec::Zero(st.dims.N());
        r.h_2[0][0][0] = 1.0;
        const PhaseProfile phi = PhaseProfile::all_ones(st.dims.N());
        const cvec got = aggregate_channel(r, st, phi, 0);
        CHECK((got - (r.h_d[0] + st.H1[0].col(0))).norm() < 1e-14);
    }
}

TEST_CASE("aggregate mean and covariance match the equivalent statistics") {
    const ChannelStatistics st = random_stats(6, 2, 2, 2, 2, Fading::Rician, 6);
    const PhaseProfile phi = random_phases(st.dims, 77);
    const EquivalentStats eq = equivalent_stats(st, phi);
    const int k = 0, M = st.dims.M;
    const int trials = 100000;

    cvec mean = cvec::Zero(M);
    cmat cov = cmat::Zero(M, M);
    for (int t = 0; t < trials; ++t) {
        const ChannelRealization r = sample_realization(st, 12, t);
        const cvec h = aggregate_channel(r, st, phi, k);
        mean += h;
        cov += (h - eq.mu[k]) * (h - eq.mu[k]).adjoint();
    }
    mean /= trials;
    cov /= trials;

    CHECK((mean - eq.mu[k]).norm() / eq.mu[k].norm() < 0.02);
    CHECK((cov - eq.A[k]).norm() / eq.A[k].norm() < 0.05);
}

TEST_CASE("equivalent stats: phase-invariance of A and Rayleigh reduction") {
    const ChannelStatistics st = random_stats(7, 2, 3, 3, 2, Fading::Rician, 7);
    const PhaseProfile p1 = random_phases(st.dims, 1, 0);
    const PhaseProfile p2 = random_phases(st.dims, 1, 1);
    const EquivalentStats e1 = equivalent_stats(st, p1);
    const EquivalentStats e2 = equivalent_stats(st, p2);
    for (int k = 0; k < st.dims.K; ++k) CHECK((e1.A[k] - e2.A[k]).norm() < 1e-10);

    const ChannelStatistics ray = random_stats(7, 1, 1, 2, 0, Fading::Rayleigh, 8);
    const EquivalentStats er = equivalent_stats(ray, PhaseProfile::all_ones(0));
    CHECK(er.mu[0].norm() == 0.0);
    CHECK((er.A[0] - ray.beta_d[0] * cmat::Identity(7, 7)).norm() < 1e-14);
}

TEST_CASE("A is Hermitian positive definite") {
    const ChannelStatistics st = random_stats(9, 2, 2, 2, 3, Fading::Rician, 9);
    const EquivalentStats eq = equivalent_stats(st, random_phases(st.dims, 3));
    for (int k = 0; k < st.dims.K; ++k) {
        CHECK((eq.A[k] - eq.A[k].adjoint()).norm() < 1e-12 * eq.A[k].norm());
        Eigen::SelfAdjointEigenSolver<cmat> eig(eq.A[k]);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("seeded reproducibility across draws") {
    const ChannelStatistics st = random_stats(5, 2, 2, 2, 1, Fading::Rician, 10);
    const ChannelRealization a = sample_realization(st, 123, 7);
    const ChannelRealization b = sample_realization(st, 123, 7);
    CHECK((a.h_d[0] - b.h_d[0]).norm() == 0.0);
    CHECK((a.h_2[0][1] - b.h_2[0][1]).norm() == 0.0);
    const ChannelRealization c = sample_realization(st, 123, 8);
    CHECK((a.h_d[0] - c.h_d[0]).norm() > 1e-8);
}

TEST_CASE("PhaseProfile rejects off-circle entries") {
    cvec phi(2);
    phi << cplx(1.0, 0.0), cplx(0.5, 0.5);
    CHECK_THROWS_AS(PhaseProfile::from(phi), std::invalid_argument);
    phi[1] = std::polar(1.0, 0.3);
    CHECK_NOTHROW(PhaseProfile::from(phi));
}

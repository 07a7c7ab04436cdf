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

#include "risde/geometry.hpp"
#include "testutil.hpp"

using namespace risde;

TEST_CASE("path_loss reference values") {
    CHECK(path_loss(-30.0, 1.0, 2.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(path_loss(-30.0, 250.0, 2.0) == doctest::Approx(1.6e-8).epsilon(1e-12));
    CHECK(path_loss(-30.0, 400.0, 3.5) ==
          doctest::Approx(1e-3 * std::pow(400.0, -3.5)).epsilon(1e-12));
    CHECK_THROWS_AS(path_loss(-30.0, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(path_loss(-30.0, -1.0, 2.0), std::invalid_argument);
}

TEST_CASE("path_loss strictly decreasing in d and alpha") {
    double prev = path_loss(-30.0, 0.5, 2.0);
    for (double d = 1.0; d < 1000.0; d *= 1.7) {
        const double v = path_loss(-30.0, d, 2.0);
        CHECK(v < prev);
        prev = v;
    }
    prev = path_loss(-30.0, 47.0, 2.0);
    for (double a = 2.2; a < 4.2; a += 0.2) {
        const double v = path_loss(-30.0, 47.0, a);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("rician_factor dB interpretation") {
    // 13 dB at d = 0; LoS fraction ~0.952
    const double k0 = rician_factor(0.0);
    CHECK(k0 == doctest::Approx(std::pow(10.0, 1.3)).epsilon(1e-12));
    CHECK(k0 / (k0 + 1.0) == doctest::Approx(0.952).epsilon(1e-3));
    // 0 dB crossing at d = 13/0.03
    CHECK(rician_factor(13.0 / 0.03) == doctest::Approx(1.0).epsilon(1e-12));
    // linear-interpretation flag
    RicianFactorModel lin;
    lin.linear_units = true;
    CHECK(rician_factor(0.0, lin) == doctest::Approx(13.0));
    CHECK(rician_factor(1000.0, lin) == doctest::Approx(0.0));  // clamped
}

TEST_CASE("build_scenario section-V values") {
    SystemDims dims{60, 20, 20, 6, 10};
    GeometryConfig geo;
    PathLossConfig pl;
    const ChannelStatistics st = build_scenario(dims, geo, pl, Fading::Rician);

    // all users sit on the 400 m arc
    const double want = 1e-3 * std::pow(400.0, -3.5);
    for (int k = 0; k < dims.K; ++k)
        CHECK(st.beta_d[k] == doctest::Approx(want).epsilon(1e-12));

    // Rayleigh mode: kappa == 0, LoS vectors zero
    const ChannelStatistics ray = build_scenario(dims, geo, pl, Fading::Rayleigh);
    CHECK(ray.kappa_d.maxCoeff() == 0.0);
    CHECK(ray.kappa_2.maxCoeff() == 0.0);
    for (int k = 0; k < dims.K; ++k) CHECK(ray.h_bar_d[k].norm() == 0.0);
}

TEST_CASE("build_scenario no-RIS baseline") {
    SystemDims dims{8, 3, 0, 1, 1};
    const ChannelStatistics st = build_scenario(dims, {}, {}, Fading::Rician);
    CHECK(st.H1.empty());
    CHECK(st.h_bar_2.empty());
    CHECK(st.beta_1.size() == 0);
    CHECK(st.h_bar_d.size() == 3);
}

TEST_CASE("LoS user vectors have the steering modulus") {
    SystemDims dims{4, 1, 1, 2, 3};
    const ChannelStatistics st = build_scenario(dims, {}, {}, Fading::Rician);
    const double b = st.beta_2(0, 0), kap = st.kappa_2(0, 0);
    const double want = std::sqrt(b * kap / (kap + 1.0));
    for (int n = 0; n < dims.N(); ++n)
        CHECK(std::abs(st.h_bar_2[0][0][n]) == doctest::Approx(want).epsilon(1e-12));
    CHECK(st.h_bar_2[0][0].squaredNorm() ==
          doctest::Approx(dims.N() * b * kap / (kap + 1.0)).epsilon(1e-12));
    CHECK(st.h_bar_d[0].squaredNorm() ==
          doctest::Approx(dims.M * st.beta_d[0] * st.kappa_d[0] / (st.kappa_d[0] + 1.0))
              .epsilon(1e-12));
}

TEST_CASE("spherical-wave channel entries and rank") {
    SystemDims dims{32, 1, 1, 8, 8};
    GeometryConfig geo;
    const Eigen::Vector3d center{0.0, 250.0, 0.0};
    const double beta1 = path_loss(-30.0, 250.0, 2.0);
    const cmat H = los_bs_ris_channel(dims, geo, center, beta1);

    const double amp = std::sqrt(beta1);
    for (int m = 0; m < dims.M; ++m)
        for (int n = 0; n < dims.N(); ++n)
            CHECK(std::abs(H(m, n)) == doctest::Approx(amp).epsilon(1e-12));

    // moderate distance keeps the rank above one
    Eigen::JacobiSVD<cmat> svd(H);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > 1e-6 * s[0]) ++rank;
    CHECK(rank > 1);
}

TEST_CASE("H1 entries all carry sqrt(beta1)") {
    SystemDims dims{6, 2, 3, 2, 2};
    const ChannelStatistics st = build_scenario(dims, {}, {}, Fading::Rician);
    for (int l = 0; l < dims.L; ++l) {
        const double amp = std::sqrt(st.beta_1[l]);
        for (int m = 0; m < dims.M; ++m)
            for (int n = 0; n < dims.N(); ++n)
                CHECK(std::abs(st.H1[l](m, n)) == doctest::Approx(amp).epsilon(1e-12));
    }
}

TEST_CASE("mirror-symmetric surfaces carry equal energy") {
    SystemDims dims{6, 2, 2, 2, 2};
    const ChannelStatistics st = build_scenario(dims, {}, {}, Fading::Rician);
    CHECK(st.H1[0].norm() == doctest::Approx(st.H1[1].norm()).epsilon(1e-12));
}

TEST_CASE("semi-unitary model") {
    SUBCASE("square case is unitary") {
        const cmat H = semi_unitary_bs_ris(16, 16, 0.7, 5);
        const cmat G = H * H.adjoint();
        CHECK((G - 0.7 * 16 * cmat::Identity(16, 16)).norm() < 1e-10);
    }
    SUBCASE("wide case: rows orthogonal, trace M*N*beta") {
        const cmat H = semi_unitary_bs_ris(32, 64, 1.0, 7);
        const cmat G = H * H.adjoint();
        CHECK((G - 64.0 * cmat::Identity(32, 32)).norm() < 1e-10);
        CHECK(G.trace().real() == doctest::Approx(32.0 * 64.0).epsilon(1e-12));
    }
    SUBCASE("seeded determinism") {
        const cmat A = semi_unitary_bs_ris(8, 16, 1.3, 11);
        const cmat B = semi_unitary_bs_ris(8, 16, 1.3, 11);
        CHECK((A - B).norm() == 0.0);
        const cmat C = semi_unitary_bs_ris(8, 16, 1.3, 12);
        CHECK((A - C).norm() > 1e-6);
    }
    SUBCASE("M > N rejected") {
        CHECK_THROWS_AS(semi_unitary_bs_ris(8, 4, 1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("build_scenario determinism") {
    SystemDims dims{10, 4, 3, 2, 2};
    const ChannelStatistics a = build_scenario(dims, {}, {}, Fading::Rician);
    const ChannelStatistics b = build_scenario(dims, {}, {}, Fading::Rician);
    CHECK((a.beta_d - b.beta_d).norm() == 0.0);
    for (int l = 0; l < dims.L; ++l) CHECK((a.H1[l] - b.H1[l]).norm() == 0.0);
    for (int k = 0; k < dims.K; ++k) CHECK((a.h_bar_d[k] - b.h_bar_d[k]).norm() == 0.0);
}

TEST_CASE("config validation") {
    GeometryConfig geo;
    geo.arc_span_deg = 120.0;
    CHECK_THROWS_AS(geo.validate(), std::invalid_argument);
    PathLossConfig pl;
    pl.alpha_ris_user = 1.5;
    CHECK_THROWS_AS(pl.validate(), std::invalid_argument);
    SystemDims dims{0, 1, 0, 1, 1};
    CHECK_THROWS_AS(dims.validate(), std::invalid_argument);
}

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

#include "risde/geometry.hpp"

#include <cmath>

#include "risde/rng.hpp"

namespace risde {

double path_loss(double c0_db, double d, double alpha) {
    if (d <= 0.0) throw std::invalid_argument("path_loss: distance must be > 0");
    return std::pow(10.0, c0_db / 10.0) * std::pow(d, -alpha);
}

double rician_factor(double d, const RicianFactorModel& model) {
    if (d < 0.0) throw std::invalid_argument("rician_factor: distance must be >= 0");
    const double value = model.offset_db - model.slope_db_per_m * d;
    if (model.linear_units) return std::max(value, 0.0);
    return std::pow(10.0, value / 10.0);
}

namespace {

// angles measured from the y-axis, equidistant including both endpoints
std::vector<double> arc_angles(int count, double half_span_deg) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = 0.0;
        return out;
    }
    const double span = 2.0 * half_span_deg;
    for (int i = 0; i < count; ++i) {
        const double deg = -half_span_deg + span * i / (count - 1);
        out[i] = deg * M_PI / 180.0;
    }
    return out;
}

Eigen::Vector3d arc_point(double radius, double theta_from_y) {
    return {radius * std::sin(theta_from_y), radius * std::cos(theta_from_y), 0.0};
}

// ULA steering with unit-modulus entries; spacing d in wavelengths
cvec steering_ula(int M, double d, double cos_angle) {
    cvec v(M);
    for (int m = 0; m < M; ++m) v[m] = std::polar(1.0, 2.0 * M_PI * d * m * cos_angle);
    return v;
}

}  // namespace

cmat los_bs_ris_channel(const SystemDims& dims, const GeometryConfig& geo,
                        const Eigen::Vector3d& ris_center, double beta1) {
    const int M = dims.M, N1 = dims.N1, N2 = dims.N2;
    const double lam = geo.wavelength_m;
    const double amp = std::sqrt(beta1);

    cmat H(M, dims.N());
    for (int m = 0; m < M; ++m) {
        const Eigen::Vector3d bs = geo.bs_origin + Eigen::Vector3d{0.0, 0.0, m * geo.d_bs * lam};
        for (int n1 = 0; n1 < N1; ++n1) {
            for (int n2 = 0; n2 < N2; ++n2) {
                // planar array in the x-z plane, centered on ris_center
                const Eigen::Vector3d el =
                    ris_center + Eigen::Vector3d{(n2 - (N2 - 1) / 2.0) * geo.d_ris2 * lam, 0.0,
                                                 (n1 - (N1 - 1) / 2.0) * geo.d_ris1 * lam};
                const double len = (el - bs).norm();
                H(m, n1 * N2 + n2) = amp * std::polar(1.0, 2.0 * M_PI / lam * len);
            }
        }
    }
    return H;
}

cmat semi_unitary_bs_ris(int M, int N, double beta1, std::uint64_t seed) {
    if (M > N) throw std::invalid_argument("semi_unitary_bs_ris: requires M <= N");
    RngStream rng(seed, RngDomain::Unitary);
    cmat G(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) G(i, j) = rng.next_cn();
    Eigen::HouseholderQR<cmat> qr(G);
    cmat Q = qr.householderQ() * cmat::Identity(N, N);
    return std::sqrt(beta1 * N) * Q.topRows(M);
}

ChannelStatistics build_scenario(const SystemDims& dims, const GeometryConfig& geo,
                                 const PathLossConfig& pl, Fading fading,
                                 const RicianFactorModel& rician) {
    dims.validate();
    geo.validate();
    pl.validate();

    const int M = dims.M, K = dims.K, L = dims.L, N = dims.N();

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

    const auto user_theta = arc_angles(K, geo.arc_span_deg);
    const auto ris_theta = arc_angles(L, geo.arc_span_deg);
    const bool rayleigh = (fading == Fading::Rayleigh);

    std::vector<Eigen::Vector3d> user_pos(K), ris_pos(L);
    for (int k = 0; k < K; ++k) user_pos[k] = arc_point(geo.user_arc_radius_m, user_theta[k]);
    for (int l = 0; l < L; ++l) ris_pos[l] = arc_point(geo.ris_arc_radius_m, ris_theta[l]);

    const double cascade = std::pow(10.0, pl.ris_cascade_gain_db / 10.0);

    for (int k = 0; k < K; ++k) {
        const double d = (user_pos[k] - geo.bs_origin).norm();
        if (d <= 0.0) throw std::invalid_argument("build_scenario: user collocated with BS");
        st.beta_d[k] = path_loss(pl.c0_db, d, pl.alpha_bs_user);
        st.kappa_d[k] = rayleigh ? 0.0 : rician_factor(d, rician);

        if (rayleigh) {
            st.h_bar_d[k] = cvec::Zero(M);
        } else {
            // azimuth AoD from the x-axis
            const double phi_d = std::atan2(user_pos[k].y() - geo.bs_origin.y(),
                                            user_pos[k].x() - geo.bs_origin.x());
            const double amp =
                std::sqrt(st.beta_d[k] * st.kappa_d[k] / (st.kappa_d[k] + 1.0));
            st.h_bar_d[k] = amp * steering_ula(M, geo.d_bs, std::cos(phi_d));
        }
    }

    for (int l = 0; l < L; ++l) {
        const double d1 = (ris_pos[l] - geo.bs_origin).norm();
        if (d1 <= 0.0) throw std::invalid_argument("build_scenario: surface collocated with BS");
        st.beta_1[l] = path_loss(pl.c0_db, d1, pl.alpha_bs_ris);
        st.H1[l] = los_bs_ris_channel(dims, geo, ris_pos[l], st.beta_1[l]);

        for (int k = 0; k < K; ++k) {
            const Eigen::Vector3d diff = user_pos[k] - ris_pos[l];
            const double d2 = diff.norm();
            if (d2 <= 0.0)
                throw std::invalid_argument("build_scenario: user collocated with a surface");
            st.beta_2(l, k) = cascade * path_loss(pl.c0_db, d2, pl.alpha_ris_user);
            st.kappa_2(l, k) = rayleigh ? 0.0 : rician_factor(d2, rician);

            if (rayleigh) {
                st.h_bar_2[l][k] = cvec::Zero(N);
            } else {
                const double phi_2 = std::atan2(diff.y(), diff.x());
                const double c = std::cos(phi_2);
                const cvec bz = steering_ula(dims.N1, geo.d_ris1, c);
                const cvec bx = steering_ula(dims.N2, geo.d_ris2, c);
                const double amp =
                    std::sqrt(st.beta_2(l, k) * st.kappa_2(l, k) / (st.kappa_2(l, k) + 1.0));
                cvec v(N);
                for (int n1 = 0; n1 < dims.N1; ++n1)
                    for (int n2 = 0; n2 < dims.N2; ++n2)
                        v[n1 * dims.N2 + n2] = bz[n1] * bx[n2];
                st.h_bar_2[l][k] = amp * v;
            }
        }
    }
    return st;
}

ChannelStatistics strip_ris(const ChannelStatistics& stats) {
    ChannelStatistics out;
    out.dims = stats.dims;
    out.dims.L = 0;
    out.dims.N1 = 1;
    out.dims.N2 = 1;
    out.fading = stats.fading;
    out.beta_d = stats.beta_d;
    out.kappa_d = stats.kappa_d;
    out.beta_1.resize(0);
    out.beta_2.resize(0, stats.dims.K);
    out.kappa_2.resize(0, stats.dims.K);
    out.h_bar_d = stats.h_bar_d;
    out.h_bar_2.clear();
    out.H1.clear();
    return out;
}

}  // namespace risde

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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace risde {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using dvec = Eigen::VectorXd;
using dmat = Eigen::MatrixXd;

enum class Fading { Rician, Rayleigh };
enum class Protocol { MmseDft, DirectEstimate, PerfectCsi };

/// Antenna/element/user counts. N = N1*N2 reflecting elements per surface.
struct SystemDims {
    int M = 1;   // BS antennas
    int K = 1;   // users
    int L = 0;   // surfaces (0 = no-RIS baseline)
    int N1 = 1;  // grid rows (first principal direction)
    int N2 = 1;  // grid cols (second principal direction)

    int N() const { return N1 * N2; }

    void validate() const {
        if (M < 1 || K < 1 || N1 < 1 || N2 < 1)
            throw std::invalid_argument("SystemDims: M, K, N1, N2 must be >= 1");
        if (L < 0)
            throw std::invalid_argument("SystemDims: L must be >= 0");
    }
};

/// Physical deployment: BS ULA along z at the origin, users and surfaces on
/// arcs in the xy-plane about the y-axis, planar arrays in the x-z plane.
/// Spacings are in wavelengths.
struct GeometryConfig {
    Eigen::Vector3d bs_origin{0.0, 0.0, 0.0};
    double user_arc_radius_m = 400.0;
    double ris_arc_radius_m = 250.0;
    double arc_span_deg = 30.0;  // half-span about the y-axis
    double d_bs = 0.5;
    double d_ris1 = 0.5;
    double d_ris2 = 0.5;
    double wavelength_m = 0.125;

    void validate() const {
        if (user_arc_radius_m <= 0 || ris_arc_radius_m <= 0)
            throw std::invalid_argument("GeometryConfig: arc radii must be > 0");
        if (d_bs <= 0 || d_ris1 <= 0 || d_ris2 <= 0 || wavelength_m <= 0)
            throw std::invalid_argument("GeometryConfig: spacings and wavelength must be > 0");
        if (arc_span_deg <= 0 || arc_span_deg > 90)
            throw std::invalid_argument("GeometryConfig: arc_span_deg must be in (0, 90]");
    }
};

/// beta = 10^(c0_db/10) * d^(-alpha) per link class.
struct PathLossConfig {
    double c0_db = -30.0;  // reference gain at 1 m (30 dB attenuation)
    double alpha_bs_ris = 2.0;
    double alpha_ris_user = 2.8;
    double alpha_bs_user = 3.5;
    // Extra gain on the surface-user link budget, used by the figure presets
    // to calibrate the cascaded link level. 0 dB = plain c0_db * d^-alpha.
    double ris_cascade_gain_db = 0.0;

    void validate() const {
        if (alpha_bs_ris < 2 || alpha_ris_user < 2 || alpha_bs_user < 2)
            throw std::invalid_argument("PathLossConfig: exponents must be >= 2");
    }
};

/// kappa = 10^((offset_db - slope_db_per_m * d)/10), or the same expression
/// read in linear units when linear_units is set.
struct RicianFactorModel {
    double offset_db = 13.0;
    double slope_db_per_m = 0.03;
    bool linear_units = false;
};

/// All large-scale statistics of one scenario. LoS objects are deterministic;
/// the beta/kappa tables drive the random draws and every closed form.
struct ChannelStatistics {
    SystemDims dims;
    Fading fading = Fading::Rician;

    dvec beta_d;   // K
    dvec kappa_d;  // K
    dvec beta_1;   // L
    dmat beta_2;   // L x K
    dmat kappa_2;  // L x K

    std::vector<cvec> h_bar_d;               // K vectors of length M
    std::vector<std::vector<cvec>> h_bar_2;  // [L][K] vectors of length N
    std::vector<cmat> H1;                    // L matrices M x N

    // NLoS per-entry variances beta/(kappa+1)
    double beta_n_d(int k) const { return beta_d[k] / (kappa_d[k] + 1.0); }
    double beta_n_2(int l, int k) const { return beta_2(l, k) / (kappa_2(l, k) + 1.0); }
};

/// Stacked unit-modulus reflection coefficients, surface-major:
/// [phi_11..phi_1N, phi_21..phi_LN].
class PhaseProfile {
  public:
    PhaseProfile() = default;

    static PhaseProfile from(cvec phi, double tol = 1e-12) {
        for (Eigen::Index i = 0; i < phi.size(); ++i) {
            if (std::abs(std::abs(phi[i]) - 1.0) > tol)
                throw std::invalid_argument("PhaseProfile: entry is not unit-modulus");
        }
        PhaseProfile p;
        p.phi_ = std::move(phi);
        return p;
    }

    static PhaseProfile all_ones(int nl) {
        PhaseProfile p;
        p.phi_ = cvec::Ones(nl);
        return p;
    }

    static PhaseProfile from_angles(const dvec& theta) {
        PhaseProfile p;
        p.phi_.resize(theta.size());
        for (Eigen::Index i = 0; i < theta.size(); ++i)
            p.phi_[i] = std::polar(1.0, theta[i]);
        return p;
    }

    const cvec& phi() const { return phi_; }
    Eigen::Index size() const { return phi_.size(); }

    /// Block of surface l (N entries).
    auto block(int l, int n) const { return phi_.segment(static_cast<Eigen::Index>(l) * n, n); }

  private:
    cvec phi_;
};

/// One random draw of all user-side channels.
struct ChannelRealization {
    std::vector<cvec> h_d;               // K of M
    std::vector<std::vector<cvec>> h_2;  // [L][K] of N
    Fading fading = Fading::Rician;
};

/// Aggregate-channel mean and covariance of Eq.-style statistical equivalents.
struct EquivalentStats {
    std::vector<cvec> mu;  // K of M
    std::vector<cmat> A;   // K of M x M, Hermitian PD
};

/// Tx power budget and per-user fractions.
struct PowerConfig {
    double p_max_w = 10.0;
    double sigma2_w = 1.0;
    dvec p;  // K power fractions

    double rho() const { return p_max_w / sigma2_w; }

    static PowerConfig uniform(int K, double p_max, double sigma2) {
        PowerConfig c;
        c.p_max_w = p_max;
        c.sigma2_w = sigma2;
        c.p = dvec::Constant(K, 1.0 / K);
        return c;
    }
    static PowerConfig unit(int K, double rho_lin) {
        PowerConfig c;
        c.p_max_w = rho_lin;
        c.sigma2_w = 1.0;
        c.p = dvec::Ones(K);
        return c;
    }

    void validate() const {
        if (p_max_w <= 0 || sigma2_w <= 0)
            throw std::invalid_argument("PowerConfig: powers must be > 0");
        if ((p.array() <= 0).any())
            throw std::invalid_argument("PowerConfig: all p[k] must be > 0");
    }
};

/// Channel-estimation configuration shared by both protocols.
struct TrainingConfig {
    double rho_p = 1.0;    // training SNR, linear
    double tau_s = 20.0;   // symbols per sub-phase
    double tau_c = 2000.0; // coherence block length, symbols
    Protocol protocol = Protocol::DirectEstimate;
    bool integer_ceil_s = false;         // round S up instead of fractional
    bool perfect_csi_full_prefactor = false;  // PerfectCsi: prefactor 1 instead of 1 - tau_s/tau_c

    void validate(const SystemDims& dims) const {
        if (rho_p <= 0) throw std::invalid_argument("TrainingConfig: rho_p must be > 0");
        if (tau_s < dims.K)
            throw std::invalid_argument("TrainingConfig: tau_s must be >= K (orthogonal pilots)");
        if (tau_c <= 0) throw std::invalid_argument("TrainingConfig: tau_c must be > 0");
    }
};

/// Per-user SINR with its three deterministic-equivalent terms.
struct SinrReport {
    dvec gamma;         // K, linear SINR
    dvec signal;        // K
    dvec interference;  // K
    dvec noise;         // K
    double prefactor = 1.0;
    double net_sum_rate = 0.0;  // bits/s/Hz
};

}  // namespace risde

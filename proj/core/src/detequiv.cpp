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

#include "risde/detequiv.hpp"

#include <cmath>

#include "risde/channels.hpp"
#include "risde/estimation.hpp"
#include "risde/geometry.hpp"

namespace risde {

cmat build_D(const ChannelStatistics& stats, const PhaseProfile& phases, int k) {
    const auto& d = stats.dims;
    const int N = d.N();

    std::vector<cvec> ris_terms(d.L);
    for (int l = 0; l < d.L; ++l)
        ris_terms[l] = stats.H1[l] * phases.block(l, N).cwiseProduct(stats.h_bar_2[l][k]);

    cmat D = stats.h_bar_d[k] * stats.h_bar_d[k].adjoint();
    for (int l = 0; l < d.L; ++l) {
        D += stats.h_bar_d[k] * ris_terms[l].adjoint();
        D += ris_terms[l] * stats.h_bar_d[k].adjoint();
        for (int lp = 0; lp < d.L; ++lp) D += ris_terms[l] * ris_terms[lp].adjoint();
    }
    return D;
}

DetEqEvaluator::DetEqEvaluator(const ChannelStatistics& stats, const PowerConfig& powers,
                               const TrainingConfig& cfg, Protocol protocol)
    : M_(stats.dims.M),
      K_(stats.dims.K),
      L_(stats.dims.L),
      N_(stats.dims.N()),
      nl_(static_cast<long>(stats.dims.L) * stats.dims.N()),
      protocol_(protocol),
      rho_(powers.rho()),
      p_(powers.p) {
    powers.validate();
    if (p_.size() != K_) throw std::invalid_argument("DetEqEvaluator: p has wrong length");

    TrainingConfig c = cfg;
    c.protocol = protocol;
    const TrainingOverhead to = training_overhead(protocol, stats.dims, c);
    prefactor_ = to.prefactor;
    const double S = to.S;

    h_bar_d_.resize(K_);
    B_.resize(K_);
    A_.resize(K_);
    C_.resize(K_);
    trC_.resize(K_);
    trCA_.resize(K_, K_);

    std::vector<cmat> W(L_);
    for (int l = 0; l < L_; ++l) W[l] = stats.H1[l] * stats.H1[l].adjoint();

    const DeMatrices de = (protocol == Protocol::DirectEstimate)
                              ? build_de_matrices(stats, cfg)
                              : DeMatrices{};

    for (int k = 0; k < K_; ++k) {
        h_bar_d_[k] = stats.h_bar_d[k];

        B_[k].resize(M_, nl_);
        for (int l = 0; l < L_; ++l)
            B_[k].middleCols(static_cast<Eigen::Index>(l) * N_, N_) =
                stats.H1[l] * stats.h_bar_2[l][k].asDiagonal();

        cmat A = stats.beta_n_d(k) * cmat::Identity(M_, M_);
        for (int l = 0; l < L_; ++l) A += stats.beta_n_2(l, k) * W[l];
        A_[k] = std::move(A);

        switch (protocol) {
            case Protocol::MmseDft: {
                const double bn = stats.beta_n_d(k);
                cmat C = bn * bn / (bn + 1.0 / (S * cfg.rho_p * cfg.tau_s)) *
                         cmat::Identity(M_, M_);
                for (int l = 0; l < L_; ++l) {
                    const double b2 = stats.beta_n_2(l, k);
                    C += b2 * b2 /
                         (b2 + 1.0 / (S * cfg.rho_p * cfg.tau_s * M_ * stats.beta_1[l])) * W[l];
                }
                C_[k] = std::move(C);
                break;
            }
            case Protocol::DirectEstimate:
                C_[k] = de.RQR[k];
                break;
            case Protocol::PerfectCsi:
                C_[k] = A_[k];
                break;
        }
        trC_[k] = C_[k].trace().real();
    }
    for (int f = 0; f < K_; ++f)
        for (int k = 0; k < K_; ++k) trCA_(f, k) = (C_[f] * A_[k]).trace().real();
}

std::vector<cvec> DetEqEvaluator::means(const cvec& phi) const {
    std::vector<cvec> mu(K_);
    for (int k = 0; k < K_; ++k)
        mu[k] = (nl_ > 0) ? cvec(h_bar_d_[k] + B_[k] * phi) : h_bar_d_[k];
    return mu;
}

SinrReport DetEqEvaluator::evaluate_phi(const cvec& phi) const {
    const std::vector<cvec> mu = means(phi);
    const double M = M_;

    dvec u(K_);
    for (int k = 0; k < K_; ++k) u[k] = (mu[k].squaredNorm() + trC_[k]) / M;

    double noise = 0.0;
    for (int j = 0; j < K_; ++j) noise += p_[j] * u[j];
    noise /= (M * rho_);

    // Gram and quadratic forms shared across users
    cmat G(K_, K_);
    std::vector<std::vector<cvec>> Amu(K_, std::vector<cvec>(K_));
    std::vector<std::vector<cvec>> Cmu(K_, std::vector<cvec>(K_));
    for (int i = 0; i < K_; ++i)
        for (int j = 0; j < K_; ++j) {
            G(i, j) = mu[i].dot(mu[j]);  // mu_i^H mu_j
            if (i != j) {
                Amu[i][j] = A_[i] * mu[j];  // A_i mu_j
                Cmu[i][j] = C_[i] * mu[j];  // C_i mu_j
            }
        }

    SinrReport rep;
    rep.gamma.resize(K_);
    rep.signal.resize(K_);
    rep.interference.resize(K_);
    rep.noise = dvec::Constant(K_, noise);
    rep.prefactor = prefactor_;

    for (int k = 0; k < K_; ++k) {
        double interf = 0.0;
        for (int f = 0; f < K_; ++f) {
            if (f == k) continue;
            const double t = std::norm(G(f, k)) + mu[f].dot(Amu[k][f]).real() +
                             mu[k].dot(Cmu[f][k]).real() + trCA_(f, k);
            interf += p_[f] * t / (M * M);
        }
        rep.signal[k] = p_[k] * u[k] * u[k];
        rep.interference[k] = interf;
        rep.gamma[k] = rep.signal[k] / (interf + noise);
    }
    rep.net_sum_rate = net_sum_rate(rep.gamma, prefactor_);
    return rep;
}

SinrReport DetEqEvaluator::evaluate(const PhaseProfile& phases) const {
    if (phases.size() != nl_)
        throw std::invalid_argument("DetEqEvaluator: phase profile has wrong length");
    return evaluate_phi(phases.phi());
}

double DetEqEvaluator::objective(const cvec& phi) const { return evaluate_phi(phi).net_sum_rate; }

cvec DetEqEvaluator::gradient(const cvec& phi) const {
    if (phi.size() != nl_) throw std::invalid_argument("DetEqEvaluator: phi has wrong length");
    const std::vector<cvec> mu = means(phi);
    const double M = M_;
    const double M2 = M * M;

    dvec u(K_), q(K_), dden(K_);
    double noise = 0.0;
    for (int k = 0; k < K_; ++k) {
        u[k] = (mu[k].squaredNorm() + trC_[k]) / M;
        noise += p_[k] * u[k];
    }
    noise /= (M * rho_);

    cmat G(K_, K_);
    std::vector<std::vector<cvec>> Amu(K_, std::vector<cvec>(K_));
    std::vector<std::vector<cvec>> Cmu(K_, std::vector<cvec>(K_));
    for (int i = 0; i < K_; ++i)
        for (int j = 0; j < K_; ++j) {
            G(i, j) = mu[i].dot(mu[j]);
            if (i != j) {
                Amu[i][j] = A_[i] * mu[j];
                Cmu[i][j] = C_[i] * mu[j];
            }
        }

    for (int k = 0; k < K_; ++k) {
        double interf = 0.0;
        for (int f = 0; f < K_; ++f) {
            if (f == k) continue;
            const double t = std::norm(G(f, k)) + mu[f].dot(Amu[k][f]).real() +
                             mu[k].dot(Cmu[f][k]).real() + trCA_(f, k);
            interf += p_[f] * t / M2;
        }
        q[k] = p_[k] * u[k] * u[k];
        dden[k] = interf + noise;
    }

    // d(objective)/d(mu_j^*), then pull back through mu_j = h_bar + B_j phi
    std::vector<cvec> gmu(K_, cvec::Zero(M_));
    const double ln2 = std::log(2.0);
    for (int k = 0; k < K_; ++k) {
        const double gam = q[k] / dden[k];
        const double w = prefactor_ / ((1.0 + gam) * ln2);
        const double wq = w / dden[k];
        const double wd = -w * q[k] / (dden[k] * dden[k]);

        gmu[k] += wq * (2.0 * p_[k] * u[k] / M) * mu[k];

        for (int j = 0; j < K_; ++j) {
            cvec gd;
            if (j != k) {
                gd = p_[j] * (G(k, j) * mu[k] + Amu[k][j]) / M2;
            } else {
                gd = cvec::Zero(M_);
                for (int f = 0; f < K_; ++f) {
                    if (f == k) continue;
                    gd += p_[f] * (G(f, k) * mu[f] + Cmu[f][k]);
                }
                gd /= M2;
            }
            gd += (p_[j] / (M2 * rho_)) * mu[j];  // shared power-normalization term
            gmu[j] += wd * gd;
        }
    }

    cvec g = cvec::Zero(nl_);
    for (int j = 0; j < K_; ++j) g += B_[j].adjoint() * gmu[j];
    return g;
}

namespace {

PhaseProfile neutral_phases(const ChannelStatistics& stats) {
    return PhaseProfile::all_ones(stats.dims.L * stats.dims.N());
}

void require_rayleigh(const ChannelStatistics& stats, const char* who) {
    if (stats.fading != Fading::Rayleigh)
        throw std::invalid_argument(std::string(who) + ": requires Rayleigh-mode statistics");
}

}  // namespace

SinrReport sinr_det_dft_rician(const ChannelStatistics& stats, const PhaseProfile& phases,
                               const PowerConfig& powers, const TrainingConfig& cfg) {
    return DetEqEvaluator(stats, powers, cfg, Protocol::MmseDft).evaluate(phases);
}

SinrReport sinr_det_de_rician(const ChannelStatistics& stats, const PhaseProfile& phases,
                              const PowerConfig& powers, const TrainingConfig& cfg) {
    return DetEqEvaluator(stats, powers, cfg, Protocol::DirectEstimate).evaluate(phases);
}

SinrReport sinr_det_perfect_rician(const ChannelStatistics& stats, const PhaseProfile& phases,
                                   const PowerConfig& powers, const TrainingConfig& cfg) {
    return DetEqEvaluator(stats, powers, cfg, Protocol::PerfectCsi).evaluate(phases);
}

SinrReport sinr_det_noris(const ChannelStatistics& stats, const PowerConfig& powers,
                          const TrainingConfig& cfg) {
    const ChannelStatistics direct = strip_ris(stats);
    return DetEqEvaluator(direct, powers, cfg, Protocol::DirectEstimate)
        .evaluate(PhaseProfile::all_ones(0));
}

SinrReport sinr_det_dft_rayleigh(const ChannelStatistics& stats, const PhaseProfile& phases,
                                 const PowerConfig& powers, const TrainingConfig& cfg) {
    require_rayleigh(stats, "sinr_det_dft_rayleigh");
    return DetEqEvaluator(stats, powers, cfg, Protocol::MmseDft).evaluate(phases);
}

SinrReport sinr_det_de_rayleigh(const ChannelStatistics& stats, const PowerConfig& powers,
                                const TrainingConfig& cfg) {
    require_rayleigh(stats, "sinr_det_de_rayleigh");
    return DetEqEvaluator(stats, powers, cfg, Protocol::DirectEstimate)
        .evaluate(neutral_phases(stats));
}

SinrReport sinr_det_perfect_rayleigh(const ChannelStatistics& stats, const PowerConfig& powers,
                                     const TrainingConfig& cfg) {
    require_rayleigh(stats, "sinr_det_perfect_rayleigh");
    return DetEqEvaluator(stats, powers, cfg, Protocol::PerfectCsi)
        .evaluate(neutral_phases(stats));
}

dvec sinr_special_case(const dvec& beta_d, double c_bar, int N, int M, double rho) {
    const int K = static_cast<int>(beta_d.size());
    dvec gamma(K);
    const double sum_beta = beta_d.sum();
    for (int k = 0; k < K; ++k) {
        double interf = 0.0;
        for (int f = 0; f < K; ++f)
            if (f != k) interf += beta_d[f] / beta_d[k];
        interf /= M;
        const double noise = sum_beta / (M * beta_d[k] * beta_d[k] * rho * (c_bar * N + 1.0));
        gamma[k] = 1.0 / (interf + noise);
    }
    return gamma;
}

double net_sum_rate(const dvec& gamma, double prefactor) {
    if (prefactor <= 0.0) throw std::invalid_argument("net_sum_rate: prefactor must be > 0");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < gamma.size(); ++k) sum += std::log2(1.0 + gamma[k]);
    return prefactor * sum;
}

}  // namespace risde

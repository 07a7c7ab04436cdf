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

#include "risde/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "risde/channels.hpp"
#include "risde/detequiv.hpp"

namespace risde {

MrtPrecoders mrt_precoders(const ChannelEstimate& estimates, const PowerConfig& powers,
                           std::optional<double> psi_mean) {
    const int K = static_cast<int>(estimates.h_hat.size());
    if (K == 0) throw std::invalid_argument("mrt_precoders: no estimates");
    const int M = static_cast<int>(estimates.h_hat[0].size());

    MrtPrecoders out;
    out.psi_sample = 0.0;
    for (int k = 0; k < K; ++k) {
        const double n2 = estimates.h_hat[k].squaredNorm();
        if (n2 == 0.0) throw std::invalid_argument("mrt_precoders: zero estimate vector");
        out.psi_sample += powers.p[k] * n2;
    }
    const double psi = psi_mean.value_or(out.psi_sample);
    out.zeta = std::sqrt(powers.p_max_w / psi);
    out.G.resize(M, K);
    for (int k = 0; k < K; ++k) out.G.col(k) = out.zeta * estimates.h_hat[k];
    return out;
}

namespace {

constexpr int kBlockTrials = 32;

struct BlockAccum {
    std::vector<cplx> sum_x;     // K, h_k^H h_hat_k
    dvec sum_x2;                 // K, |.|^2
    dvec sum_intf;               // K
    double sum_psi = 0.0;
    int count = 0;

    explicit BlockAccum(int K)
        : sum_x(K, cplx(0, 0)), sum_x2(dvec::Zero(K)), sum_intf(dvec::Zero(K)) {}
};

ChannelEstimate make_estimate(const ChannelRealization& real, const ChannelStatistics& stats,
                              const PhaseProfile& phases, Protocol protocol,
                              const TrainingConfig& cfg, const DeMatrices* de,
                              std::uint64_t seed, std::uint64_t trial) {
    switch (protocol) {
        case Protocol::MmseDft: {
            const DftObservations obs = simulate_dft_observations(real, stats, cfg, seed, trial);
            return mmse_dft_estimate(obs, stats, phases, cfg);
        }
        case Protocol::DirectEstimate: {
            const std::vector<cvec> y =
                simulate_de_observation(real, stats, phases, cfg, seed, trial);
            return mmse_de_estimate(y, stats, *de, phases);
        }
        case Protocol::PerfectCsi:
        default:
            return perfect_estimate(real, stats, phases);
    }
}

}  // namespace

McSinrReport mc_sinr(const ChannelStatistics& stats, const PhaseProfile& phases,
                     Protocol protocol, const PowerConfig& powers, const TrainingConfig& cfg,
                     const McConfig& mc) {
    mc.validate();
    powers.validate();
    const auto& d = stats.dims;
    const int K = d.K;
    const int T = mc.trials;

    const DeMatrices de = (protocol == Protocol::DirectEstimate) ? build_de_matrices(stats, cfg)
                                                                 : DeMatrices{};
    TrainingConfig c = cfg;
    c.protocol = protocol;
    const TrainingOverhead to = training_overhead_unchecked(protocol, d, c);

    const int n_blocks = (T + kBlockTrials - 1) / kBlockTrials;
    std::vector<BlockAccum> blocks(n_blocks, BlockAccum(K));

    auto run_block = [&](int bi) {
        BlockAccum& acc = blocks[bi];
        const int t0 = bi * kBlockTrials;
        const int t1 = std::min(T, t0 + kBlockTrials);
        for (int t = t0; t < t1; ++t) {
            const ChannelRealization real = sample_realization(stats, mc.seed, t);
            const ChannelEstimate est =
                make_estimate(real, stats, phases, protocol, cfg, &de, mc.seed, t);

            std::vector<cvec> h(K);
            for (int k = 0; k < K; ++k) h[k] = aggregate_channel(real, stats, phases, k);

            double psi = 0.0;
            for (int k = 0; k < K; ++k) psi += powers.p[k] * est.h_hat[k].squaredNorm();
            acc.sum_psi += psi;

            for (int k = 0; k < K; ++k) {
                const cplx x = h[k].dot(est.h_hat[k]);
                acc.sum_x[k] += x;
                acc.sum_x2[k] += std::norm(x);
                double intf = 0.0;
                for (int f = 0; f < K; ++f) {
                    if (f == k) continue;
                    intf += powers.p[f] * std::norm(h[k].dot(est.h_hat[f]));
                }
                acc.sum_intf[k] += intf;
            }
            acc.count += 1;
        }
    };

    int n_threads = mc.threads > 0 ? mc.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, n_blocks));
    if (n_threads == 1) {
        for (int bi = 0; bi < n_blocks; ++bi) run_block(bi);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (int bi = next.fetch_add(1); bi < n_blocks; bi = next.fetch_add(1))
                    run_block(bi);
            });
        for (auto& th : pool) th.join();
    }

    // ordered reduction: result independent of the thread count
    std::vector<cplx> sum_x(K, cplx(0, 0));
    dvec sum_x2 = dvec::Zero(K), sum_intf = dvec::Zero(K);
    double sum_psi = 0.0;
    for (const auto& b : blocks) {
        for (int k = 0; k < K; ++k) sum_x[k] += b.sum_x[k];
        sum_x2 += b.sum_x2;
        sum_intf += b.sum_intf;
        sum_psi += b.sum_psi;
    }

    const double rho = powers.rho();
    auto assemble = [&](const std::vector<cplx>& sx, const dvec& sx2, const dvec& sintf,
                        double spsi, double n) {
        dvec gamma(K);
        for (int k = 0; k < K; ++k) {
            const cplx mean = sx[k] / n;
            const double var = std::max(0.0, (sx2[k] / n - std::norm(mean)) * n / std::max(1.0, n - 1.0));
            const double interf = sintf[k] / n;
            const double psi = spsi / n;
            gamma[k] =
                powers.p[k] * std::norm(mean) / (powers.p[k] * var + interf + psi / rho);
        }
        return gamma;
    };

    McSinrReport rep;
    rep.prefactor = to.prefactor;
    rep.gamma_hat = assemble(sum_x, sum_x2, sum_intf, sum_psi, T);
    rep.mean_eff.resize(K);
    rep.var_eff.resize(K);
    rep.interf_hat.resize(K);
    for (int k = 0; k < K; ++k) {
        rep.mean_eff[k] = sum_x[k] / static_cast<double>(T);
        rep.var_eff[k] = T > 1 ? (sum_x2[k] - T * std::norm(rep.mean_eff[k])) / (T - 1.0) : 0.0;
        rep.interf_hat[k] = sum_intf[k] / T;
    }
    rep.psi_hat = sum_psi / T;
    rep.net_sum_rate = (rep.prefactor > 0.0) ? net_sum_rate(rep.gamma_hat, rep.prefactor) : 0.0;

    // block jackknife for stderrs
    rep.gamma_stderr = dvec::Zero(K);
    rep.mean_eff_stderr = dvec::Zero(K);
    rep.psi_stderr = 0.0;
    rep.net_sum_rate_stderr = 0.0;
    if (n_blocks > 1 && mc.report_variance) {
        dmat jk_gamma(n_blocks, K);
        dvec jk_rate(n_blocks), jk_psi(n_blocks);
        dmat jk_mean(n_blocks, K);
        for (int bi = 0; bi < n_blocks; ++bi) {
            const auto& b = blocks[bi];
            std::vector<cplx> sx(K);
            dvec sx2(K), sintf(K);
            for (int k = 0; k < K; ++k) {
                sx[k] = sum_x[k] - b.sum_x[k];
                sx2[k] = sum_x2[k] - b.sum_x2[k];
                sintf[k] = sum_intf[k] - b.sum_intf[k];
            }
            const double n = T - b.count;
            const dvec g = assemble(sx, sx2, sintf, sum_psi - b.sum_psi, n);
            jk_gamma.row(bi) = g.transpose();
            jk_rate[bi] = (rep.prefactor > 0.0) ? net_sum_rate(g, rep.prefactor) : 0.0;
            jk_psi[bi] = (sum_psi - b.sum_psi) / n;
            for (int k = 0; k < K; ++k) jk_mean(bi, k) = std::abs(sx[k] / n);
        }
        const double fac = static_cast<double>(n_blocks - 1) / n_blocks;
        auto jk_se = [&](const dvec& v) {
            const double m = v.mean();
            return std::sqrt(fac * (v.array() - m).square().sum());
        };
        for (int k = 0; k < K; ++k) {
            rep.gamma_stderr[k] = jk_se(jk_gamma.col(k));
            rep.mean_eff_stderr[k] = jk_se(jk_mean.col(k));
        }
        rep.psi_stderr = jk_se(jk_psi);
        rep.net_sum_rate_stderr = jk_se(jk_rate);
    }
    return rep;
}

dvec instantaneous_sinr(const ChannelEstimate& estimates, const ChannelStatistics& stats,
                        const PowerConfig& powers) {
    const auto& d = stats.dims;
    const int K = d.K;
    const double rho = powers.rho();

    std::vector<cmat> W(d.L);
    for (int l = 0; l < d.L; ++l) W[l] = stats.H1[l] * stats.H1[l].adjoint();

    double psi_inst = 0.0;
    for (int k = 0; k < K; ++k) psi_inst += powers.p[k] * estimates.h_hat[k].squaredNorm();

    dvec gamma(K);
    for (int k = 0; k < K; ++k) {
        cmat Ct = stats.beta_n_d(k) * cmat::Identity(d.M, d.M);
        for (int l = 0; l < d.L; ++l) Ct += stats.beta_n_2(l, k) * W[l];
        Ct -= estimates.C[k];  // estimation-error covariance A_k - C_k

        double interf = 0.0, err = 0.0;
        for (int f = 0; f < K; ++f) {
            if (f != k)
                interf += powers.p[f] * std::norm(estimates.h_hat[k].dot(estimates.h_hat[f]));
            err += powers.p[f] * estimates.h_hat[f].dot(Ct * estimates.h_hat[f]).real();
        }
        const double sig = powers.p[k] * std::norm(estimates.h_hat[k].dot(estimates.h_hat[k]));
        gamma[k] = sig / (interf + err + psi_inst / rho);
    }
    return gamma;
}

double mc_net_sum_rate(const McSinrReport& report, double prefactor) {
    return net_sum_rate(report.gamma_hat, prefactor);
}

double mc_net_sum_rate(const std::vector<double>& per_trial_rates) {
    if (per_trial_rates.empty()) return 0.0;
    double s = 0.0;
    for (double r : per_trial_rates) s += r;
    return s / static_cast<double>(per_trial_rates.size());
}

}  // namespace risde

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

#include "risde/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "risde/rng.hpp"

namespace risde {

cvec grad_dft(const ChannelStatistics& stats, const PhaseProfile& phases,
              const PowerConfig& powers, const TrainingConfig& cfg, bool* rayleigh_degenerate) {
    if (rayleigh_degenerate) *rayleigh_degenerate = false;
    if (stats.fading == Fading::Rayleigh) {
        if (rayleigh_degenerate) *rayleigh_degenerate = true;
        return cvec::Zero(static_cast<Eigen::Index>(stats.dims.L) * stats.dims.N());
    }
    return DetEqEvaluator(stats, powers, cfg, Protocol::MmseDft).gradient(phases.phi());
}

cvec grad_de(const ChannelStatistics& stats, const PhaseProfile& phases,
             const PowerConfig& powers, const TrainingConfig& cfg, bool* rayleigh_degenerate) {
    if (rayleigh_degenerate) *rayleigh_degenerate = false;
    if (stats.fading == Fading::Rayleigh) {
        if (rayleigh_degenerate) *rayleigh_degenerate = true;
        return cvec::Zero(static_cast<Eigen::Index>(stats.dims.L) * stats.dims.N());
    }
    return DetEqEvaluator(stats, powers, cfg, Protocol::DirectEstimate).gradient(phases.phi());
}

PhaseProfile project_unit_modulus(const cvec& phi_tilde, const cvec* previous, int* replaced) {
    cvec out(phi_tilde.size());
    int n_replaced = 0;
    for (Eigen::Index i = 0; i < phi_tilde.size(); ++i) {
        const double mag = std::abs(phi_tilde[i]);
        if (mag == 0.0) {
            if (!previous)
                throw std::invalid_argument(
                    "project_unit_modulus: zero entry has no well-defined argument");
            out[i] = (*previous)[i];
            ++n_replaced;
        } else {
            out[i] = phi_tilde[i] / mag;
        }
    }
    if (replaced) *replaced = n_replaced;
    return PhaseProfile::from(std::move(out), 1e-9);
}

namespace {

cvec initial_phases(Eigen::Index nl, const PgaConfig& cfg, int start_index) {
    switch (cfg.init) {
        case PgaConfig::Init::AllOnes:
            return cvec::Ones(nl);
        case PgaConfig::Init::Provided:
            if (cfg.provided.size() != nl)
                throw std::invalid_argument("PgaConfig: provided profile has wrong length");
            return cfg.provided;
        case PgaConfig::Init::Random:
        default: {
            RngStream rng(cfg.seed, RngDomain::PhaseInit, static_cast<std::uint64_t>(start_index));
            cvec phi(nl);
            for (Eigen::Index i = 0; i < nl; ++i)
                phi[i] = std::polar(1.0, 2.0 * M_PI * rng.next_uniform());
            return phi;
        }
    }
}

PgaResult pga_single(const std::function<double(const cvec&)>& objective,
                     const std::function<cvec(const cvec&)>& gradient, Eigen::Index nl,
                     const PgaConfig& cfg, int start_index) {
    cvec phi = initial_phases(nl, cfg, start_index);
    double f = objective(phi);
    if (!std::isfinite(f)) throw std::runtime_error("projected_gradient_ascent: non-finite objective");

    PgaResult res;
    res.trace.push_back(f);

    double mu = cfg.mu0;
    for (int it = 0; it < cfg.max_iters; ++it) {
        cvec g = gradient(phi);
        if (!g.allFinite())
            throw std::runtime_error("projected_gradient_ascent: non-finite gradient");
        const double gn = g.norm();
        if (gn == 0.0) break;
        const cvec dir = g / gn;
        const double slope = 2.0 * gn;  // d/dt objective(phi + t*dir) at t=0

        double step = mu;
        bool armijo = false;
        double best_f = f;
        cvec best_phi;
        int best_zero = 0;
        for (int s = 0; s <= cfg.max_shrinks; ++s) {
            int zeroed = 0;
            const PhaseProfile cand = project_unit_modulus(phi + step * dir, &phi, &zeroed);
            const double fc = objective(cand.phi());
            if (fc >= f + cfg.armijo_c * step * slope) {
                best_f = fc;
                best_phi = cand.phi();
                best_zero = zeroed;
                armijo = true;
                break;
            }
            if (fc >= f && fc > best_f) {
                best_f = fc;
                best_phi = cand.phi();
                best_zero = zeroed;
            }
            step *= cfg.shrink;
        }
        if (best_phi.size() == 0) break;  // no non-decreasing step found

        const double df = best_f - f;
        phi = best_phi;
        f = best_f;
        res.zero_projections += best_zero;
        res.trace.push_back(f);
        mu = armijo ? std::min(step * 2.0, 1e6) : step;
        if (df * df < cfg.epsilon) break;
    }
    res.objective = f;
    res.phi_star = project_unit_modulus(phi, &phi);
    return res;
}

}  // namespace

PgaResult projected_gradient_ascent(const std::function<double(const cvec&)>& objective,
                                    const std::function<cvec(const cvec&)>& gradient,
                                    Eigen::Index nl, const PgaConfig& cfg) {
    cfg.validate();
    const int starts = (cfg.init == PgaConfig::Init::Random) ? cfg.starts : 1;
    if (starts == 1) return pga_single(objective, gradient, nl, cfg, 0);

    std::vector<std::future<PgaResult>> futs;
    futs.reserve(starts);
    for (int s = 0; s < starts; ++s)
        futs.push_back(std::async(std::launch::async,
                                  [&, s] { return pga_single(objective, gradient, nl, cfg, s); }));
    PgaResult best;
    bool first = true;
    for (auto& fu : futs) {
        PgaResult r = fu.get();
        if (first || r.objective > best.objective) {
            best = std::move(r);
            first = false;
        }
    }
    return best;
}

PgaResult optimize_scsi(const DetEqEvaluator& eval, const PgaConfig& cfg) {
    return projected_gradient_ascent([&](const cvec& p) { return eval.objective(p); },
                                     [&](const cvec& p) { return eval.gradient(p); },
                                     eval.phase_count(), cfg);
}

IcsiFitness::IcsiFitness(const DftLinkEstimates& links, const ChannelStatistics& stats,
                         const PowerConfig& powers, const TrainingConfig& cfg)
    : M_(stats.dims.M),
      K_(stats.dims.K),
      nl_(static_cast<Eigen::Index>(stats.dims.L) * stats.dims.N()),
      rho_(powers.rho()),
      p_(powers.p) {
    const auto& d = stats.dims;
    TrainingConfig c = cfg;
    c.protocol = Protocol::MmseDft;
    prefactor_ = training_overhead(Protocol::MmseDft, d, c).prefactor;

    std::vector<cmat> W(d.L);
    for (int l = 0; l < d.L; ++l) W[l] = stats.H1[l] * stats.H1[l].adjoint();

    base_.resize(K_);
    B_hat_.resize(K_);
    C_tilde_.resize(K_);
    for (int k = 0; k < K_; ++k) {
        base_[k] = stats.h_bar_d[k] + links.hn_d[k];
        B_hat_[k].resize(M_, nl_);
        for (int l = 0; l < d.L; ++l) {
            const cvec col_w = stats.h_bar_2[l][k] + links.hn_2[l][k];
            B_hat_[k].middleCols(static_cast<Eigen::Index>(l) * d.N(), d.N()) =
                stats.H1[l] * col_w.asDiagonal();
        }
        const double bn = stats.beta_n_d(k);
        cmat Ct = (bn - bn * bn / (bn + 1.0 / (links.S * cfg.rho_p * cfg.tau_s))) *
                  cmat::Identity(M_, M_);
        for (int l = 0; l < d.L; ++l) {
            const double b2 = stats.beta_n_2(l, k);
            const double c2 =
                b2 * b2 / (b2 + 1.0 / (links.S * cfg.rho_p * cfg.tau_s * M_ * stats.beta_1[l]));
            Ct += (b2 - c2) * W[l];
        }
        C_tilde_[k] = std::move(Ct);
    }
}

double IcsiFitness::operator()(const cvec& phi) const {
    std::vector<cvec> h(K_);
    for (int k = 0; k < K_; ++k) h[k] = base_[k] + B_hat_[k] * phi;

    double psi = 0.0;
    for (int k = 0; k < K_; ++k) psi += p_[k] * h[k].squaredNorm();

    dvec gamma(K_);
    for (int k = 0; k < K_; ++k) {
        double interf = 0.0, err = 0.0;
        for (int f = 0; f < K_; ++f) {
            if (f != k) interf += p_[f] * std::norm(h[k].dot(h[f]));
            err += p_[f] * h[f].dot(C_tilde_[k] * h[f]).real();
        }
        const double sig = p_[k] * std::norm(h[k].dot(h[k]));
        gamma[k] = sig / (interf + err + psi / rho_);
    }
    double rate = 0.0;
    for (int k = 0; k < K_; ++k) rate += std::log2(1.0 + gamma[k]);
    return prefactor_ * rate;
}

GaResult ga_maximize(const std::function<double(const cvec&)>& fitness, Eigen::Index nl,
                     const GaConfig& cfg) {
    cfg.validate();
    const int P = cfg.population;

    auto to_phi = [&](const dvec& theta) {
        cvec phi(nl);
        for (Eigen::Index i = 0; i < nl; ++i) phi[i] = std::polar(1.0, theta[i]);
        return phi;
    };
    auto wrap = [](double a) {
        a = std::fmod(a, 2.0 * M_PI);
        return a < 0 ? a + 2.0 * M_PI : a;
    };

    std::vector<dvec> pop(P, dvec(nl));
    dvec fit(P);
    int evals = 0;
    for (int i = 0; i < P; ++i) {
        RngStream rng(cfg.seed, RngDomain::GaInit, static_cast<std::uint64_t>(i));
        for (Eigen::Index j = 0; j < nl; ++j) pop[i][j] = 2.0 * M_PI * rng.next_uniform();
        fit[i] = fitness(to_phi(pop[i]));
        ++evals;
    }

    auto best_of = [&]() {
        int bi = 0;
        for (int i = 1; i < P; ++i)
            if (fit[i] > fit[bi]) bi = i;
        return bi;
    };
    int bi = best_of();
    dvec best = pop[bi];
    double best_fit = fit[bi];

    double sigma = cfg.mutation_std_rad;
    for (int gen = 0; gen < cfg.generations; ++gen) {
        std::vector<int> order(P);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fit[a] > fit[b]; });

        std::vector<dvec> next;
        next.reserve(P);
        for (int e = 0; e < cfg.elite_count; ++e) next.push_back(pop[order[e]]);

        for (int i = cfg.elite_count; i < P; ++i) {
            RngStream rng(cfg.seed, RngDomain::GaEvolve, static_cast<std::uint64_t>(gen),
                          static_cast<std::uint64_t>(i));
            auto tournament = [&]() {
                int winner = static_cast<int>(rng.next_u64() % P);
                for (int t = 1; t < cfg.tournament; ++t) {
                    const int c = static_cast<int>(rng.next_u64() % P);
                    if (fit[c] > fit[winner]) winner = c;
                }
                return winner;
            };
            const dvec& pa = pop[tournament()];
            const dvec& pb = pop[tournament()];
            dvec child(nl);
            for (Eigen::Index j = 0; j < nl; ++j) {
                double a = pa[j];
                if (rng.next_uniform() < cfg.crossover_rate) {
                    double delta = pb[j] - pa[j];
                    if (delta > M_PI) delta -= 2.0 * M_PI;
                    if (delta < -M_PI) delta += 2.0 * M_PI;
                    a += rng.next_uniform() * delta;  // shortest-arc blend
                }
                a += sigma * rng.next_normal();
                child[j] = wrap(a);
            }
            next.push_back(std::move(child));
        }

        pop = std::move(next);
        for (int i = 0; i < P; ++i) {
            fit[i] = fitness(to_phi(pop[i]));
            ++evals;
        }
        bi = best_of();
        if (fit[bi] > best_fit) {
            best_fit = fit[bi];
            best = pop[bi];
        }
        sigma *= cfg.mutation_decay;
    }

    GaResult res;
    res.best = PhaseProfile::from_angles(best);
    res.fitness = best_fit;
    res.evaluations = evals;
    return res;
}

GaResult ga_optimize_icsi(const DftLinkEstimates& links, const ChannelStatistics& stats,
                          const PowerConfig& powers, const TrainingConfig& cfg,
                          const GaConfig& ga) {
    const IcsiFitness fitness(links, stats, powers, cfg);
    return ga_maximize([&](const cvec& phi) { return fitness(phi); }, fitness.phase_count(), ga);
}

}  // namespace risde

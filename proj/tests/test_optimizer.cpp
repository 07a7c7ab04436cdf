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
#include "risde/optimizer.hpp"
#include "risde/rng.hpp"
#include "testutil.hpp"

using namespace risde;
using namespace risde::testutil;

namespace {

TrainingConfig train(double rho_p, double tau_s = 8.0) {
    TrainingConfig c;
    c.rho_p = rho_p;
    c.tau_s = tau_s;
    c.tau_c = 2000.0;
    return c;
}

// central finite differences of the objective along Re/Im of each probed entry
void check_gradient_fd(const DetEqEvaluator& eval, const cvec& phi, int probes,
                       std::uint64_t seed, double tol) {
    const cvec g = eval.gradient(phi);
    RngStream rng(seed, RngDomain::Unitary, 7);
    const double h = 1e-6;
    for (int p = 0; p < probes; ++p) {
        const Eigen::Index i =
            static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(phi.size()));
        cvec plus = phi, minus = phi;
        plus[i] += h;
        minus[i] -= h;
        const double fd_re = (eval.objective(plus) - eval.objective(minus)) / (2.0 * h);
        plus = phi;
        minus = phi;
        plus[i] += cplx(0.0, h);
        minus[i] -= cplx(0.0, h);
        const double fd_im = (eval.objective(plus) - eval.objective(minus)) / (2.0 * h);
        // for real f, df/dRe = 2 Re(g), df/dIm = 2 Im(g)
        CHECK(rel_err(2.0 * g[i].real(), fd_re) < tol);
        CHECK(rel_err(2.0 * g[i].imag(), fd_im) < tol);
    }
}

}  // namespace

TEST_CASE("analytic gradients match finite differences") {
    const ChannelStatistics st = random_stats(16, 2, 4, 4, 2, Fading::Rician, 81);
    const PowerConfig pw = PowerConfig::uniform(4, 6.0, 0.3);
    const TrainingConfig cfg = train(1.5);
    const PhaseProfile phi = random_phases(st.dims, 1);

    SUBCASE("full-CE objective") {
        const DetEqEvaluator eval(st, pw, cfg, Protocol::MmseDft);
        check_gradient_fd(eval, phi.phi(), 20, 5, 1e-5);
    }
    SUBCASE("direct-estimation objective") {
        const DetEqEvaluator eval(st, pw, cfg, Protocol::DirectEstimate);
        check_gradient_fd(eval, phi.phi(), 20, 6, 1e-5);
    }
    SUBCASE("scaled powers stay consistent") {
        PowerConfig scaled = pw;
        scaled.p *= 3.0;
        const DetEqEvaluator eval(st, scaled, cfg, Protocol::DirectEstimate);
        check_gradient_fd(eval, phi.phi(), 10, 7, 1e-5);
    }
}

TEST_CASE("gradient wrappers return zero under Rayleigh") {
    const ChannelStatistics ray = random_stats(8, 2, 2, 2, 2, Fading::Rayleigh, 82);
    const PowerConfig pw = PowerConfig::uniform(2, 2.0, 0.5);
    bool degenerate = false;
    const cvec g = grad_dft(ray, random_phases(ray.dims, 1), pw, train(1.0), &degenerate);
    CHECK(degenerate);
    CHECK(g.norm() == 0.0);
    const cvec g2 = grad_de(ray, random_phases(ray.dims, 2), pw, train(1.0), &degenerate);
    CHECK(degenerate);
    CHECK(g2.norm() == 0.0);
}

TEST_CASE("unit-modulus projection") {
    cvec v(3);
    v << cplx(0.5, 0.5), cplx(-3.0, 0.0), cplx(0.0, 2.0);
    const PhaseProfile p = project_unit_modulus(v);
    CHECK(std::abs(p.phi()[0] - std::polar(1.0, M_PI / 4)) < 1e-15);
    CHECK(std::abs(p.phi()[1] - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(p.phi()[2] - cplx(0.0, 1.0)) < 1e-15);

    // already unit-modulus stays put
    const PhaseProfile q = project_unit_modulus(p.phi());
    CHECK((q.phi() - p.phi()).norm() < 1e-15);

    // zero entries: previous iterate fallback, else error
    cvec z(2);
    z << cplx(0.0, 0.0), cplx(1.0, 0.0);
    CHECK_THROWS_AS(project_unit_modulus(z), std::invalid_argument);
    cvec prev(2);
    prev << cplx(0.0, -1.0), cplx(1.0, 0.0);
    int replaced = 0;
    const PhaseProfile r = project_unit_modulus(z, &prev, &replaced);
    CHECK(replaced == 1);
    CHECK(std::abs(r.phi()[0] - cplx(0.0, -1.0)) < 1e-15);
}

TEST_CASE("PGA contract on a small scenario") {
    const ChannelStatistics st = random_stats(12, 2, 3, 3, 2, Fading::Rician, 83);
    const PowerConfig pw = PowerConfig::uniform(3, 5.0, 0.2);
    const TrainingConfig cfg = train(1.0);
    const DetEqEvaluator eval(st, pw, cfg, Protocol::DirectEstimate);

    PgaConfig pga;
    pga.seed = 3;
    pga.starts = 2;
    const PgaResult res = optimize_scsi(eval, pga);

    // trace monotone nondecreasing, all iterates feasible
    for (std::size_t i = 1; i < res.trace.size(); ++i) CHECK(res.trace[i] >= res.trace[i - 1]);
    for (Eigen::Index i = 0; i < res.phi_star.size(); ++i)
        CHECK(std::abs(std::abs(res.phi_star.phi()[i]) - 1.0) < 1e-12);
    CHECK(res.objective == doctest::Approx(res.trace.back()));

    // beats a 64-draw random search
    double best_random = 0.0;
    for (std::uint64_t s = 0; s < 64; ++s) {
        const double v = eval.evaluate(random_phases(st.dims, 991, s)).net_sum_rate;
        best_random = std::max(best_random, v);
    }
    CHECK(res.objective >= best_random);
}

TEST_CASE("PGA reaches a stationary point of the projected ascent") {
    const ChannelStatistics st = random_stats(8, 2, 2, 2, 2, Fading::Rician, 84);
    const PowerConfig pw = PowerConfig::uniform(2, 4.0, 0.2);
    const TrainingConfig cfg = train(1.0);
    const DetEqEvaluator eval(st, pw, cfg, Protocol::DirectEstimate);

    PgaConfig pga;
    pga.epsilon = 1e-16;
    pga.max_iters = 3000;
    pga.starts = 1;
    pga.seed = 9;
    const PgaResult res = optimize_scsi(eval, pga);

    // tangential (Riemannian) gradient vanishes at convergence
    const cvec g = eval.gradient(res.phi_star.phi());
    cvec tangential(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const cplx ph = res.phi_star.phi()[i];
        tangential[i] = g[i] - (g[i] * std::conj(ph)).real() * ph;
    }
    CHECK(tangential.norm() < 1e-4);
}

TEST_CASE("single-user rank-aligned optimization beats random restarts") {
    const ChannelStatistics st = random_stats(10, 2, 2, 1, 1, Fading::Rician, 85);
    const PowerConfig pw = PowerConfig::unit(1, 3.0);
    const TrainingConfig cfg = train(2.0);
    const DetEqEvaluator eval(st, pw, cfg, Protocol::PerfectCsi);

    PgaConfig pga;
    pga.seed = 4;
    const PgaResult res = optimize_scsi(eval, pga);
    for (std::uint64_t s = 0; s < 64; ++s)
        CHECK(res.objective >= eval.evaluate(random_phases(st.dims, 55, s)).net_sum_rate);
}

TEST_CASE("GA maximizes a known smooth function") {
    // separable objective: sum cos(theta_i - target_i), maximum = nl at theta = target
    const Eigen::Index nl = 6;
    dvec target(nl);
    for (Eigen::Index i = 0; i < nl; ++i) target[i] = 0.3 + 0.4 * static_cast<double>(i);
    auto fitness = [&](const cvec& phi) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < nl; ++i)
            s += std::cos(std::arg(phi[i]) - target[i]);
        return s;
    };
    GaConfig ga;
    ga.seed = 10;
    const GaResult res = ga_maximize(fitness, nl, ga);
    CHECK(res.fitness > 0.99 * static_cast<double>(nl));
    CHECK(res.evaluations == ga.population * (ga.generations + 1));

    // deterministic given the seed
    const GaResult res2 = ga_maximize(fitness, nl, ga);
    CHECK(res.fitness == res2.fitness);
    CHECK((res.best.phi() - res2.best.phi()).norm() == 0.0);
}

TEST_CASE("instantaneous-fitness GA against brute force and random search") {
    // N = L = K = 1: brute force over a 1-degree grid
    const ChannelStatistics st = random_stats(4, 1, 1, 1, 1, Fading::Rician, 86);
    const PowerConfig pw = PowerConfig::unit(1, 4.0);
    const TrainingConfig cfg = train(3.0, 4.0);

    const ChannelRealization real = sample_realization(st, 20, 0);
    const DftObservations obs = simulate_dft_observations(real, st, cfg, 21, 0);
    const DftLinkEstimates links = mmse_dft_link_estimates(obs, st, cfg);
    const IcsiFitness fitness(links, st, pw, cfg);

    double best_grid = -1.0, best_theta = 0.0;
    for (int deg = 0; deg < 360; ++deg) {
        const double th = deg * M_PI / 180.0;
        cvec phi(1);
        phi[0] = std::polar(1.0, th);
        const double v = fitness(phi);
        if (v > best_grid) {
            best_grid = v;
            best_theta = th;
        }
    }

    GaConfig ga;
    ga.seed = 30;
    const GaResult res = ga_optimize_icsi(links, st, pw, cfg, ga);
    double dth = std::arg(res.best.phi()[0]) - best_theta;
    while (dth > M_PI) dth -= 2.0 * M_PI;
    while (dth < -M_PI) dth += 2.0 * M_PI;
    CHECK(std::abs(dth) < 1e-2);
    CHECK(res.fitness >= best_grid - 1e-9);

    // equal-budget random search never beats the GA (5 seeds)
    for (std::uint64_t s = 1; s <= 5; ++s) {
        GaConfig ga_s = ga;
        ga_s.seed = 100 + s;
        const GaResult r = ga_optimize_icsi(links, st, pw, cfg, ga_s);
        double best_rs = -1.0;
        RngStream rng(s, RngDomain::GaInit, 999);
        for (int i = 0; i < r.evaluations; ++i) {
            cvec phi(1);
            phi[0] = std::polar(1.0, 2.0 * M_PI * rng.next_uniform());
            best_rs = std::max(best_rs, fitness(phi));
        }
        CHECK(r.fitness >= best_rs - 1e-9);
    }
}

TEST_CASE("config validation") {
    PgaConfig pga;
    pga.shrink = 1.0;
    CHECK_THROWS_AS(pga.validate(), std::invalid_argument);
    GaConfig ga;
    ga.population = 1;
    CHECK_THROWS_AS(ga.validate(), std::invalid_argument);
    ga.population = 4;
    ga.elite_count = 4;
    CHECK_THROWS_AS(ga.validate(), std::invalid_argument);
}

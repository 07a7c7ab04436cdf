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

#include <cstdint>
#include <functional>
#include <vector>

#include "risde/detequiv.hpp"
#include "risde/estimation.hpp"
#include "risde/types.hpp"

namespace risde {

/// Wirtinger gradient of the full-CE net sum-rate in phi*. Zero for
/// Rayleigh-mode statistics (the closed form is phase-invariant); the
/// optional flag reports that degenerate case.
cvec grad_dft(const ChannelStatistics& stats, const PhaseProfile& phases,
              const PowerConfig& powers, const TrainingConfig& cfg,
              bool* rayleigh_degenerate = nullptr);

/// Same for the direct-estimation net sum-rate.
cvec grad_de(const ChannelStatistics& stats, const PhaseProfile& phases,
             const PowerConfig& powers, const TrainingConfig& cfg,
             bool* rayleigh_degenerate = nullptr);

struct PgaConfig {
    double epsilon = 1e-6;  // threshold on squared objective change
    int max_iters = 500;
    double mu0 = 1.0;
    double shrink = 0.5;
    double armijo_c = 1e-4;
    int max_shrinks = 30;
    enum class Init { Random, AllOnes, Provided };
    Init init = Init::Random;
    int starts = 4;  // random multi-starts; 1 for AllOnes/Provided
    std::uint64_t seed = 1;
    cvec provided;

    void validate() const {
        if (epsilon <= 0) throw std::invalid_argument("PgaConfig: epsilon must be > 0");
        if (shrink <= 0 || shrink >= 1)
            throw std::invalid_argument("PgaConfig: shrink must be in (0,1)");
        if (mu0 <= 0) throw std::invalid_argument("PgaConfig: mu0 must be > 0");
        if (max_iters < 1 || starts < 1)
            throw std::invalid_argument("PgaConfig: max_iters and starts must be >= 1");
    }
};

struct PgaResult {
    PhaseProfile phi_star;
    std::vector<double> trace;  // accepted objective values, nondecreasing
    double objective = 0.0;
    int zero_projections = 0;
};

/// Entrywise phi/|phi|. Exact-zero entries take the previous iterate's entry
/// when one is supplied (counted in *replaced), otherwise throw.
PhaseProfile project_unit_modulus(const cvec& phi_tilde, const cvec* previous = nullptr,
                                  int* replaced = nullptr);

/// Ascent with backtracking line search on the post-projection objective.
/// Accepts an Armijo sufficient increase, falling back to any non-decreasing
/// step; terminates when the squared objective change drops below epsilon.
PgaResult projected_gradient_ascent(const std::function<double(const cvec&)>& objective,
                                    const std::function<cvec(const cvec&)>& gradient,
                                    Eigen::Index nl, const PgaConfig& cfg);

/// Multi-start PGA on a deterministic-equivalent evaluator; returns the best
/// start. Starts run in parallel.
PgaResult optimize_scsi(const DetEqEvaluator& eval, const PgaConfig& cfg);

struct GaConfig {
    int population = 50;
    int generations = 100;
    double mutation_std_rad = 0.3;
    double mutation_decay = 0.97;
    double crossover_rate = 0.9;
    int elite_count = 2;
    int tournament = 3;
    std::uint64_t seed = 1;

    void validate() const {
        if (population < 2) throw std::invalid_argument("GaConfig: population must be >= 2");
        if (elite_count >= population)
            throw std::invalid_argument("GaConfig: elite_count must be < population");
        if (generations < 1) throw std::invalid_argument("GaConfig: generations must be >= 1");
    }
};

struct GaResult {
    PhaseProfile best;
    double fitness = 0.0;
    int evaluations = 0;
};

/// Instantaneous net sum-rate of the full-CE estimates as a function of the
/// data-phase profile; the per-link estimates stay fixed while the phase
/// candidates re-assemble the aggregate.
class IcsiFitness {
  public:
    IcsiFitness(const DftLinkEstimates& links, const ChannelStatistics& stats,
                const PowerConfig& powers, const TrainingConfig& cfg);

    double operator()(const cvec& phi) const;
    Eigen::Index phase_count() const { return nl_; }

  private:
    int M_, K_;
    Eigen::Index nl_;
    double rho_;
    double prefactor_;
    dvec p_;
    std::vector<cvec> base_;        // K of M: h_bar_d + hn_d
    std::vector<cmat> B_hat_;       // K of M x NL
    std::vector<cmat> C_tilde_;     // K of M x M
};

/// Real-angle-encoded genetic search (tournament selection, shortest-arc
/// blend crossover, decaying Gaussian mutation, elitism). Deterministic for
/// a given seed.
GaResult ga_maximize(const std::function<double(const cvec&)>& fitness, Eigen::Index nl,
                     const GaConfig& cfg);

/// Phase design from one coherence block's full-CE estimates.
GaResult ga_optimize_icsi(const DftLinkEstimates& links, const ChannelStatistics& stats,
                          const PowerConfig& powers, const TrainingConfig& cfg,
                          const GaConfig& ga);

}  // namespace risde

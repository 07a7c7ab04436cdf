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

#include <optional>
#include <string>
#include <vector>

#include "risde/montecarlo.hpp"
#include "risde/optimizer.hpp"
#include "risde/types.hpp"

namespace risde {

enum class PhaseDesign { Fixed, Random, PgaScsi, GaIcsi, FBest };
enum class EvalKind { DetEq, Mc, McInstantaneous, SpecialCaseTh };

struct MethodSpec {
    std::string label;
    Protocol protocol = Protocol::PerfectCsi;
    PhaseDesign phase_design = PhaseDesign::Fixed;
    EvalKind eval = EvalKind::DetEq;
    bool no_ris = false;
    bool centralized = false;        // all reflecting elements on one surface at the arc center
    std::optional<int> n_override;   // per-method N (element count per surface)
    int f_best_candidates = 16;
    std::optional<McConfig> mc;
};

/// Scenario section; either the geometric deployment or the synthetic
/// semi-unitary special case.
struct ScenarioSpec {
    SystemDims dims;
    GeometryConfig geo;
    PathLossConfig pl;
    Fading fading = Fading::Rician;
    RicianFactorModel rician;

    bool semi_unitary = false;
    double su_beta_d = 1.0;    // common direct-link gain
    double su_c = 1.0;         // per-surface cascade constant c_l
    std::uint64_t su_seed = 3;
};

enum class SweepVar { PMaxW, N, L, RhoDb };

struct SweepSpec {
    SweepVar variable = SweepVar::PMaxW;
    std::vector<double> values;
    std::optional<int> total_elements;  // keep N*L constant while sweeping L
};

struct ExperimentConfig {
    ScenarioSpec scenario;
    TrainingConfig training;
    double p_max_w = 10.0;
    double sigma2_w = 1.0;
    bool unit_powers = false;  // p_k = 1 instead of 1/K
    SweepSpec sweep;
    std::vector<MethodSpec> methods;
    std::string output_path = "results.csv";
    std::uint64_t seed = 1;
    PgaConfig pga;
    GaConfig ga;

    void validate() const;
};

struct ResultRow {
    double sweep_value = 0.0;
    std::string method;
    double mean_sinr = 0.0;
    double net_sum_rate = 0.0;
    double prefactor = 1.0;
    double overhead_symbols = 0.0;  // rounded to whole symbols
    double stderr_value = 0.0;      // MC rows only
    double wall_ms = 0.0;
};

/// Executes the sweep: per value, rebuild the scenario, design phases per
/// method, evaluate, and append one row per (value, method) in declaration
/// order. Deterministic in (config, seed) up to the wall_ms column.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

std::string csv_string(const std::vector<ResultRow>& rows);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// Section V configurations for the six reference figures.
ExperimentConfig figure_preset(const std::string& name);

/// JSON-file config front end with schema validation.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& json_text);

/// Grid factorization N = N1 * N2 with N1 the largest divisor <= sqrt(N).
std::pair<int, int> factor_grid(int N);

}  // namespace risde

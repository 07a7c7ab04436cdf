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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "risde/experiment.hpp"

namespace {

std::string resolve_output(const std::string& out_dir, const std::string& file) {
    std::string dir = out_dir;
    if (const char* env = std::getenv("RISDE_OUT_DIR"); env && *env) dir = env;
    if (dir.empty()) return file;
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / file).string();
}

int run_rows(risde::ExperimentConfig cfg, const std::string& out_dir) {
    const auto rows = risde::run_experiment(cfg);
    const std::string path = resolve_output(out_dir, cfg.output_path);
    risde::emit_csv(rows, path);
    std::cout << "wrote " << rows.size() << " rows to " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed-RIS MISO downlink experiment runner"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir;
    std::uint64_t seed = 0;
    int trials = 0;
    bool seed_set = false, trials_set = false;

    auto* run = app.add_subcommand("run", "run an experiment config file");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("--out", out_dir, "output directory (overridden by RISDE_OUT_DIR)");

    auto* preset = app.add_subcommand("preset", "run a built-in figure preset");
    preset->add_option("name", preset_name, "fig2|fig3|fig4|fig5|fig6|fig7")->required();
    preset->add_option("--out", out_dir, "output directory (overridden by RISDE_OUT_DIR)");
    preset->add_option("--seed", seed, "override the experiment seed")
        ->each([&](const std::string&) { seed_set = true; });
    preset->add_option("--trials", trials, "override MC trial counts")
        ->each([&](const std::string&) { trials_set = true; });

    auto* validate = app.add_subcommand("validate", "parse and validate a config file");
    validate->add_option("config", config_path, "JSON experiment config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_rows(risde::load_config(config_path), out_dir);
        }
        if (preset->parsed()) {
            risde::ExperimentConfig cfg = risde::figure_preset(preset_name);
            if (seed_set) cfg.seed = seed;
            if (trials_set) {
                for (auto& m : cfg.methods)
                    if (m.mc) m.mc->trials = trials;
            }
            return run_rows(std::move(cfg), out_dir);
        }
        if (validate->parsed()) {
            risde::load_config(config_path);
            std::cout << "ok: " << config_path << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

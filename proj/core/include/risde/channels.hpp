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

#include "risde/types.hpp"

namespace risde {

/// Draws h_dk ~ CN(h_bar_d[k], beta_n_d(k) I) and h_2lk ~ CN(h_bar_2[l][k],
/// beta_n_2(l,k) I), independent across users, links and entries. Substreams
/// are keyed by (seed, trial, user, link) so parallel trials reproduce bit-
/// identically for any scheduling.
ChannelRealization sample_realization(const ChannelStatistics& stats, std::uint64_t seed,
                                      std::uint64_t trial);

/// h_k = h_dk + sum_l H_1l diag(phi_l) h_2lk
cvec aggregate_channel(const ChannelRealization& real, const ChannelStatistics& stats,
                       const PhaseProfile& phases, int k);

/// mu_k = h_bar_d[k] + sum_l H_1l diag(phi_l) h_bar_2[l][k];
/// A_k = beta_n_d(k) I + sum_l beta_n_2(l,k) H_1l H_1l^H (phase-independent).
EquivalentStats equivalent_stats(const ChannelStatistics& stats, const PhaseProfile& phases);

/// Aggregate LoS mean only (one user).
cvec aggregate_mean(const ChannelStatistics& stats, const PhaseProfile& phases, int k);

/// Uniformly random unit-modulus profile of length N*L.
PhaseProfile random_phases(const SystemDims& dims, std::uint64_t seed, std::uint64_t index = 0);

}  // namespace risde

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

/// 10^(c0_db/10) * d^(-alpha). Throws for d <= 0.
double path_loss(double c0_db, double d, double alpha);

/// Distance-dependent Rician factor, linear. d in meters.
double rician_factor(double d, const RicianFactorModel& model = {});

/// Spherical-wave LoS channel between the BS ULA and one planar surface whose
/// center sits at ris_center. Entry (m, n) = sqrt(beta1) * exp(j 2*pi/lambda * l)
/// with l the exact path length to element (n1, n2), n = (n1-1)*N2 + n2.
cmat los_bs_ris_channel(const SystemDims& dims, const GeometryConfig& geo,
                        const Eigen::Vector3d& ris_center, double beta1);

/// sqrt(beta1 * N) * U with U the leading M rows of a seeded random N x N
/// unitary matrix; satisfies H * H^H = beta1 * N * I_M.
cmat semi_unitary_bs_ris(int M, int N, double beta1, std::uint64_t seed);

/// Builds the full scenario: arc placement, path gains, Rician factors, and
/// every deterministic LoS object. Deterministic in its inputs.
ChannelStatistics build_scenario(const SystemDims& dims, const GeometryConfig& geo,
                                 const PathLossConfig& pl, Fading fading,
                                 const RicianFactorModel& rician = {});

/// The same statistics with every surface removed (direct links only).
ChannelStatistics strip_ris(const ChannelStatistics& stats);

}  // namespace risde

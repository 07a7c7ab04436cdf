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

#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace risde {

/// Stream domains keep draws for different purposes decorrelated even when
/// the (trial, user, link) indices coincide.
enum class RngDomain : std::uint64_t {
    ChannelDirect = 1,
    ChannelRis = 2,
    TrainNoiseDirect = 3,
    TrainNoiseRis = 4,
    TrainNoiseDe = 5,
    PhaseInit = 6,
    GaInit = 7,
    GaEvolve = 8,
    Unitary = 9,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// One substream: a splitmix64 sequence keyed by (seed, domain, a, b, c).
/// Substreams with distinct keys are independent, so parallel Monte-Carlo
/// trials draw bit-identical values regardless of scheduling.
class RngStream {
  public:
    RngStream(std::uint64_t seed, RngDomain domain, std::uint64_t a = 0, std::uint64_t b = 0,
              std::uint64_t c = 0) {
        // mix the key fields one by one so permuted indices get distinct streams
        std::uint64_t s = seed;
        state_ = detail::splitmix64(s);
        s = state_ ^ (static_cast<std::uint64_t>(domain) * 0xda942042e4dd58b5ULL);
        state_ = detail::splitmix64(s);
        s = state_ ^ (a * 0xd6e8feb86659fd93ULL);
        state_ = detail::splitmix64(s);
        s = state_ ^ (b * 0xa0761d6478bd642fULL);
        state_ = detail::splitmix64(s);
        s = state_ ^ (c * 0xe7037ed1a0b428dbULL);
        state_ = detail::splitmix64(s);
    }

    std::uint64_t next_u64() { return detail::splitmix64(state_); }

    /// uniform in (0, 1]
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// standard circularly-symmetric complex normal CN(0, 1):
    /// Re, Im ~ N(0, 1/2) via the polar Box-Muller form.
    std::complex<double> next_cn() {
        const double r = std::sqrt(-std::log(next_uniform()));
        const double th = 2.0 * M_PI * next_uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }

    /// real standard normal N(0, 1)
    double next_normal() {
        const double r = std::sqrt(-2.0 * std::log(next_uniform()));
        return r * std::cos(2.0 * M_PI * next_uniform());
    }

    Eigen::VectorXcd cn_vector(Eigen::Index n) {
        Eigen::VectorXcd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = next_cn();
        return v;
    }

  private:
    std::uint64_t state_ = 0;
};

}  // namespace risde

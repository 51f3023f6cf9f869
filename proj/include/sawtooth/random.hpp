// Copyright 2026 The Sawtooth Trajectories Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace sawtooth {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trajectory `index` under `master_seed`:
/// splitmix64(master_seed ^ splitmix64(index + 0x9E3779B97F4A7C15)).
/// Depends only on the pair, never on scheduling.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index);

/// Private random stream of one trajectory.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    static RandomStream for_trajectory(std::uint64_t master_seed, std::uint64_t index) {
        return RandomStream(derive_stream_seed(master_seed, index));
    }

    /// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace sawtooth

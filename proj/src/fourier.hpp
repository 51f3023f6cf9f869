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

#include <cstddef>
#include <memory>
#include <span>

#include "sawtooth/state.hpp"

namespace sawtooth::detail {

/// In-place unnormalized complex DFT of fixed length backed by an FFTW plan.
///
/// Sign::positive computes out_l = sum_j exp(+2 pi i j l / n) in_j. A single
/// plan may be executed concurrently on distinct buffers.
class FourierTransform {
public:
    enum class Sign { negative, positive };

    FourierTransform(std::size_t length, Sign sign);
    ~FourierTransform();
    FourierTransform(FourierTransform&&) noexcept;
    FourierTransform& operator=(FourierTransform&&) noexcept;
    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;

    std::size_t length() const { return length_; }
    void operator()(std::span<Complex> data) const;

private:
    std::size_t length_ = 0;
    void* plan_ = nullptr;
};

}  // namespace sawtooth::detail

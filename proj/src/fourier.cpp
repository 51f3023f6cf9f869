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

#include "fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace sawtooth::detail {
namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

FourierTransform::FourierTransform(std::size_t length, Sign sign) : length_(length) {
    if (length == 0) throw std::invalid_argument("FFT length must be positive");
    std::vector<Complex> scratch(length);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard lock(planner_mutex());
    // ESTIMATE keeps the chosen algorithm, and so the rounding, reproducible.
    plan_ = fftw_plan_dft_1d(static_cast<int>(length), buf, buf,
                             sign == Sign::positive ? FFTW_BACKWARD : FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan_ == nullptr) throw std::runtime_error("FFTW failed to create a plan");
}

FourierTransform::~FourierTransform() {
    if (plan_ != nullptr) {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
}

FourierTransform::FourierTransform(FourierTransform&& other) noexcept
    : length_(other.length_), plan_(other.plan_) {
    other.plan_ = nullptr;
}

FourierTransform& FourierTransform::operator=(FourierTransform&& other) noexcept {
    if (this != &other) {
        if (plan_ != nullptr) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(static_cast<fftw_plan>(plan_));
        }
        length_ = other.length_;
        plan_ = other.plan_;
        other.plan_ = nullptr;
    }
    return *this;
}

void FourierTransform::operator()(std::span<Complex> data) const {
    if (data.size() != length_) throw std::invalid_argument("FFT buffer length mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_), buf, buf);
}

}  // namespace sawtooth::detail

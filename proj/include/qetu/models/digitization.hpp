// Copyright 2026 The qetu-toolkit Authors
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

/**
 * @file
 * Position/momentum grids and the FT pairing between them.
 */
#pragma once

#include <cmath>
#include <vector>

#include "../common.hpp"

namespace qetu::models {

/// Signed integer label of QFT index j. Index 0 is the zero mode and the
/// labels cover -N/2 .. N/2 - 1.
inline long conjugate_label(std::size_t j, std::size_t big_n) {
    const std::size_t m = (big_n - j) % big_n;
    return m < big_n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(big_n);
}

/// x_j = -x_max + j dx, dx = 2 x_max / (N - 1); p_max = pi / dx; dp = 2 pi / (N dx).
struct Digitization {
    std::size_t n_q = 1;
    real x_max = 1.0;

    [[nodiscard]] std::size_t size() const { return pow2(n_q); }
    [[nodiscard]] real dx() const { return 2.0 * x_max / static_cast<real>(size() - 1); }
    [[nodiscard]] real p_max() const { return pi / dx(); }
    [[nodiscard]] real dp() const { return 2.0 * pi / (static_cast<real>(size()) * dx()); }
    [[nodiscard]] real x(std::size_t j) const { return -x_max + static_cast<real>(j) * dx(); }
    /// Momentum carried by QFT index j.
    [[nodiscard]] real p(std::size_t j) const {
        return static_cast<real>(conjugate_label(j, size())) * dp();
    }

    [[nodiscard]] std::vector<real> x_grid() const {
        std::vector<real> v(size());
        for (std::size_t j = 0; j < size(); ++j) {
            v[j] = x(j);
        }
        return v;
    }
};

} // namespace qetu::models

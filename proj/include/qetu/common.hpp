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
 * Shared scalar types, error types and small numeric helpers.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qetu {

using real = double;
using cplx = std::complex<double>;

inline constexpr real pi = std::numbers::pi;

/// Bad caller input. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative solver gave up. The CLI maps this to exit code 3.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw ValidationError(msg);
    }
}

enum class Parity { even, odd, none };

inline const char *to_string(Parity p) {
    switch (p) {
    case Parity::even:
        return "even";
    case Parity::odd:
        return "odd";
    default:
        return "none";
    }
}

inline Parity parity_from_string(const std::string &s) {
    if (s == "even") {
        return Parity::even;
    }
    if (s == "odd") {
        return Parity::odd;
    }
    if (s == "none") {
        return Parity::none;
    }
    throw ValidationError("unknown parity '" + s + "'");
}

inline std::size_t pow2(std::size_t n) { return std::size_t{1} << n; }

/// Evenly spaced values lo, lo+step, ... up to hi (inclusive within step/1e6).
inline std::vector<real> arange_inclusive(real lo, real hi, real step) {
    require(step > 0, "range step must be positive");
    std::vector<real> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-6));
    for (long i = 0; i <= n; ++i) {
        out.push_back(lo + static_cast<real>(i) * step);
    }
    return out;
}

} // namespace qetu

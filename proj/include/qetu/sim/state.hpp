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
 * Dense statevector and the primitives QETU needs: diagonal phases, QFT,
 * ancilla X rotations.
 *
 * Qubit q corresponds to bit q of the amplitude index (little-endian).
 */
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "../common.hpp"

namespace qetu::sim {

struct StateVector {
    std::size_t n = 0;
    std::vector<cplx> amplitudes;

    StateVector() = default;
    explicit StateVector(std::size_t n_qubits)
        : n(n_qubits), amplitudes(pow2(n_qubits), cplx{0.0, 0.0}) {
        amplitudes[0] = 1.0;
    }
    StateVector(std::size_t n_qubits, std::vector<cplx> amps)
        : n(n_qubits), amplitudes(std::move(amps)) {
        require(amplitudes.size() == pow2(n), "StateVector: length is not 2^n");
    }

    [[nodiscard]] std::size_t dim() const { return amplitudes.size(); }
    [[nodiscard]] real norm() const {
        real s = 0.0;
        for (const auto &a : amplitudes) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }
    void normalize() {
        const real nr = norm();
        require(nr > 0.0, "StateVector: cannot normalize the zero vector");
        for (auto &a : amplitudes) {
            a /= nr;
        }
    }

    static StateVector uniform(std::size_t n_qubits) {
        const real v = 1.0 / std::sqrt(static_cast<real>(pow2(n_qubits)));
        return {n_qubits, std::vector<cplx>(pow2(n_qubits), cplx{v, 0.0})};
    }

    static StateVector basis(std::size_t n_qubits, std::size_t k) {
        StateVector s(n_qubits);
        s.amplitudes[0] = 0.0;
        s.amplitudes.at(k) = 1.0;
        return s;
    }

    static StateVector random(std::size_t n_qubits, std::mt19937_64 &rng) {
        std::normal_distribution<real> g;
        std::vector<cplx> a(pow2(n_qubits));
        for (auto &v : a) {
            v = {g(rng), g(rng)};
        }
        StateVector s(n_qubits, std::move(a));
        s.normalize();
        return s;
    }
};

inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    require(a.size() == b.size(), "inner: length mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// |<a|b>|
inline real overlap(const StateVector &a, const StateVector &b) {
    return std::abs(inner(a.amplitudes, b.amplitudes));
}

/// amp[j] *= exp(-i angle lambda_j)
inline void apply_diagonal_phase(std::span<cplx> amps, std::span<const real> eigenvalues,
                                 real angle) {
    if (amps.size() != eigenvalues.size()) {
        throw ValidationError("apply_diagonal_phase: length mismatch");
    }
    for (std::size_t j = 0; j < amps.size(); ++j) {
        amps[j] *= std::polar(1.0, -angle * eigenvalues[j]);
    }
}

inline void apply_diagonal_phase(StateVector &s, std::span<const real> eigenvalues, real angle) {
    apply_diagonal_phase(std::span<cplx>(s.amplitudes), eigenvalues, angle);
}

/// Diagonal phase on the k-qubit register starting at qubit q0.
inline void apply_diagonal_phase(std::span<cplx> amps, std::size_t q0, std::size_t k,
                                 std::span<const real> eigenvalues, real angle) {
    if (eigenvalues.size() != pow2(k)) {
        throw ValidationError("apply_diagonal_phase: table length is not 2^k");
    }
    std::vector<cplx> ph(eigenvalues.size());
    for (std::size_t j = 0; j < ph.size(); ++j) {
        ph[j] = std::polar(1.0, -angle * eigenvalues[j]);
    }
    const std::size_t mask = pow2(k) - 1;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= ph[(i >> q0) & mask];
    }
}

namespace detail {

/// In-place radix-2 transform of length 2^k: out_j = sum_m e^{sign 2 pi i j m / N} in_m / sqrt(N).
inline void fft_inplace(std::vector<cplx> &v, int sign) {
    const std::size_t n = v.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(v[i], v[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const real ang = sign * 2.0 * pi / static_cast<real>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx w = std::polar(1.0, ang * static_cast<real>(k));
                const cplx a = v[i + k];
                const cplx b = v[i + k + len / 2] * w;
                v[i + k] = a + b;
                v[i + k + len / 2] = a - b;
            }
        }
    }
    const real s = 1.0 / std::sqrt(static_cast<real>(n));
    for (auto &a : v) {
        a *= s;
    }
}

inline void transform_register(std::span<cplx> amps, std::size_t q0, std::size_t k, int sign) {
    const std::size_t big_n = pow2(k);
    if (k == 0 || (amps.size() % (big_n << q0)) != 0) {
        throw ValidationError("qft: invalid subregister");
    }
    const std::size_t stride = pow2(q0);
    std::vector<cplx> buf(big_n);
    for (std::size_t hi = 0; hi < amps.size(); hi += big_n * stride) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
            for (std::size_t j = 0; j < big_n; ++j) {
                buf[j] = amps[hi + lo + j * stride];
            }
            fft_inplace(buf, sign);
            for (std::size_t j = 0; j < big_n; ++j) {
                amps[hi + lo + j * stride] = buf[j];
            }
        }
    }
}

} // namespace detail

/// FT|k> = sum_j e^{2 pi i j k / N} |j> / sqrt(N) on qubits [q0, q0 + k).
inline void apply_qft(std::span<cplx> amps, std::size_t q0, std::size_t k) {
    detail::transform_register(amps, q0, k, +1);
}

inline void apply_iqft(std::span<cplx> amps, std::size_t q0, std::size_t k) {
    detail::transform_register(amps, q0, k, -1);
}

inline void apply_qft(StateVector &s, std::size_t q0, std::size_t k) {
    apply_qft(std::span<cplx>(s.amplitudes), q0, k);
}

inline void apply_iqft(StateVector &s, std::size_t q0, std::size_t k) {
    apply_iqft(std::span<cplx>(s.amplitudes), q0, k);
}

/// e^{i phi X} on the top qubit, i.e. mixing the two halves of the array.
inline void apply_ancilla_rx(std::span<cplx> amps, real phi) {
    const std::size_t half = amps.size() / 2;
    const real c = std::cos(phi);
    const cplx is{0.0, std::sin(phi)};
    for (std::size_t j = 0; j < half; ++j) {
        const cplx a0 = amps[j];
        const cplx a1 = amps[j + half];
        amps[j] = c * a0 + is * a1;
        amps[j + half] = is * a0 + c * a1;
    }
}

} // namespace qetu::sim

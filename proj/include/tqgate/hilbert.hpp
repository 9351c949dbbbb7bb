// Copyright 2026 The tqgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "tqgate/types.hpp"

namespace tqgate {

/// One weakly anharmonic ladder. Frequencies are linear, in GHz.
struct QubitSpec {
    double freq = 5.5;
    double anharm = 0.1;
    int n_levels = 3;

    /// Energy of |n> in GHz (linear units, ground state at zero).
    double level_energy(int n) const { return n * freq - anharm * n * (n - 1) / 2.0; }

    void validate(const std::string &who = "qubit") const {
        if (n_levels < 2) throw InvalidInput(who + ": n_levels must be >= 2");
        if (!(freq > 0.0)) throw InvalidInput(who + ": freq must be > 0");
        if (!(anharm >= 0.0)) throw InvalidInput(who + ": anharm must be >= 0");
    }
};

/// Two qubits coupled capacitively through g J^x_A J^x_B.
struct DirectSystemSpec {
    QubitSpec qubit_a;
    QubitSpec qubit_b;
    double g = 0.01;

    void validate() const {
        qubit_a.validate("qubit_a");
        qubit_b.validate("qubit_b");
        if (!(g >= 0.0)) throw InvalidInput("g must be >= 0");
    }
};

/// Two qubits coupled to a common cavity mode with equal strength g_qc.
struct IndirectSystemSpec {
    QubitSpec qubit_a;
    QubitSpec qubit_b;
    double cavity_freq = 6.9;
    double g_qc = 0.2;
    int n_photons = 5;

    double detuning_a() const { return qubit_a.freq - cavity_freq; }
    double detuning_b() const { return qubit_b.freq - cavity_freq; }

    void validate() const {
        qubit_a.validate("qubit_a");
        qubit_b.validate("qubit_b");
        if (!(g_qc >= 0.0)) throw InvalidInput("g_qc must be >= 0");
        if (!(cavity_freq > 0.0)) throw InvalidInput("cavity_freq must be > 0");
        if (n_photons < 2) throw InvalidInput("n_photons must be >= 2");
    }
};

using SystemSpec = std::variant<DirectSystemSpec, IndirectSystemSpec>;

inline const QubitSpec &qubit_a(const SystemSpec &s) {
    return std::visit([](const auto &x) -> const QubitSpec & { return x.qubit_a; }, s);
}
inline const QubitSpec &qubit_b(const SystemSpec &s) {
    return std::visit([](const auto &x) -> const QubitSpec & { return x.qubit_b; }, s);
}
inline QubitSpec &qubit_a(SystemSpec &s) {
    return std::visit([](auto &x) -> QubitSpec & { return x.qubit_a; }, s);
}
inline QubitSpec &qubit_b(SystemSpec &s) {
    return std::visit([](auto &x) -> QubitSpec & { return x.qubit_b; }, s);
}
inline bool is_indirect(const SystemSpec &s) { return std::holds_alternative<IndirectSystemSpec>(s); }
inline void validate(const SystemSpec &s) {
    std::visit([](const auto &x) { x.validate(); }, s);
}

/// Product-basis label |n_a>|n_b>|n_c>. Qubit A is outermost, the cavity innermost.
struct BasisIndex {
    int n_a = 0;
    int n_b = 0;
    std::optional<int> n_c;
};

/// Sizes of the tensor factors (cavity factor is 1 for direct systems).
struct BasisDims {
    int n_a = 2;
    int n_b = 2;
    int n_c = 1;

    int total() const { return n_a * n_b * n_c; }

    int flatten(const BasisIndex &idx) const {
        int c = idx.n_c.value_or(0);
        if (idx.n_a < 0 || idx.n_a >= n_a || idx.n_b < 0 || idx.n_b >= n_b || c < 0 || c >= n_c)
            throw InvalidInput("basis index out of range");
        return (idx.n_a * n_b + idx.n_b) * n_c + c;
    }

    BasisIndex unflatten(int k) const {
        if (k < 0 || k >= total()) throw InvalidInput("flat index out of range");
        BasisIndex idx;
        if (n_c > 1) idx.n_c = k % n_c;
        k /= n_c;
        idx.n_b = k % n_b;
        idx.n_a = k / n_b;
        return idx;
    }
};

inline BasisDims basis_dims(const DirectSystemSpec &s) { return {s.qubit_a.n_levels, s.qubit_b.n_levels, 1}; }
inline BasisDims basis_dims(const IndirectSystemSpec &s) {
    return {s.qubit_a.n_levels, s.qubit_b.n_levels, s.n_photons};
}
inline BasisDims basis_dims(const SystemSpec &s) {
    return std::visit([](const auto &x) { return basis_dims(x); }, s);
}

/// Diagonal ladder 2*pi*(n f - a n(n-1)/2) in rad/ns. freq_scale multiplies only n f.
inline OperatorMatrix ladder_diagonal(const QubitSpec &q, double freq_scale = 1.0) {
    q.validate();
    OperatorMatrix h = OperatorMatrix::Zero(q.n_levels, q.n_levels);
    for (int n = 1; n < q.n_levels; ++n)
        h(n, n) = angular(n * q.freq * freq_scale - q.anharm * n * (n - 1) / 2.0);
    return h;
}

/// Nearest-neighbour coupling operator with <n-1|J|n> = sqrt(n).
inline OperatorMatrix build_jx(int n_levels) {
    if (n_levels < 2) throw InvalidInput("build_jx: n_levels must be >= 2");
    OperatorMatrix j = OperatorMatrix::Zero(n_levels, n_levels);
    for (int n = 1; n < n_levels; ++n) {
        j(n - 1, n) = std::sqrt(static_cast<double>(n));
        j(n, n - 1) = j(n - 1, n);
    }
    return j;
}

/// Cavity annihilation operator truncated to n_photons Fock states.
inline OperatorMatrix build_annihilation(int n_photons) {
    if (n_photons < 2) throw InvalidInput("build_annihilation: n_photons must be >= 2");
    OperatorMatrix a = OperatorMatrix::Zero(n_photons, n_photons);
    for (int n = 1; n < n_photons; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline OperatorMatrix kron(const OperatorMatrix &a, const OperatorMatrix &b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline OperatorMatrix kron(const OperatorMatrix &a, const OperatorMatrix &b, const OperatorMatrix &c) {
    return kron(kron(a, b), c);
}

inline OperatorMatrix identity(int n) { return OperatorMatrix::Identity(n, n); }

/// Full (non-RWA) direct-coupling Hamiltonian in rad/ns.
inline OperatorMatrix build_direct_hamiltonian(const DirectSystemSpec &spec, double freq_scale_b = 1.0) {
    spec.validate();
    if (!(freq_scale_b > 0.0)) throw InvalidInput("freq_scale_b must be > 0");
    const int na = spec.qubit_a.n_levels;
    const int nb = spec.qubit_b.n_levels;
    OperatorMatrix h = kron(ladder_diagonal(spec.qubit_a), identity(nb));
    h += kron(identity(na), ladder_diagonal(spec.qubit_b, freq_scale_b));
    h += angular(spec.g) * kron(build_jx(na), build_jx(nb));
    return h;
}

/// Full qubit-cavity-qubit Hamiltonian including counter-rotating terms, in rad/ns.
inline OperatorMatrix build_indirect_hamiltonian(const IndirectSystemSpec &spec, double freq_scale_b = 1.0) {
    spec.validate();
    if (!(freq_scale_b > 0.0)) throw InvalidInput("freq_scale_b must be > 0");
    const int na = spec.qubit_a.n_levels;
    const int nb = spec.qubit_b.n_levels;
    const int nc = spec.n_photons;
    const OperatorMatrix a = build_annihilation(nc);
    const OperatorMatrix x = a + a.adjoint();
    const OperatorMatrix ia = identity(na), ib = identity(nb), ic = identity(nc);

    OperatorMatrix h = kron(ladder_diagonal(spec.qubit_a), ib, ic);
    h += kron(ia, ladder_diagonal(spec.qubit_b, freq_scale_b), ic);
    h += angular(spec.cavity_freq) * kron(ia, ib, OperatorMatrix(a.adjoint() * a));
    h += angular(spec.g_qc) * (kron(build_jx(na), ib, x) + kron(ia, build_jx(nb), x));
    return h;
}

inline OperatorMatrix build_hamiltonian(const SystemSpec &spec, double freq_scale_b = 1.0) {
    return std::visit(
        [&](const auto &s) -> OperatorMatrix {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, DirectSystemSpec>)
                return build_direct_hamiltonian(s, freq_scale_b);
            else
                return build_indirect_hamiltonian(s, freq_scale_b);
        },
        spec);
}

/// dH/d(freq_scale_b): the diagonal 2*pi*n_b*freq_b, embedded in the full space.
inline OperatorMatrix scale_generator_b(const SystemSpec &spec) {
    const BasisDims d = basis_dims(spec);
    const double fb = qubit_b(spec).freq;
    OperatorMatrix gen = OperatorMatrix::Zero(d.total(), d.total());
    for (int k = 0; k < d.total(); ++k) gen(k, k) = angular(d.unflatten(k).n_b * fb);
    return gen;
}

}  // namespace tqgate

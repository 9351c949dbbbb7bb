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
#include <string>

#include "tqgate/hilbert.hpp"

namespace tqgate {

/// Second-order dispersive couplings and dressed frequencies (all GHz, linear).
struct EffectiveCouplings {
    double g_eff_1 = 0.0;  ///< |02> <-> |11>
    double g_eff_2 = 0.0;  ///< |20> <-> |11>
    double g_eff_3 = 0.0;  ///< |01> <-> |10>
    double g_eff_4 = 0.0;  ///< |12> <-> |21>
    double dressed_freq_a1 = 0.0;
    double dressed_freq_b1 = 0.0;
    double dressed_freq_a2 = 0.0;  ///< stored raw: 2 w_a + 2 G^2 / (d_a - D_a)
    double dressed_freq_b2 = 0.0;
    double detuning_a = 0.0;
    double detuning_b = 0.0;
};

/// Smallest denominator magnitude (GHz) accepted before the dispersive expansion is refused.
inline constexpr double kDispersiveGuard = 1e-6;

inline EffectiveCouplings effective_couplings(const IndirectSystemSpec &spec) {
    spec.validate();
    const double da = spec.detuning_a();
    const double db = spec.detuning_b();
    const double da2 = da - spec.qubit_a.anharm;
    const double db2 = db - spec.qubit_b.anharm;
    for (double d : {da, db, da2, db2}) {
        if (std::abs(d) < kDispersiveGuard)
            throw InvalidInput("dispersive denominator below " + std::to_string(kDispersiveGuard) +
                               " GHz; effective model undefined");
    }
    const double g2 = spec.g_qc * spec.g_qc;

    EffectiveCouplings c;
    c.detuning_a = da;
    c.detuning_b = db;
    c.dressed_freq_a1 = spec.qubit_a.freq + g2 / da;
    c.dressed_freq_b1 = spec.qubit_b.freq + g2 / db;
    c.dressed_freq_a2 = 2.0 * spec.qubit_a.freq + 2.0 * g2 / da2;
    c.dressed_freq_b2 = 2.0 * spec.qubit_b.freq + 2.0 * g2 / db2;
    c.g_eff_1 = g2 / 2.0 * (1.0 / db2 + 1.0 / da);
    c.g_eff_2 = g2 / 2.0 * (1.0 / da2 + 1.0 / db);
    c.g_eff_3 = g2 / 2.0 * (1.0 / da + 1.0 / db);
    c.g_eff_4 = g2 / 2.0 * (1.0 / da2 + 1.0 / db2);
    return c;
}

namespace detail {

// Flat index of |m n> in a 3x3 two-qutrit space.
constexpr int q3(int m, int n) { return 3 * m + n; }

inline void set_pair(OperatorMatrix &h, int i, int j, double value) {
    h(i, j) = value;
    h(j, i) = value;
}

// Shared exchange structure of the RWA and effective two-qutrit models.
inline void add_qutrit_exchange(OperatorMatrix &h, double g01_10, double g02_11, double g20_11, double g12_21) {
    set_pair(h, q3(0, 1), q3(1, 0), angular(g01_10));
    set_pair(h, q3(0, 2), q3(1, 1), angular(std::sqrt(2.0) * g02_11));
    set_pair(h, q3(2, 0), q3(1, 1), angular(std::sqrt(2.0) * g20_11));
    set_pair(h, q3(1, 2), q3(2, 1), angular(2.0 * g12_21));
}

}  // namespace detail

/// Two-qutrit effective Hamiltonian with the cavity eliminated, in rad/ns.
/// Level 2 of qubit j sits at (dressed_freq_j2 - anharm_j).
inline OperatorMatrix build_effective_hamiltonian(const IndirectSystemSpec &spec) {
    const EffectiveCouplings c = effective_couplings(spec);
    const double ea[3] = {0.0, c.dressed_freq_a1, c.dressed_freq_a2 - spec.qubit_a.anharm};
    const double eb[3] = {0.0, c.dressed_freq_b1, c.dressed_freq_b2 - spec.qubit_b.anharm};
    OperatorMatrix h = OperatorMatrix::Zero(9, 9);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) h(detail::q3(m, n), detail::q3(m, n)) = angular(ea[m] + eb[n]);
    detail::add_qutrit_exchange(h, c.g_eff_3, c.g_eff_1, c.g_eff_2, c.g_eff_4);
    return h;
}

/// Three-level rotating-wave direct-coupling Hamiltonian, in rad/ns. Ignores n_levels.
inline OperatorMatrix build_rwa_direct_hamiltonian(const DirectSystemSpec &spec) {
    spec.validate();
    const double ea[3] = {0.0, spec.qubit_a.freq, 2.0 * spec.qubit_a.freq - spec.qubit_a.anharm};
    const double eb[3] = {0.0, spec.qubit_b.freq, 2.0 * spec.qubit_b.freq - spec.qubit_b.anharm};
    OperatorMatrix h = OperatorMatrix::Zero(9, 9);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) h(detail::q3(m, n), detail::q3(m, n)) = angular(ea[m] + eb[n]);
    detail::add_qutrit_exchange(h, spec.g, spec.g, spec.g, spec.g);
    return h;
}

}  // namespace tqgate

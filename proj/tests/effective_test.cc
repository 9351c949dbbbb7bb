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

#include "tqgate/effective.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"
#include "tqgate/propagator.hpp"

using namespace tqgate;

namespace {

// Cavity below both qubits, qubit B on the |11> <-> |02> resonance.
IndirectSystemSpec cavity_cz_base(double g_qc, double anharm = 0.2) {
    return {{8.2, anharm, 3}, {8.2 + anharm, anharm, 3}, 6.9, g_qc, 5};
}

}  // namespace

TEST(effective_couplings, zero_coupling_limit) {
    const auto c = effective_couplings(cavity_cz_base(0.0));
    EXPECT_EQ(c.g_eff_1, 0.0);
    EXPECT_EQ(c.g_eff_2, 0.0);
    EXPECT_EQ(c.g_eff_3, 0.0);
    EXPECT_EQ(c.g_eff_4, 0.0);
    EXPECT_EQ(c.dressed_freq_a1, 8.2);
    EXPECT_DOUBLE_EQ(c.dressed_freq_b1, 8.4);
    EXPECT_EQ(c.dressed_freq_a2, 16.4);
    EXPECT_DOUBLE_EQ(c.dressed_freq_b2, 16.8);
}

TEST(effective_couplings, resonance_identity_geff1) {
    const auto c = effective_couplings(cavity_cz_base(0.2));
    EXPECT_NEAR(c.g_eff_1, 0.04 / 1.3, 1e-12 * 0.04 / 1.3);
    EXPECT_NEAR(c.g_eff_1, 0.030769230769230769, 1e-15);
    EXPECT_NEAR(c.detuning_a, 1.3, 1e-12);
    EXPECT_NEAR(c.g_eff_3, 0.02 * (1.0 / 1.3 + 1.0 / 1.5), 1e-15);
    // Holds for other anharmonicities too.
    for (double anharm : {0.05, 0.1, 0.25, 0.4}) {
        const auto spec = cavity_cz_base(0.15, anharm);
        const auto e = effective_couplings(spec);
        const double expect = 0.15 * 0.15 / spec.detuning_a();
        EXPECT_NEAR(e.g_eff_1, expect, 1e-12 * expect);
    }
}

TEST(effective_couplings, symmetric_harmonic_limit) {
    IndirectSystemSpec s{{7.0, 0.0, 3}, {7.0, 0.0, 3}, 6.0, 0.1, 5};
    const auto c = effective_couplings(s);
    const double expect = 0.01 / 1.0;
    for (double v : {c.g_eff_1, c.g_eff_2, c.g_eff_3, c.g_eff_4}) EXPECT_NEAR(v, expect, 1e-15);
}

TEST(effective_couplings, quadratic_in_coupling) {
    const auto c1 = effective_couplings(cavity_cz_base(0.1));
    const auto c2 = effective_couplings(cavity_cz_base(0.2));
    EXPECT_EQ(c2.g_eff_1, 4.0 * c1.g_eff_1);
    EXPECT_EQ(c2.g_eff_2, 4.0 * c1.g_eff_2);
    EXPECT_EQ(c2.g_eff_3, 4.0 * c1.g_eff_3);
    EXPECT_EQ(c2.g_eff_4, 4.0 * c1.g_eff_4);
}

TEST(effective_couplings, dressed_level_two_is_raw) {
    const auto s = cavity_cz_base(0.2);
    const auto c = effective_couplings(s);
    EXPECT_NEAR(c.dressed_freq_a2, 2 * 8.2 + 2 * 0.04 / (1.3 - 0.2), 1e-12);
}

TEST(effective_couplings, rejects_singular_denominators) {
    IndirectSystemSpec on_cavity{{6.9, 0.2, 3}, {7.1, 0.2, 3}, 6.9, 0.1, 5};
    EXPECT_THROW(effective_couplings(on_cavity), InvalidInput);
    IndirectSystemSpec second_level{{7.1, 0.2, 3}, {7.3, 0.2, 3}, 6.9, 0.1, 5};
    EXPECT_THROW(effective_couplings(second_level), InvalidInput);
}

TEST(build_effective_hamiltonian, zero_coupling_is_bare_diagonal) {
    const auto s = cavity_cz_base(0.0);
    const auto h = build_effective_hamiltonian(s);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
            const double e = s.qubit_a.level_energy(m) + s.qubit_b.level_energy(n);
            EXPECT_NEAR(h(3 * m + n, 3 * m + n).real(), angular(e), 1e-12);
        }
    EXPECT_EQ((h - OperatorMatrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(build_effective_hamiltonian, coupling_elements) {
    const auto s = cavity_cz_base(0.2);
    const auto c = effective_couplings(s);
    const auto h = build_effective_hamiltonian(s);
    EXPECT_NEAR(h(2, 4).real(), angular(std::sqrt(2.0) * 0.04 / 1.3), 1e-12);  // <02|H|11>
    EXPECT_NEAR(h(6, 4).real(), angular(std::sqrt(2.0) * c.g_eff_2), 1e-12);   // <20|H|11>
    EXPECT_NEAR(h(1, 3).real(), angular(c.g_eff_3), 1e-12);                    // <01|H|10>
    EXPECT_NEAR(h(5, 7).real(), angular(2.0 * c.g_eff_4), 1e-12);              // <12|H|21>
    EXPECT_EQ(hermiticity_defect(h), 0.0);
    EXPECT_NEAR(h(8, 8).real(), angular(c.dressed_freq_a2 - 0.2 + c.dressed_freq_b2 - 0.2), 1e-12);
}

TEST(build_rwa_direct_hamiltonian, coefficients) {
    DirectSystemSpec s{{5.5, 0.15, 3}, {5.5, 0.1, 3}, 0.01};
    const auto h = build_rwa_direct_hamiltonian(s);
    EXPECT_NEAR(h(5, 7).real(), angular(0.02), 1e-12);   // <12|H|21>
    EXPECT_NEAR(h(1, 3).real(), angular(0.01), 1e-12);   // <01|H|10>
    EXPECT_NEAR(h(2, 4).real(), angular(std::sqrt(2.0) * 0.01), 1e-12);
    EXPECT_NEAR(h(8, 8).real(), angular(2 * 5.5 - 0.15 + 2 * 5.5 - 0.1), 1e-12);
    EXPECT_EQ(h(0, 4), complex(0.0));  // no counter-rotating |00> <-> |11>
    EXPECT_EQ(hermiticity_defect(h), 0.0);

    s.g = 0.0;
    const auto h0 = build_rwa_direct_hamiltonian(s);
    EXPECT_EQ((h0 - OperatorMatrix(h0.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(effective_model, dressed_doublet_matches_full_model) {
    // |11>/|02> avoided crossing at G / delta_a = 0.05 with the cavity in vacuum.
    const auto s = cavity_cz_base(0.05 * 1.3);
    const auto c = effective_couplings(s);
    const BasisDims d = basis_dims(s);
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(build_indirect_hamiltonian(s));
    const int i11 = d.flatten({1, 1, 0}), i02 = d.flatten({0, 2, 0}), i00 = d.flatten({0, 0, 0});
    std::vector<std::pair<double, double>> weighted;
    int ground = 0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const auto v = es.eigenvectors().col(k);
        weighted.emplace_back(std::norm(v(i11)) + std::norm(v(i02)), es.eigenvalues()(k));
        if (std::norm(v(i00)) > std::norm(es.eigenvectors()(i00, ground))) ground = k;
    }
    std::sort(weighted.rbegin(), weighted.rend());
    const double e0 = es.eigenvalues()(ground);
    const double lo = std::min(weighted[0].second, weighted[1].second) - e0;
    const double hi = std::max(weighted[0].second, weighted[1].second) - e0;

    const auto h_eff = build_effective_hamiltonian(s);
    const double centre_eff = 0.5 * (h_eff(2, 2).real() + h_eff(4, 4).real());
    EXPECT_NEAR(0.5 * (lo + hi) / kTwoPi, centre_eff / kTwoPi, 2e-4);
    // Counter-rotating cavity terms shrink the exchange coupling by about delta / (omega + omega_c).
    const double split_eff = 2.0 * std::sqrt(2.0) * c.g_eff_1;
    EXPECT_NEAR((hi - lo) / kTwoPi, split_eff, 0.1 * split_eff);
}

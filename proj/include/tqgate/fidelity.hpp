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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "tqgate/effective.hpp"
#include "tqgate/propagator.hpp"

namespace tqgate {

enum class GateKind { kIswap, kCz };

inline std::string to_string(GateKind k) { return k == GateKind::kIswap ? "iswap" : "cz"; }

inline GateKind gate_kind_from_string(const std::string &s) {
    if (s == "iswap" || s == "ISWAP") return GateKind::kIswap;
    if (s == "cz" || s == "CZ") return GateKind::kCz;
    throw InvalidInput("unknown gate kind '" + s + "'");
}

struct GateTarget {
    GateKind kind = GateKind::kIswap;
    Matrix4c matrix = Matrix4c::Identity();

    /// Rows/columns ordered |00>, |01>, |10>, |11>.
    static GateTarget make(GateKind kind) {
        GateTarget t;
        t.kind = kind;
        t.matrix = Matrix4c::Zero();
        if (kind == GateKind::kIswap) {
            t.matrix(0, 0) = 1.0;
            t.matrix(1, 2) = complex(0.0, -1.0);
            t.matrix(2, 1) = complex(0.0, -1.0);
            t.matrix(3, 3) = 1.0;
        } else {
            t.matrix.diagonal() << 1.0, 1.0, 1.0, -1.0;
        }
        return t;
    }
};

struct GateResult {
    double fidelity = 0.0;
    double theta_a = 0.0;
    double theta_b = 0.0;
    double theta_global = 0.0;
    Matrix4c projected_block = Matrix4c::Zero();
    double leakage = 0.0;
    double total_time = 0.0;
    double unitarity_defect = 0.0;
    std::vector<std::string> warnings;
};

/// Flat indices of |00>,|01>,|10>,|11> (cavity in vacuum for indirect systems).
inline std::array<int, 4> computational_indices(const BasisDims &d) {
    std::array<int, 4> idx{};
    int k = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) idx[k++] = d.flatten({a, b, d.n_c > 1 ? std::optional<int>(0) : std::nullopt});
    return idx;
}

inline Matrix4c project_computational(const OperatorMatrix &u, const BasisDims &dims) {
    if (u.rows() != dims.total() || u.cols() != dims.total())
        throw InvalidInput("project_computational: unitary dimension " + std::to_string(u.rows()) +
                           " does not match system dimension " + std::to_string(dims.total()));
    const auto idx = computational_indices(dims);
    Matrix4c m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = u(idx[i], idx[j]);
    return m;
}

inline Matrix4c project_computational(const OperatorMatrix &u, const SystemSpec &spec) {
    return project_computational(u, basis_dims(spec));
}

inline double leakage(const Matrix4c &m) { return 1.0 - (m.adjoint() * m).trace().real() / 4.0; }

/// Sign of theta_a and theta_b in each diagonal entry of the compensation D(theta).
inline constexpr std::array<int, 4> kSignA = {+1, +1, -1, -1};
inline constexpr std::array<int, 4> kSignB = {+1, -1, +1, -1};

/// F(theta) = 1 - |U_T - D(theta) m|_F^2 / 16, expanded so each evaluation costs four phases:
/// |U_T - D m|^2 = |U_T|^2 + |m|^2 - 2 Re sum_i d_i c_i with c_i = sum_j m_ij conj(T_ij).
class PhaseObjective {
  public:
    PhaseObjective(const Matrix4c &m, const Matrix4c &target) {
        base_ = target.squaredNorm() + m.squaredNorm();
        for (int i = 0; i < 4; ++i) {
            c_[i] = 0.0;
            for (int j = 0; j < 4; ++j) c_[i] += m(i, j) * std::conj(target(i, j));
        }
    }

    double operator()(double theta_a, double theta_b, double theta) const {
        double overlap = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double phase = theta + kSignA[i] * theta_a + kSignB[i] * theta_b;
            overlap += std::cos(phase) * c_[i].real() - std::sin(phase) * c_[i].imag();
        }
        return 1.0 - (base_ - 2.0 * overlap) / 16.0;
    }

    const std::array<complex, 4> &coefficients() const { return c_; }
    double base() const { return base_; }

  private:
    std::array<complex, 4> c_{};
    double base_ = 0.0;
};

inline double wrap_phase(double x) {
    double w = std::fmod(x, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

namespace detail {

// Golden-section maximisation of f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F &&f, double lo, double hi, double tol = 1e-12) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace detail

inline constexpr int kPhaseGrid = 32;

/// Maximises F over (theta_a, theta_b, theta): 32^3 grid (theta_a outermost), then cyclic
/// golden-section refinement per coordinate until a full cycle gains < 1e-12.
inline GateResult gate_fidelity(const Matrix4c &m, const GateTarget &target) {
    const double smax = Eigen::JacobiSVD<Matrix4c>(m).singularValues()(0);
    if (smax > 1.0 + 1e-9)
        throw InvalidInput("gate_fidelity: block is not a contraction (largest singular value " +
                           std::to_string(smax) + ")");
    const PhaseObjective f(m, target.matrix);

    std::array<double, 3> best{0.0, 0.0, 0.0};  // theta_a, theta_b, theta
    double fbest = f(0.0, 0.0, 0.0);
    const double h = kTwoPi / kPhaseGrid;
    for (int i = 0; i < kPhaseGrid; ++i)
        for (int j = 0; j < kPhaseGrid; ++j)
            for (int k = 0; k < kPhaseGrid; ++k) {
                const double v = f(i * h, j * h, k * h);
                if (v > fbest) {
                    fbest = v;
                    best = {i * h, j * h, k * h};
                }
            }

    for (int cycle = 0; cycle < 1000; ++cycle) {
        const double before = fbest;
        for (int c = 0; c < 3; ++c) {
            auto line = [&](double x) {
                auto p = best;
                p[c] = x;
                return f(p[0], p[1], p[2]);
            };
            const auto [x, v] = detail::golden_max(line, best[c] - h, best[c] + h);
            if (v > fbest) {
                fbest = v;
                best[c] = x;
            }
        }
        if (fbest - before < 1e-12) break;
    }

    GateResult r;
    r.fidelity = std::clamp(fbest, 0.0, 1.0);
    r.theta_a = wrap_phase(best[0]);
    r.theta_b = wrap_phase(best[1]);
    r.theta_global = wrap_phase(best[2]);
    r.projected_block = m;
    r.leakage = std::clamp(leakage(m), 0.0, 1.0);
    return r;
}

/// The linear coupling (GHz) that sets the gate time: g for direct systems; for indirect
/// systems g_eff_3 (iSWAP) or g_eff_1 (CZ).
inline double resonant_coupling(const SystemSpec &spec, GateKind kind) {
    if (const auto *d = std::get_if<DirectSystemSpec>(&spec)) return d->g;
    const auto c = effective_couplings(std::get<IndirectSystemSpec>(spec));
    return kind == GateKind::kIswap ? c.g_eff_3 : c.g_eff_1;
}

/// g t = pi/2 (iSWAP) or sqrt(2) g t = pi (CZ), with angular g = 2 pi gl.
inline double resonant_gate_time(const SystemSpec &spec, GateKind kind) {
    const double gl = resonant_coupling(spec, kind);
    if (!(gl > 0.0)) throw InvalidInput("resonant coupling must be > 0 to define a gate time");
    return kind == GateKind::kIswap ? 1.0 / (4.0 * gl) : 1.0 / (2.0 * std::sqrt(2.0) * gl);
}

/// Frequency of qubit B that puts the system on the gate's resonance.
inline double resonant_freq_b(const SystemSpec &spec, GateKind kind) {
    const double fa = qubit_a(spec).freq;
    return kind == GateKind::kIswap ? fa : fa + qubit_b(spec).anharm;
}

inline GateResult run_gate(const SystemSpec &spec, const GateTarget &target, const PulseSchedule &schedule,
                           double dt = kDefaultDt) {
    std::vector<std::string> warnings;
    const double want = resonant_freq_b(spec, target.kind);
    if (std::abs(qubit_b(spec).freq - want) > 1e-9)
        warnings.push_back("qubit_b.freq " + std::to_string(qubit_b(spec).freq) + " GHz is off the " +
                           to_string(target.kind) + " resonance (" + std::to_string(want) + " GHz)");

    const PropagationResult prop = propagate_schedule(spec, schedule, dt);
    const double tol = schedule.has_ramps() ? kScheduleUnitarityTol : kConstantUnitarityTol;
    if (!(prop.unitarity_defect < tol))
        throw NumericalError("unitarity defect " + std::to_string(prop.unitarity_defect) + " exceeds " +
                             std::to_string(tol));

    GateResult r = gate_fidelity(project_computational(prop.unitary, spec), target);
    r.total_time = prop.total_time;
    r.unitarity_defect = prop.unitarity_defect;
    r.warnings = std::move(warnings);
    return r;
}

}  // namespace tqgate

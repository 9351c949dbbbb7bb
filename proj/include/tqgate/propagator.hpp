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
#include <vector>

#include <Eigen/Eigenvalues>

#include "tqgate/hilbert.hpp"

namespace tqgate {

/// Unitarity contracts for constant and ramped evolutions.
inline constexpr double kConstantUnitarityTol = 1e-10;
inline constexpr double kScheduleUnitarityTol = 1e-8;
inline constexpr double kDefaultDt = 0.005;     // ns
inline constexpr double kDefaultParkScale = 1.1;

/// A stretch of time over which qubit B's frequency scale moves linearly from start to end.
struct PulseSegment {
    double duration = 0.0;  // ns
    double freq_scale_b_start = 1.0;
    double freq_scale_b_end = 1.0;

    bool is_constant() const { return freq_scale_b_start == freq_scale_b_end; }
};

struct PulseSchedule {
    std::vector<PulseSegment> segments;

    double total_time() const {
        double t = 0.0;
        for (const auto &s : segments) t += s.duration;
        return t;
    }

    bool has_ramps() const {
        for (const auto &s : segments)
            if (!s.is_constant()) return true;
        return false;
    }

    void validate() const {
        if (segments.empty()) throw InvalidInput("schedule has no segments");
        for (const auto &s : segments) {
            if (!(s.duration > 0.0)) throw InvalidInput("schedule segment duration must be > 0");
            if (!(s.freq_scale_b_start > 0.0) || !(s.freq_scale_b_end > 0.0))
                throw InvalidInput("schedule frequency scales must be > 0");
        }
    }

    /// Hold qubit B at its nominal frequency for t_g.
    static PulseSchedule square(double t_g) { return {{{t_g, 1.0, 1.0}}}; }

    /// Park at park_scale, ramp down over tau_d, hold t_g, ramp back. tau_d == 0 gives square().
    static PulseSchedule trapezoid(double tau_d, double t_g, double park_scale = kDefaultParkScale) {
        if (tau_d < 0.0) throw InvalidInput("tau_d must be >= 0");
        if (tau_d == 0.0) return square(t_g);
        return {{{tau_d, park_scale, 1.0}, {t_g, 1.0, 1.0}, {tau_d, 1.0, park_scale}}};
    }
};

struct PropagationResult {
    OperatorMatrix unitary;
    double total_time = 0.0;
    double unitarity_defect = 0.0;
    long steps_used = 0;
};

/// exp(-i K) for Hermitian K, via eigendecomposition.
inline OperatorMatrix expm_hermitian(const OperatorMatrix &k, double t = 1.0) {
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(k);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<complex>() * complex(0.0, -t)).array().exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline PropagationResult propagate_constant(const OperatorMatrix &h, double t) {
    if (h.rows() != h.cols()) throw InvalidInput("propagate_constant: Hamiltonian is not square");
    if (!(t >= 0.0)) throw InvalidInput("propagate_constant: t must be >= 0");
    const double scale = std::max(max_abs_entry(h), 1.0);
    if (hermiticity_defect(h) > 1e-9 * scale) throw InvalidInput("propagate_constant: Hamiltonian is not Hermitian");

    PropagationResult r;
    r.unitary = expm_hermitian(h, t);
    r.total_time = t;
    r.unitarity_defect = unitarity_defect(r.unitary);
    r.steps_used = 1;
    return r;
}

enum class RampRule {
    kMagnus4,   ///< two-point Gauss, fourth order
    kMidpoint,  ///< Hamiltonian frozen at the step midpoint, second order
};

/// Time-ordered product over the schedule. Constant segments are exact; ramped segments use
/// ceil(duration/dt) equal steps. H depends on the scale s as H(s) = H0 + s D with D diagonal,
/// so the fourth-order Magnus commutator reduces to (s2 - s1) [D, H0].
inline PropagationResult propagate_schedule(const SystemSpec &spec, const PulseSchedule &schedule,
                                            double dt = kDefaultDt, RampRule rule = RampRule::kMagnus4) {
    if (!(dt > 0.0)) throw InvalidInput("propagate_schedule: dt must be > 0");
    validate(spec);
    schedule.validate();

    const OperatorMatrix gen = scale_generator_b(spec);
    const OperatorMatrix h_nominal = build_hamiltonian(spec, 1.0);
    const OperatorMatrix h0 = h_nominal - gen;
    const OperatorMatrix comm = gen * h0 - h0 * gen;
    const Eigen::Index dim = h_nominal.rows();

    PropagationResult r;
    r.unitary = OperatorMatrix::Identity(dim, dim);
    for (const auto &seg : schedule.segments) {
        if (seg.is_constant()) {
            const OperatorMatrix h = h0 + seg.freq_scale_b_start * gen;
            r.unitary = expm_hermitian(h, seg.duration) * r.unitary;
            ++r.steps_used;
            continue;
        }
        const long n = static_cast<long>(std::ceil(seg.duration / dt));
        const double step = seg.duration / static_cast<double>(n);
        const double ds = seg.freq_scale_b_end - seg.freq_scale_b_start;
        const double gauss = std::sqrt(3.0) / 6.0;
        for (long k = 0; k < n; ++k) {
            const double mid = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
            OperatorMatrix kmat;
            if (rule == RampRule::kMidpoint) {
                kmat = step * (h0 + (seg.freq_scale_b_start + ds * mid) * gen);
            } else {
                const double s1 = seg.freq_scale_b_start + ds * (mid - gauss / static_cast<double>(n));
                const double s2 = seg.freq_scale_b_start + ds * (mid + gauss / static_cast<double>(n));
                kmat = step * (h0 + 0.5 * (s1 + s2) * gen) +
                       complex(0.0, -std::sqrt(3.0) * step * step / 12.0 * (s2 - s1)) * comm;
            }
            r.unitary = expm_hermitian(kmat) * r.unitary;
        }
        r.steps_used += n;
    }
    r.total_time = schedule.total_time();
    r.unitarity_defect = unitarity_defect(r.unitary);
    return r;
}

}  // namespace tqgate

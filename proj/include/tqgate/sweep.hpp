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
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tqgate/fidelity.hpp"

namespace tqgate {

enum class AxisName {
    kGOverDeltaB,     ///< direct g / anharm_b
    kGeffOverDeltaB,  ///< indirect g_eff_1 / anharm_b
    kDeltaAOverG,     ///< anharm_a / g (g_eff_1 for indirect systems)
    kDeltaBOverG,     ///< anharm_b / g (g_eff_1 for indirect systems)
    kGAbs,            ///< g (direct) or g_qc (indirect), GHz
    kGeffAbs,         ///< g_eff_1, GHz
    kDeltaBAbs,       ///< anharm_b, GHz
};

inline std::string to_string(AxisName a) {
    switch (a) {
        case AxisName::kGOverDeltaB: return "g_over_delta_b";
        case AxisName::kGeffOverDeltaB: return "geff_over_delta_b";
        case AxisName::kDeltaAOverG: return "delta_a_over_g";
        case AxisName::kDeltaBOverG: return "delta_b_over_g";
        case AxisName::kGAbs: return "g_abs";
        case AxisName::kGeffAbs: return "geff_abs";
        case AxisName::kDeltaBAbs: return "delta_b_abs";
    }
    return "?";
}

inline AxisName axis_name_from_string(const std::string &s) {
    for (auto a : {AxisName::kGOverDeltaB, AxisName::kGeffOverDeltaB, AxisName::kDeltaAOverG,
                   AxisName::kDeltaBOverG, AxisName::kGAbs, AxisName::kGeffAbs, AxisName::kDeltaBAbs})
        if (to_string(a) == s) return a;
    throw InvalidInput("unknown sweep axis '" + s + "'");
}

struct SweepAxis {
    AxisName name = AxisName::kGOverDeltaB;
    double start = 0.0;
    double stop = 1.0;
    int n_points = 2;

    void validate() const {
        if (n_points < 1) throw InvalidInput("axis " + to_string(name) + ": n_points must be >= 1");
        if (n_points == 1 && start != stop)
            throw InvalidInput("axis " + to_string(name) + ": a single-point axis needs start == stop");
        if (n_points >= 2 && !(start < stop)) throw InvalidInput("axis " + to_string(name) + ": start must be < stop");
    }

    double value(int i) const {
        if (n_points == 1) return start;
        if (i == n_points - 1) return stop;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    }

    std::vector<double> values() const {
        std::vector<double> v(static_cast<size_t>(n_points));
        for (int i = 0; i < n_points; ++i) v[static_cast<size_t>(i)] = value(i);
        return v;
    }
};

/// Everything about a grid point that is not swept.
struct SweepBase {
    SystemSpec system = DirectSystemSpec{};
    GateKind gate = GateKind::kIswap;
    double tau_d = 0.0;  // ns, 0 = square pulse
    double dt = kDefaultDt;
    double park_scale = kDefaultParkScale;
    bool lock_resonance = true;        ///< re-derive qubit_b.freq from the gate resonance at each point
    bool tie_anharmonicities = false;  ///< anharm_a follows anharm_b
};

struct SweepRow {
    std::vector<double> axis_values;
    double fidelity = std::numeric_limits<double>::quiet_NaN();
    double t_g = std::numeric_limits<double>::quiet_NaN();
    double leakage = std::numeric_limits<double>::quiet_NaN();
    double theta_a = std::numeric_limits<double>::quiet_NaN();
    double theta_b = std::numeric_limits<double>::quiet_NaN();
    double theta_global = std::numeric_limits<double>::quiet_NaN();
    double unitarity_defect = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";

    bool ok() const { return status == "ok"; }
};

struct SweepGrid {
    std::vector<SweepAxis> axes;
    SweepBase base;
    /// Constant label columns (e.g. n_levels, tau_d_ns) emitted before the axis columns.
    std::vector<std::pair<std::string, double>> tags;
    std::vector<SweepRow> rows;
};

namespace detail {

inline bool has_axis(const std::vector<AxisName> &names, AxisName a) {
    return std::find(names.begin(), names.end(), a) != names.end();
}

// G that produces g_eff_1 = G^2 / delta_a.
inline double coupling_for_geff(const IndirectSystemSpec &s, double geff) {
    const double g2 = geff * s.detuning_a();
    if (!(g2 >= 0.0)) throw InvalidInput("g_eff_1 and detuning_a must share sign");
    return std::sqrt(g2);
}

inline double geff_of(const IndirectSystemSpec &s) {
    if (std::abs(s.detuning_a()) < kDispersiveGuard) throw InvalidInput("detuning_a is zero");
    return s.g_qc * s.g_qc / s.detuning_a();
}

}  // namespace detail

inline void validate_axes(const SweepBase &base, const std::vector<SweepAxis> &axes) {
    if (axes.empty() || axes.size() > 2) throw InvalidInput("a sweep needs one or two axes");
    std::vector<AxisName> names;
    for (const auto &a : axes) {
        a.validate();
        if (detail::has_axis(names, a.name)) throw InvalidInput("duplicate axis " + to_string(a.name));
        names.push_back(a.name);
    }
    const bool indirect = is_indirect(base.system);
    using detail::has_axis;
    if (!indirect && (has_axis(names, AxisName::kGeffAbs) || has_axis(names, AxisName::kGeffOverDeltaB)))
        throw InvalidInput("g_eff axes require an indirect system");
    if (indirect && has_axis(names, AxisName::kGOverDeltaB))
        throw InvalidInput("g_over_delta_b applies to direct systems; use geff_over_delta_b");
    const int coupling_axes = has_axis(names, AxisName::kGAbs) + has_axis(names, AxisName::kGeffAbs) +
                              has_axis(names, AxisName::kGOverDeltaB) + has_axis(names, AxisName::kGeffOverDeltaB);
    if (coupling_axes > 1) throw InvalidInput("at most one coupling axis per sweep");
    const int delta_b_axes = has_axis(names, AxisName::kDeltaBAbs) + has_axis(names, AxisName::kDeltaBOverG);
    if (delta_b_axes > 1) throw InvalidInput("at most one anharm_b axis per sweep");
    const bool coupling_over_delta =
        has_axis(names, AxisName::kGOverDeltaB) || has_axis(names, AxisName::kGeffOverDeltaB);
    const bool delta_over_coupling =
        has_axis(names, AxisName::kDeltaAOverG) || has_axis(names, AxisName::kDeltaBOverG);
    if (coupling_over_delta && delta_over_coupling)
        throw InvalidInput("coupling/anharm and anharm/coupling axes are mutually dependent");
    if (base.tie_anharmonicities && has_axis(names, AxisName::kDeltaAOverG))
        throw InvalidInput("delta_a_over_g conflicts with tie_anharmonicities");
}

/// Concrete system at one grid point. Absolute axes are applied first, then coupling/anharm
/// ratios, then anharm/coupling ratios, then the anharmonicity tie and the resonance lock.
inline SystemSpec derive_point(const SweepBase &base, const std::vector<SweepAxis> &axes,
                               const std::vector<double> &values) {
    SystemSpec spec = base.system;
    auto value_of = [&](AxisName n) -> std::optional<double> {
        for (size_t i = 0; i < axes.size(); ++i)
            if (axes[i].name == n) return values[i];
        return std::nullopt;
    };
    auto *direct = std::get_if<DirectSystemSpec>(&spec);
    auto *indirect = std::get_if<IndirectSystemSpec>(&spec);
    auto set_coupling = [&](double g) {
        if (direct) direct->g = g;
        else indirect->g_qc = g;
    };
    auto coupling = [&]() { return direct ? direct->g : detail::geff_of(*indirect); };

    if (auto v = value_of(AxisName::kDeltaBAbs)) qubit_b(spec).anharm = *v;
    if (auto v = value_of(AxisName::kGAbs)) set_coupling(*v);
    if (auto v = value_of(AxisName::kGeffAbs)) indirect->g_qc = detail::coupling_for_geff(*indirect, *v);
    if (base.tie_anharmonicities) qubit_a(spec).anharm = qubit_b(spec).anharm;

    if (auto v = value_of(AxisName::kGOverDeltaB)) direct->g = *v * qubit_b(spec).anharm;
    if (auto v = value_of(AxisName::kGeffOverDeltaB))
        indirect->g_qc = detail::coupling_for_geff(*indirect, *v * qubit_b(spec).anharm);

    if (auto v = value_of(AxisName::kDeltaAOverG)) qubit_a(spec).anharm = *v * coupling();
    if (auto v = value_of(AxisName::kDeltaBOverG)) qubit_b(spec).anharm = *v * coupling();
    if (base.tie_anharmonicities) qubit_a(spec).anharm = qubit_b(spec).anharm;

    if (base.lock_resonance) qubit_b(spec).freq = resonant_freq_b(spec, base.gate);
    validate(spec);
    return spec;
}

/// One grid point: derive the system, fix t_g from the resonance relation, run the gate.
inline SweepRow evaluate_point(const SweepBase &base, const std::vector<SweepAxis> &axes,
                               const std::vector<double> &values) {
    SweepRow row;
    row.axis_values = values;
    try {
        const SystemSpec spec = derive_point(base, axes, values);
        row.t_g = resonant_gate_time(spec, base.gate);
        const auto schedule = PulseSchedule::trapezoid(base.tau_d, row.t_g, base.park_scale);
        const GateResult r = run_gate(spec, GateTarget::make(base.gate), schedule, base.dt);
        row.fidelity = r.fidelity;
        row.leakage = r.leakage;
        row.theta_a = r.theta_a;
        row.theta_b = r.theta_b;
        row.theta_global = r.theta_global;
        row.unitarity_defect = r.unitarity_defect;
    } catch (const std::exception &e) {
        row.status = std::string("failed: ") + e.what();
        row.fidelity = row.leakage = row.theta_a = row.theta_b = row.theta_global =
            std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

/// Runs `count` independent jobs on up to `jobs` threads; job i writes only slot i.
template <class Fn>
void parallel_for(size_t count, int jobs, Fn &&fn) {
    const size_t workers = std::min<size_t>(static_cast<size_t>(std::max(jobs, 1)), std::max<size_t>(count, 1));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto &t : pool) t.join();
}

/// Rows come out in lexicographic axis order (first axis outermost) whatever the thread count.
inline SweepGrid sweep(const SweepBase &base, const std::vector<SweepAxis> &axes, int jobs = 1) {
    validate_axes(base, axes);
    SweepGrid grid;
    grid.axes = axes;
    grid.base = base;
    const size_t n0 = static_cast<size_t>(axes[0].n_points);
    const size_t n1 = axes.size() > 1 ? static_cast<size_t>(axes[1].n_points) : 1;
    grid.rows.resize(n0 * n1);
    parallel_for(grid.rows.size(), jobs, [&](size_t k) {
        std::vector<double> v{axes[0].value(static_cast<int>(k / n1))};
        if (axes.size() > 1) v.push_back(axes[1].value(static_cast<int>(k % n1)));
        grid.rows[k] = evaluate_point(base, axes, v);
    });
    return grid;
}

struct ThresholdResult {
    bool crossed = false;
    double value = std::numeric_limits<double>::quiet_NaN();  ///< axis value of the first crossing
    double t_g = std::numeric_limits<double>::quiet_NaN();    ///< gate time at that value, ns
    double level = 0.0;
    int evaluations = 0;
};

inline constexpr double kThresholdResolution = 1e-4;

/// First downward crossing of `level` scanning from the low end of a 1D grid, refined by
/// bisection on fresh evaluations until the bracket is narrower than kThresholdResolution.
inline ThresholdResult threshold(const SweepGrid &grid, double level) {
    if (grid.axes.size() != 1) throw InvalidInput("threshold needs a 1D grid");
    if (grid.rows.empty() || !grid.rows.front().ok() || grid.rows.front().fidelity < level)
        throw InvalidInput("threshold: fidelity at the low end of the axis is not above the level");
    ThresholdResult out;
    out.level = level;
    size_t hit = 0;
    for (size_t i = 1; i < grid.rows.size(); ++i)
        if (grid.rows[i].ok() && grid.rows[i].fidelity < level) {
            hit = i;
            break;
        }
    if (hit == 0) return out;

    size_t below_lo = hit - 1;
    while (!grid.rows[below_lo].ok()) --below_lo;
    double lo = grid.rows[below_lo].axis_values[0];
    double hi = grid.rows[hit].axis_values[0];
    while (hi - lo > kThresholdResolution) {
        const double mid = 0.5 * (lo + hi);
        const SweepRow r = evaluate_point(grid.base, grid.axes, {mid});
        ++out.evaluations;
        if (r.ok() && r.fidelity < level) hi = mid;
        else lo = mid;
    }
    out.crossed = true;
    out.value = 0.5 * (lo + hi);
    try {
        out.t_g = resonant_gate_time(derive_point(grid.base, grid.axes, {out.value}), grid.base.gate);
    } catch (const InvalidInput &) {
    }
    return out;
}

/// One grid per qubit truncation, identical axes.
inline std::vector<SweepGrid> truncation_study(const SweepBase &base, const std::vector<int> &n_levels_list,
                                               const SweepAxis &axis, int jobs = 1) {
    std::vector<SweepGrid> out;
    for (int n : n_levels_list) {
        if (n < 2) throw InvalidInput("truncation_study: n_levels must be >= 2");
        SweepBase b = base;
        qubit_a(b.system).n_levels = n;
        qubit_b(b.system).n_levels = n;
        auto g = sweep(b, {axis}, jobs);
        g.tags = {{"n_levels", static_cast<double>(n)}};
        out.push_back(std::move(g));
    }
    return out;
}

/// One fidelity curve per ramp time (0 = square pulse).
inline std::vector<SweepGrid> ramp_study(const SweepBase &base, const std::vector<double> &tau_d_list,
                                         const SweepAxis &axis, int jobs = 1) {
    std::vector<SweepGrid> out;
    for (double tau : tau_d_list) {
        if (!(tau >= 0.0)) throw InvalidInput("ramp_study: tau_d must be >= 0");
        SweepBase b = base;
        b.tau_d = tau;
        auto g = sweep(b, {axis}, jobs);
        g.tags = {{"tau_d_ns", tau}};
        out.push_back(std::move(g));
    }
    return out;
}

/// Peak-to-trough of the residual after a least-squares polynomial trend of the given degree.
inline double oscillation_amplitude(const std::vector<double> &xs, const std::vector<double> &ys, int degree = 3) {
    if (xs.size() != ys.size() || xs.size() < static_cast<size_t>(degree) + 2)
        throw InvalidInput("oscillation_amplitude: need more points than the trend degree + 1");
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const double mid = 0.5 * (*xmin + *xmax), half = 0.5 * (*xmax - *xmin);
    const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd vander(n, degree + 1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = half > 0 ? (xs[static_cast<size_t>(i)] - mid) / half : 0.0;
        double p = 1.0;
        for (int d = 0; d <= degree; ++d, p *= u) vander(i, d) = p;
        y(i) = ys[static_cast<size_t>(i)];
    }
    const Eigen::VectorXd coef = vander.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd res = y - vander * coef;
    return res.maxCoeff() - res.minCoeff();
}

/// Largest fidelity range along axis `along` of a 2D grid, over all values of the other axis.
inline double max_spread_along(const SweepGrid &g, size_t along) {
    if (g.axes.size() != 2 || along > 1) throw InvalidInput("max_spread_along needs a 2D grid and axis 0 or 1");
    const int n0 = g.axes[0].n_points, n1 = g.axes[1].n_points;
    const int outer = along == 0 ? n1 : n0, inner = along == 0 ? n0 : n1;
    double spread = 0.0;
    for (int o = 0; o < outer; ++o) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int i = 0; i < inner; ++i) {
            const auto &r = g.rows[static_cast<size_t>(along == 0 ? i * n1 + o : o * n1 + i)];
            if (!r.ok()) continue;
            lo = std::min(lo, r.fidelity);
            hi = std::max(hi, r.fidelity);
        }
        if (hi >= lo) spread = std::max(spread, hi - lo);
    }
    return spread;
}

/// Fidelity column of a 1D grid (failed rows skipped) paired with its axis values.
inline std::pair<std::vector<double>, std::vector<double>> curve_of(const SweepGrid &g) {
    std::pair<std::vector<double>, std::vector<double>> xy;
    for (const auto &r : g.rows)
        if (r.ok()) {
            xy.first.push_back(r.axis_values[0]);
            xy.second.push_back(r.fidelity);
        }
    return xy;
}

}  // namespace tqgate

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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tqgate/io.hpp"

namespace tqgate {

/// Problems with the configuration itself; maps to exit code 1.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class RunMode { kGate, kSweep1d, kSweep2d, kEffective, kThreshold, kTruncation, kRamp };

inline std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::kGate: return "gate";
        case RunMode::kSweep1d: return "sweep1d";
        case RunMode::kSweep2d: return "sweep2d";
        case RunMode::kEffective: return "effective";
        case RunMode::kThreshold: return "threshold";
        case RunMode::kTruncation: return "truncation";
        case RunMode::kRamp: return "ramp";
    }
    return "?";
}

inline RunMode run_mode_from_string(const std::string &s) {
    for (auto m : {RunMode::kGate, RunMode::kSweep1d, RunMode::kSweep2d, RunMode::kEffective, RunMode::kThreshold,
                   RunMode::kTruncation, RunMode::kRamp})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown mode '" + s + "'");
}

inline const std::vector<double> &default_tau_d_list() {
    static const std::vector<double> v = {0.0, 5.0, 10.0, 20.0, 40.0};
    return v;
}

struct RunConfig {
    RunMode mode = RunMode::kGate;
    SystemSpec system = DirectSystemSpec{};
    GateKind gate = GateKind::kIswap;
    double tau_d = 0.0;
    double dt = kDefaultDt;
    double park_scale = kDefaultParkScale;
    std::optional<double> t_g;  ///< gate mode only; defaults to the resonance relation
    bool lock_resonance = true;
    bool tie_anharmonicities = false;
    std::vector<SweepAxis> axes;
    std::optional<double> threshold_level;
    std::vector<int> n_levels_list;
    std::vector<double> tau_d_list;
    int detrend_degree = 3;
    std::string output = "out";

    SweepBase sweep_base() const {
        SweepBase b;
        b.system = system;
        b.gate = gate;
        b.tau_d = tau_d;
        b.dt = dt;
        b.park_scale = park_scale;
        b.lock_resonance = lock_resonance;
        b.tie_anharmonicities = tie_anharmonicities;
        return b;
    }
};

namespace detail {

inline void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto &[k, v] : j.items())
        if (!allowed.count(k)) throw ConfigError("unknown field '" + k + "' in " + where);
}

inline const json &require(const json &j, const std::string &key, const std::string &where) {
    if (!j.contains(key)) throw ConfigError("missing field '" + key + "' in " + where);
    return j.at(key);
}

inline double number(const json &j, const std::string &where) {
    if (!j.is_number()) throw ConfigError(where + " must be a number");
    return j.get<double>();
}

inline int integer(const json &j, const std::string &where) {
    if (!j.is_number_integer()) throw ConfigError(where + " must be an integer");
    return j.get<int>();
}

inline QubitSpec parse_qubit(const json &j, const std::string &where) {
    check_keys(j, {"freq", "anharm", "n_levels"}, where);
    QubitSpec q;
    q.freq = number(require(j, "freq", where), where + ".freq");
    q.anharm = number(require(j, "anharm", where), where + ".anharm");
    if (j.contains("n_levels")) q.n_levels = integer(j.at("n_levels"), where + ".n_levels");
    return q;
}

inline SystemSpec parse_system(const json &j) {
    const std::string where = "system";
    if (!j.is_object()) throw ConfigError("system must be a JSON object");
    const json &type = require(j, "type", where);
    if (!type.is_string()) throw ConfigError("system.type must be a string");
    if (type == "direct") {
        check_keys(j, {"type", "qubit_a", "qubit_b", "g"}, where);
        DirectSystemSpec s;
        s.qubit_a = parse_qubit(require(j, "qubit_a", where), "system.qubit_a");
        s.qubit_b = parse_qubit(require(j, "qubit_b", where), "system.qubit_b");
        if (j.contains("g")) s.g = number(j.at("g"), "system.g");
        return s;
    }
    if (type == "indirect") {
        check_keys(j, {"type", "qubit_a", "qubit_b", "cavity_freq", "g_qc", "n_photons"}, where);
        IndirectSystemSpec s;
        s.qubit_a = parse_qubit(require(j, "qubit_a", where), "system.qubit_a");
        s.qubit_b = parse_qubit(require(j, "qubit_b", where), "system.qubit_b");
        s.cavity_freq = number(require(j, "cavity_freq", where), "system.cavity_freq");
        if (j.contains("g_qc")) s.g_qc = number(j.at("g_qc"), "system.g_qc");
        if (j.contains("n_photons")) s.n_photons = integer(j.at("n_photons"), "system.n_photons");
        return s;
    }
    throw ConfigError("system.type must be 'direct' or 'indirect'");
}

inline SweepAxis parse_axis(const json &j, const std::string &where) {
    check_keys(j, {"name", "start", "stop", "n_points"}, where);
    SweepAxis a;
    const json &name = require(j, "name", where);
    if (!name.is_string()) throw ConfigError(where + ".name must be a string");
    try {
        a.name = axis_name_from_string(name.get<std::string>());
    } catch (const InvalidInput &e) {
        throw ConfigError(e.what());
    }
    a.start = number(require(j, "start", where), where + ".start");
    a.stop = number(require(j, "stop", where), where + ".stop");
    a.n_points = integer(require(j, "n_points", where), where + ".n_points");
    return a;
}

}  // namespace detail

/// Strict parse: unknown fields anywhere are rejected, mode-specific fields are required.
inline RunConfig parse_config(const json &j) {
    using namespace detail;
    check_keys(j, {"mode", "system", "gate", "schedule", "sweep", "axes", "threshold", "n_levels_list", "tau_d_list",
                   "output"},
               "config");
    RunConfig c;
    const json &mode = require(j, "mode", "config");
    if (!mode.is_string()) throw ConfigError("mode must be a string");
    c.mode = run_mode_from_string(mode.get<std::string>());
    c.system = parse_system(require(j, "system", "config"));

    if (c.mode != RunMode::kEffective || j.contains("gate")) {
        const json &gate = require(j, "gate", "config");
        if (!gate.is_string()) throw ConfigError("gate must be a string");
        try {
            c.gate = gate_kind_from_string(gate.get<std::string>());
        } catch (const InvalidInput &e) {
            throw ConfigError(e.what());
        }
    }
    if (j.contains("schedule")) {
        const json &s = j.at("schedule");
        check_keys(s, {"tau_d", "dt", "park_scale", "t_g"}, "schedule");
        if (s.contains("tau_d")) c.tau_d = number(s.at("tau_d"), "schedule.tau_d");
        if (s.contains("dt")) c.dt = number(s.at("dt"), "schedule.dt");
        if (s.contains("park_scale")) c.park_scale = number(s.at("park_scale"), "schedule.park_scale");
        if (s.contains("t_g")) c.t_g = number(s.at("t_g"), "schedule.t_g");
    }
    if (j.contains("sweep")) {
        const json &s = j.at("sweep");
        check_keys(s, {"lock_resonance", "tie_anharmonicities", "detrend_degree"}, "sweep");
        if (s.contains("lock_resonance")) {
            if (!s.at("lock_resonance").is_boolean()) throw ConfigError("sweep.lock_resonance must be a boolean");
            c.lock_resonance = s.at("lock_resonance").get<bool>();
        }
        if (s.contains("tie_anharmonicities")) {
            if (!s.at("tie_anharmonicities").is_boolean())
                throw ConfigError("sweep.tie_anharmonicities must be a boolean");
            c.tie_anharmonicities = s.at("tie_anharmonicities").get<bool>();
        }
        if (s.contains("detrend_degree")) c.detrend_degree = integer(s.at("detrend_degree"), "sweep.detrend_degree");
    }
    if (j.contains("axes")) {
        if (!j.at("axes").is_array()) throw ConfigError("axes must be an array");
        for (size_t i = 0; i < j.at("axes").size(); ++i)
            c.axes.push_back(parse_axis(j.at("axes")[i], "axes[" + std::to_string(i) + "]"));
    }
    if (j.contains("threshold")) {
        const json &t = j.at("threshold");
        check_keys(t, {"level"}, "threshold");
        c.threshold_level = number(require(t, "level", "threshold"), "threshold.level");
    }
    if (j.contains("n_levels_list")) {
        if (!j.at("n_levels_list").is_array()) throw ConfigError("n_levels_list must be an array");
        for (const auto &v : j.at("n_levels_list")) c.n_levels_list.push_back(integer(v, "n_levels_list[]"));
    }
    if (j.contains("tau_d_list")) {
        if (!j.at("tau_d_list").is_array()) throw ConfigError("tau_d_list must be an array");
        for (const auto &v : j.at("tau_d_list")) c.tau_d_list.push_back(number(v, "tau_d_list[]"));
    }
    if (j.contains("output")) {
        if (!j.at("output").is_string()) throw ConfigError("output must be a string");
        c.output = j.at("output").get<std::string>();
    }
    return c;
}

/// Checks that do not need any numerics. Raises ConfigError.
inline void validate_config(const RunConfig &c) {
    try {
        validate(c.system);
        if (!(c.dt > 0.0)) throw ConfigError("schedule.dt must be > 0");
        if (!(c.tau_d >= 0.0)) throw ConfigError("schedule.tau_d must be >= 0");
        if (!(c.park_scale > 0.0)) throw ConfigError("schedule.park_scale must be > 0");
        if (c.t_g && !(*c.t_g > 0.0)) throw ConfigError("schedule.t_g must be > 0");
        const size_t want_axes = c.mode == RunMode::kSweep2d ? 2
                                 : (c.mode == RunMode::kGate || c.mode == RunMode::kEffective) ? 0
                                                                                                 : 1;
        if (c.axes.size() != want_axes)
            throw ConfigError("mode " + to_string(c.mode) + " needs exactly " + std::to_string(want_axes) + " axes");
        if (want_axes > 0) validate_axes(c.sweep_base(), c.axes);
        if (c.mode == RunMode::kEffective && !is_indirect(c.system))
            throw ConfigError("mode effective needs an indirect system");
        if (c.mode == RunMode::kThreshold && !c.threshold_level) throw ConfigError("mode threshold needs threshold.level");
        if (c.mode == RunMode::kTruncation && c.n_levels_list.empty())
            throw ConfigError("mode truncation needs n_levels_list");
        for (int n : c.n_levels_list)
            if (n < 2) throw ConfigError("n_levels_list entries must be >= 2");
        for (double t : c.tau_d_list)
            if (!(t >= 0.0)) throw ConfigError("tau_d_list entries must be >= 0");
        if (c.detrend_degree < 0) throw ConfigError("sweep.detrend_degree must be >= 0");
    } catch (const InvalidInput &e) {
        throw ConfigError(e.what());
    }
}

/// Everything a run produces, before it touches the filesystem.
struct Artifacts {
    std::string csv;
    json summary;
    std::string plot;
};

namespace detail {

inline json row_or_null(const SweepGrid *g, const SweepRow *r) { return r ? to_json(*r, *g) : json(nullptr); }

inline json grid_summary(const std::vector<SweepGrid> &grids, const RunConfig &c) {
    json curves = json::array();
    size_t rows = 0, failed = 0;
    const SweepGrid *best_g = nullptr, *worst_g = nullptr;
    const SweepRow *best = nullptr, *worst = nullptr;
    for (const auto &g : grids) {
        json curve;
        for (const auto &t : g.tags) curve[t.first] = t.second;
        const SweepRow *cb = nullptr, *cw = nullptr;
        for (const auto &r : g.rows) {
            ++rows;
            if (!r.ok()) {
                ++failed;
                continue;
            }
            if (!cb || r.fidelity > cb->fidelity) cb = &r;
            if (!cw || r.fidelity < cw->fidelity) cw = &r;
        }
        curve["best"] = row_or_null(&g, cb);
        curve["worst"] = row_or_null(&g, cw);
        if (cb && (!best || cb->fidelity > best->fidelity)) best = cb, best_g = &g;
        if (cw && (!worst || cw->fidelity < worst->fidelity)) worst = cw, worst_g = &g;
        if (g.axes.size() == 1) {
            if (c.threshold_level) {
                try {
                    curve["threshold"] = to_json(threshold(g, *c.threshold_level));
                } catch (const InvalidInput &e) {
                    curve["threshold"] = {{"level", *c.threshold_level}, {"crossed", false}, {"value", nullptr},
                                          {"t_g_ns", nullptr}, {"evaluations", 0}, {"note", e.what()}};
                }
            }
            const auto [xs, ys] = curve_of(g);
            if (xs.size() >= static_cast<size_t>(c.detrend_degree) + 2)
                curve["oscillation_amplitude"] = oscillation_amplitude(xs, ys, c.detrend_degree);
        }
        if (g.axes.size() == 2)
            for (size_t a = 0; a < 2; ++a) curve["max_spread_along"][to_string(g.axes[a].name)] = max_spread_along(g, a);
        curves.push_back(curve);
    }
    return {{"rows", rows},
            {"failed", failed},
            {"best", row_or_null(best_g, best)},
            {"worst", row_or_null(worst_g, worst)},
            {"curves", curves}};
}

}  // namespace detail

inline json config_echo(const RunConfig &c) {
    json j = {{"mode", to_string(c.mode)},
              {"system", to_json(c.system)},
              {"gate", to_string(c.gate)},
              {"schedule", {{"tau_d", c.tau_d}, {"dt", c.dt}, {"park_scale", c.park_scale}}}};
    if (c.t_g) j["schedule"]["t_g"] = *c.t_g;
    if (!c.axes.empty()) {
        j["axes"] = json::array();
        for (const auto &a : c.axes)
            j["axes"].push_back({{"name", to_string(a.name)}, {"start", a.start}, {"stop", a.stop}, {"n_points", a.n_points}});
    }
    return j;
}

/// Runs the configured computation. Raises ConfigError, InvalidInput or NumericalError.
inline Artifacts execute(const RunConfig &c, int jobs = 1, const std::string &csv_name = "results.csv") {
    validate_config(c);
    Artifacts out;
    out.summary = config_echo(c);
    const std::string title = to_string(c.mode) + " " + to_string(c.gate);

    switch (c.mode) {
        case RunMode::kEffective: {
            const auto &spec = std::get<IndirectSystemSpec>(c.system);
            const auto eff = effective_couplings(spec);
            out.summary["result"] = to_json(eff);
            out.csv = "g_eff_1,g_eff_2,g_eff_3,g_eff_4,dressed_freq_a1,dressed_freq_b1,dressed_freq_a2,"
                      "dressed_freq_b2,detuning_a,detuning_b\n";
            for (double v : {eff.g_eff_1, eff.g_eff_2, eff.g_eff_3, eff.g_eff_4, eff.dressed_freq_a1,
                             eff.dressed_freq_b1, eff.dressed_freq_a2, eff.dressed_freq_b2, eff.detuning_a})
                out.csv += format_double(v) + ",";
            out.csv += format_double(eff.detuning_b) + "\n";
            out.plot = "# gnuplot script; run from the directory containing " + csv_name +
                       "\nset datafile separator ','\nset style data histograms\nset style fill solid\n"
                       "set ylabel 'GHz'\nplot '" + csv_name + "' using 1:xtic('g_eff_1') title 'g_eff_1', '' using 2 "
                       "title 'g_eff_2', '' using 3 title 'g_eff_3', '' using 4 title 'g_eff_4'\n";
            return out;
        }
        case RunMode::kGate: {
            const double t_g = c.t_g ? *c.t_g : resonant_gate_time(c.system, c.gate);
            const auto schedule = PulseSchedule::trapezoid(c.tau_d, t_g, c.park_scale);
            const GateResult r = run_gate(c.system, GateTarget::make(c.gate), schedule, c.dt);
            out.summary["result"] = to_json(r);
            out.summary["result"]["t_g_ns"] = t_g;
            SweepGrid g;
            g.base = c.sweep_base();
            SweepRow row;
            row.fidelity = r.fidelity;
            row.t_g = t_g;
            row.leakage = r.leakage;
            row.theta_a = r.theta_a;
            row.theta_b = r.theta_b;
            row.theta_global = r.theta_global;
            g.rows.push_back(row);
            out.csv = csv_string({g});
            out.plot = "# gnuplot script; run from the directory containing " + csv_name +
                       "\nset datafile separator ','\nset yrange [0:1]\nset ylabel 'fidelity'\n"
                       "plot '" + csv_name + "' every ::1 using 0:1 with points pt 7 title '" + title + "'\n";
            return out;
        }
        default: break;
    }

    std::vector<SweepGrid> grids;
    const SweepBase base = c.sweep_base();
    if (c.mode == RunMode::kTruncation) {
        grids = truncation_study(base, c.n_levels_list, c.axes.front(), jobs);
    } else if (c.mode == RunMode::kRamp) {
        grids = ramp_study(base, c.tau_d_list.empty() ? default_tau_d_list() : c.tau_d_list, c.axes.front(), jobs);
    } else {
        grids.push_back(sweep(base, c.axes, jobs));
    }
    out.summary["result"] = detail::grid_summary(grids, c);
    out.csv = csv_string(grids);
    out.plot = plot_script(grids, csv_name, title);
    return out;
}

/// Checks the result section of an emitted summary against the schema for its mode.
inline void validate_summary(const json &s) {
    auto need = [](const json &j, const std::string &k, auto pred, const std::string &what) {
        if (!j.is_object() || !j.contains(k) || !pred(j.at(k))) throw ConfigError("summary: '" + k + "' " + what);
    };
    auto is_num = [](const json &v) { return v.is_number(); };
    auto is_num_or_null = [](const json &v) { return v.is_number() || v.is_null(); };
    auto is_obj = [](const json &v) { return v.is_object(); };
    auto is_arr = [](const json &v) { return v.is_array(); };
    auto is_str = [](const json &v) { return v.is_string(); };
    need(s, "mode", is_str, "must be a string");
    need(s, "system", is_obj, "must be an object");
    need(s, "result", is_obj, "must be an object");
    detail::parse_system(s.at("system"));
    const RunMode mode = run_mode_from_string(s.at("mode").get<std::string>());
    const json &r = s.at("result");
    if (mode == RunMode::kEffective) {
        for (const char *k : {"g_eff_1", "g_eff_2", "g_eff_3", "g_eff_4", "dressed_freq_a1", "dressed_freq_b1",
                              "dressed_freq_a2", "dressed_freq_b2", "detuning_a", "detuning_b"})
            need(r, k, is_num, "must be a number");
        return;
    }
    if (mode == RunMode::kGate) {
        for (const char *k : {"fidelity", "theta_a", "theta_b", "theta_global", "leakage", "t_g_ns"})
            need(r, k, is_num, "must be a number");
        need(r, "projected_block", is_arr, "must be an array");
        const double f = r.at("fidelity").get<double>();
        if (f < 0.0 || f > 1.0) throw ConfigError("summary: fidelity outside [0, 1]");
        return;
    }
    need(r, "rows", is_num, "must be a number");
    need(r, "failed", is_num, "must be a number");
    need(r, "curves", is_arr, "must be an array");
    for (const auto &curve : r.at("curves")) {
        if (!curve.contains("best") || !curve.contains("worst")) throw ConfigError("summary: curve lacks best/worst");
        for (const char *k : {"best", "worst"}) {
            if (curve.at(k).is_null()) continue;
            for (const char *col : {"fidelity", "t_g_ns", "leakage"}) need(curve.at(k), col, is_num_or_null, "bad");
            need(curve.at(k), "status", is_str, "must be a string");
        }
        if (curve.contains("threshold")) {
            need(curve.at("threshold"), "level", is_num, "must be a number");
            need(curve.at("threshold"), "value", is_num_or_null, "must be a number or null");
        }
    }
}

/// Single-line JSON diagnostic for the error stream.
inline std::string diagnostic(const std::string &kind, const std::string &message) {
    return json{{"error", kind}, {"message", message}}.dump();
}

struct ArtifactNames {
    std::string csv = "results.csv";
    std::string summary = "summary.json";
    std::string plot = "plot.gp";
};

inline void write_artifacts(const Artifacts &a, const std::filesystem::path &dir, const ArtifactNames &names) {
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string &name, const std::string &body) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        f << body;
    };
    put(names.csv, a.csv);
    put(names.summary, a.summary.dump(2) + "\n");
    put(names.plot, a.plot);
}

inline const std::vector<std::string> &figure_ids() {
    static const std::vector<std::string> ids = {"fig3a", "fig3b", "fig4a", "fig4b", "fig5",
                                                 "fig6a", "fig6b", "fig7a", "fig7b"};
    return ids;
}

namespace presets {

/// Direct pair, equal frequencies, iSWAP.
inline DirectSystemSpec iswap_direct(int n_levels = 3) {
    return {{5.5, 0.15, n_levels}, {5.5, 0.1, n_levels}, 0.011};
}

/// Direct pair tuned to |11> <-> |02>, CZ.
inline DirectSystemSpec cz_direct(int n_levels = 3) {
    return {{7.16, 0.087, n_levels}, {7.16 + 0.114, 0.114, n_levels}, 0.0091};
}

/// Qubit-cavity-qubit system tuned to |11> <-> |02>.
inline IndirectSystemSpec cz_indirect(int n_levels = 3) {
    return {{8.2, 0.2, n_levels}, {8.45, 0.25, n_levels}, 6.9, 0.199, 5};
}

}  // namespace presets

/// Built-in configurations for the reproduction figures.
inline RunConfig figure_config(const std::string &id) {
    RunConfig c;
    c.output = id;
    if (id == "fig3a") {
        c.mode = RunMode::kThreshold;
        c.system = presets::iswap_direct();
        c.gate = GateKind::kIswap;
        c.axes = {{AxisName::kGOverDeltaB, 0.01, 0.5, 50}};
        c.threshold_level = 0.99;
    } else if (id == "fig3b") {
        c.mode = RunMode::kRamp;
        c.system = presets::cz_direct();
        c.gate = GateKind::kCz;
        c.axes = {{AxisName::kGOverDeltaB, 0.01, 0.5, 50}};
        c.tau_d_list = default_tau_d_list();
        c.threshold_level = 0.992;
    } else if (id == "fig4a" || id == "fig4b") {
        c.mode = RunMode::kSweep2d;
        auto s = id == "fig4a" ? presets::iswap_direct() : presets::cz_direct();
        s.g = 0.2;
        c.system = s;
        c.gate = id == "fig4a" ? GateKind::kIswap : GateKind::kCz;
        c.axes = {{AxisName::kDeltaAOverG, 1.0, 20.0, 20}, {AxisName::kDeltaBOverG, 1.0, 20.0, 20}};
    } else if (id == "fig5") {
        c.mode = RunMode::kSweep2d;
        c.system = presets::iswap_direct();
        c.gate = GateKind::kIswap;
        c.tie_anharmonicities = true;
        c.axes = {{AxisName::kDeltaBAbs, 0.05, 0.3, 20}, {AxisName::kGAbs, 0.005, 0.1, 20}};
    } else if (id == "fig6a") {
        c.mode = RunMode::kSweep2d;
        auto s = presets::cz_indirect();
        s.g_qc = 0.2;
        c.system = s;
        c.gate = GateKind::kCz;
        c.axes = {{AxisName::kDeltaAOverG, 1.0, 20.0, 20}, {AxisName::kDeltaBOverG, 1.0, 20.0, 20}};
    } else if (id == "fig6b") {
        c.mode = RunMode::kSweep2d;
        c.system = presets::cz_indirect();
        c.gate = GateKind::kCz;
        c.tie_anharmonicities = true;
        c.axes = {{AxisName::kGeffAbs, 0.005, 0.06, 20}, {AxisName::kDeltaBAbs, 0.05, 0.3, 20}};
    } else if (id == "fig7a") {
        c.mode = RunMode::kTruncation;
        c.system = presets::iswap_direct();
        c.gate = GateKind::kIswap;
        c.axes = {{AxisName::kGOverDeltaB, 0.05, 0.5, 46}};
        c.n_levels_list = {3, 4, 5};
        c.threshold_level = 0.99;
    } else if (id == "fig7b") {
        c.mode = RunMode::kTruncation;
        c.system = presets::cz_indirect();
        c.gate = GateKind::kCz;
        c.axes = {{AxisName::kGeffOverDeltaB, 0.02, 0.5, 25}};
        c.n_levels_list = {3, 4, 5};
        c.threshold_level = 0.99;
    } else {
        throw ConfigError("unknown figure id '" + id + "'");
    }
    return c;
}

struct CliOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> figure;
    std::optional<std::string> out_dir;
    std::optional<double> dt;
    int jobs = 1;
};

/// 0 on success, 1 on configuration errors, 2 on numerical failures. Nothing is written on error.
inline int run_cli(const CliOptions &opt, std::ostream &err = std::cerr) {
    RunConfig cfg;
    ArtifactNames names;
    std::filesystem::path dir;
    try {
        if (opt.config_path.has_value() == opt.figure.has_value())
            throw ConfigError("exactly one of --config or --reproduce is required");
        if (opt.jobs < 1) throw ConfigError("--jobs must be >= 1");
        if (opt.config_path) {
            std::ifstream f(*opt.config_path);
            if (!f) throw ConfigError("cannot read config file " + *opt.config_path);
            json j;
            try {
                j = json::parse(f);
            } catch (const json::exception &e) {
                throw ConfigError(std::string("malformed JSON: ") + e.what());
            }
            cfg = parse_config(j);
            dir = opt.out_dir ? *opt.out_dir : cfg.output;
        } else {
            cfg = figure_config(*opt.figure);
            names = {*opt.figure + ".csv", *opt.figure + "_summary.json", *opt.figure + ".gp"};
            dir = opt.out_dir ? *opt.out_dir : std::string(".");
        }
        if (opt.dt) cfg.dt = *opt.dt;
        validate_config(cfg);
    } catch (const ConfigError &e) {
        err << diagnostic("config", e.what()) << '\n';
        return 1;
    } catch (const json::exception &e) {
        err << diagnostic("config", e.what()) << '\n';
        return 1;
    }

    Artifacts a;
    try {
        a = execute(cfg, opt.jobs, names.csv);
        for (const auto &w : a.summary["result"].value("warnings", json::array()))
            err << json{{"warning", w}}.dump() << '\n';
    } catch (const ConfigError &e) {
        err << diagnostic("config", e.what()) << '\n';
        return 1;
    } catch (const InvalidInput &e) {
        err << diagnostic("config", e.what()) << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << diagnostic("numerical", e.what()) << '\n';
        return 2;
    }
    try {
        write_artifacts(a, dir, names);
    } catch (const std::exception &e) {
        err << diagnostic("io", e.what()) << '\n';
        return 2;
    }
    return 0;
}

}  // namespace tqgate

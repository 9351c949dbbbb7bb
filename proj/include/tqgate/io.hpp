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

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tqgate/sweep.hpp"

namespace tqgate {

using json = nlohmann::json;

/// Shortest decimal string that parses back to exactly `x`; "nan"/"inf" for non-finite values.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out + "\"";
}

inline const std::vector<std::string> &result_columns() {
    static const std::vector<std::string> cols = {"fidelity", "t_g_ns", "leakage", "theta_a",
                                                  "theta_b", "theta_global", "status"};
    return cols;
}

/// Header: tag columns, axis columns, then result_columns(). All grids must share a layout.
inline std::vector<std::string> csv_header(const SweepGrid &g) {
    std::vector<std::string> h;
    for (const auto &t : g.tags) h.push_back(t.first);
    for (const auto &a : g.axes) h.push_back(to_string(a.name));
    for (const auto &c : result_columns()) h.push_back(c);
    return h;
}

inline void write_csv(std::ostream &os, const std::vector<SweepGrid> &grids) {
    if (grids.empty()) return;
    const auto header = csv_header(grids.front());
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto &g : grids) {
        if (csv_header(g) != header) throw InvalidInput("write_csv: grids have different column layouts");
        for (const auto &r : g.rows) {
            for (const auto &t : g.tags) os << format_double(t.second) << ',';
            for (double v : r.axis_values) os << format_double(v) << ',';
            os << format_double(r.fidelity) << ',' << format_double(r.t_g) << ',' << format_double(r.leakage)
               << ',' << format_double(r.theta_a) << ',' << format_double(r.theta_b) << ','
               << format_double(r.theta_global) << ',' << csv_escape(r.status) << '\n';
        }
    }
}

inline std::string csv_string(const std::vector<SweepGrid> &grids) {
    std::ostringstream os;
    write_csv(os, grids);
    return os.str();
}

// ---- JSON ---------------------------------------------------------------------------------

inline json to_json(const QubitSpec &q) { return {{"freq", q.freq}, {"anharm", q.anharm}, {"n_levels", q.n_levels}}; }

inline json to_json(const SystemSpec &s) {
    if (const auto *d = std::get_if<DirectSystemSpec>(&s))
        return {{"type", "direct"}, {"qubit_a", to_json(d->qubit_a)}, {"qubit_b", to_json(d->qubit_b)}, {"g", d->g}};
    const auto &i = std::get<IndirectSystemSpec>(s);
    return {{"type", "indirect"},         {"qubit_a", to_json(i.qubit_a)}, {"qubit_b", to_json(i.qubit_b)},
            {"cavity_freq", i.cavity_freq}, {"g_qc", i.g_qc},                {"n_photons", i.n_photons}};
}

inline json to_json(const EffectiveCouplings &c) {
    return {{"g_eff_1", c.g_eff_1},
            {"g_eff_2", c.g_eff_2},
            {"g_eff_3", c.g_eff_3},
            {"g_eff_4", c.g_eff_4},
            {"dressed_freq_a1", c.dressed_freq_a1},
            {"dressed_freq_b1", c.dressed_freq_b1},
            {"dressed_freq_a2", c.dressed_freq_a2},
            {"dressed_freq_b2", c.dressed_freq_b2},
            {"detuning_a", c.detuning_a},
            {"detuning_b", c.detuning_b}};
}

inline json block_to_json(const Matrix4c &m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const GateResult &r) {
    return {{"fidelity", r.fidelity},
            {"theta_a", r.theta_a},
            {"theta_b", r.theta_b},
            {"theta_global", r.theta_global},
            {"leakage", r.leakage},
            {"projected_block", block_to_json(r.projected_block)},
            {"total_time_ns", r.total_time},
            {"unitarity_defect", r.unitarity_defect},
            {"warnings", r.warnings}};
}

inline json to_json(const SweepRow &r, const SweepGrid &g) {
    json j;
    for (const auto &t : g.tags) j[t.first] = t.second;
    for (size_t i = 0; i < g.axes.size(); ++i) j[to_string(g.axes[i].name)] = r.axis_values[i];
    j["fidelity"] = r.fidelity;
    j["t_g_ns"] = r.t_g;
    j["leakage"] = r.leakage;
    j["theta_a"] = r.theta_a;
    j["theta_b"] = r.theta_b;
    j["theta_global"] = r.theta_global;
    j["status"] = r.status;
    return j;
}

inline json to_json(const ThresholdResult &t) {
    return {{"level", t.level}, {"crossed", t.crossed}, {"value", t.crossed ? json(t.value) : json(nullptr)},
            {"t_g_ns", t.crossed ? json(t.t_g) : json(nullptr)}, {"evaluations", t.evaluations}};
}

// ---- plot scripts -------------------------------------------------------------------------

/// Plain-text gnuplot script plotting fidelity from `csv_name`. One curve per distinct tag value.
inline std::string plot_script(const std::vector<SweepGrid> &grids, const std::string &csv_name,
                               const std::string &title) {
    std::ostringstream os;
    os << "# gnuplot script; run from the directory containing " << csv_name << "\n";
    os << "set datafile separator ','\n";
    os << "set title '" << title << "'\n";
    if (grids.empty()) return os.str();
    const auto &g = grids.front();
    const size_t ntag = g.tags.size();
    const size_t fid_col = ntag + g.axes.size() + 1;
    if (g.axes.size() == 2) {
        os << "set xlabel '" << to_string(g.axes[0].name) << "'\n";
        os << "set ylabel '" << to_string(g.axes[1].name) << "'\n";
        os << "set cblabel 'fidelity'\n";
        os << "set view map\n";
        os << "set dgrid3d " << g.axes[1].n_points << "," << g.axes[0].n_points << "\n";
        os << "set contour base\nset cntrparam levels discrete 0.95, 0.99\n";
        os << "splot '" << csv_name << "' every ::1 using " << ntag + 1 << ":" << ntag + 2 << ":" << fid_col
           << " with pm3d notitle\n";
        return os.str();
    }
    os << "set xlabel '" << to_string(g.axes[0].name) << "'\n";
    os << "set ylabel 'fidelity'\n";
    os << "set key bottom left\n";
    if (ntag == 0) {
        os << "plot '" << csv_name << "' every ::1 using " << ntag + 1 << ":" << fid_col
           << " with linespoints title 'fidelity'\n";
        return os.str();
    }
    os << "plot ";
    for (size_t i = 0; i < grids.size(); ++i) {
        const auto &t = grids[i].tags.front();
        os << (i ? ", \\\n     " : "") << "'" << csv_name << "' every ::1 using ($1 == " << format_double(t.second)
           << " ? $" << ntag + 1 << " : 1/0):" << fid_col << " with linespoints title '" << t.first << " = "
           << format_double(t.second) << "'";
    }
    os << "\n";
    return os.str();
}

}  // namespace tqgate

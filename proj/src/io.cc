// Copyright 2026 The djnmr Authors
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

#include "djnmr/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace djnmr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string fmt(double v) {
    if (!std::isfinite(v)) {
        throw Error("cannot serialize a non-finite number");
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool is_scalar(const Json &j) {
    return !j.is_object() && !j.is_array();
}

void dump_to(const Json &j, std::string &out, size_t indent) {
    std::string pad(indent, ' ');
    std::string inner(indent + 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        size_t k = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++k) {
            out += inner + Json(it.key()).dump() + ": ";
            dump_to(it.value(), out, indent + 2);
            out += k + 1 < j.size() ? ",\n" : "\n";
        }
        out += pad + "}";
    } else if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), is_scalar);
        if (j.empty()) {
            out += "[]";
        } else if (flat) {
            out += "[";
            for (size_t k = 0; k < j.size(); k++) {
                if (k) {
                    out += ", ";
                }
                dump_to(j[k], out, indent);
            }
            out += "]";
        } else {
            out += "[\n";
            for (size_t k = 0; k < j.size(); k++) {
                out += inner;
                dump_to(j[k], out, indent + 2);
                out += k + 1 < j.size() ? ",\n" : "\n";
            }
            out += pad + "]";
        }
    } else if (j.is_number_float()) {
        out += fmt(j.get<double>());
    } else {
        out += j.dump();
    }
}

const Json &field(const Json &j, const char *key) {
    if (!j.is_object()) {
        throw Error(std::string("expected an object holding '") + key + "'");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw Error(std::string("missing field '") + key + "'");
    }
    return *it;
}

double num(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_number()) {
        throw Error(std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

size_t index(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw Error(std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<size_t>();
}

std::vector<double> num_array(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_array()) {
        throw Error(std::string("field '") + key + "' must be an array");
    }
    std::vector<double> out;
    for (const auto &e : v) {
        if (!e.is_number()) {
            throw Error(std::string("field '") + key + "' must hold numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

template <class F>
auto guarded(F f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception &e) {
        throw Error(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw OutputError("cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw OutputError("write to '" + path + "' failed");
    }
}

std::string dump_json(const Json &j) {
    std::string out;
    dump_to(j, out, 0);
    return out + "\n";
}

Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception &e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
}

Json to_json(const SpinSystem &system) {
    Json j;
    j["offsets_hz"] = system.offsets_hz;
    Json jm = Json::array();
    for (size_t a = 0; a < system.n_spins(); a++) {
        Json row = Json::array();
        for (size_t b = 0; b < system.n_spins(); b++) {
            row.push_back(system.j(a, b));
        }
        jm.push_back(row);
    }
    j["j_hz"] = jm;
    j["t1_s"] = system.t1_s;
    j["t2_s"] = system.t2_s;
    Json lw = Json::array();
    for (const auto &v : system.linewidth_hz) {
        lw.push_back(v ? Json(*v) : Json(nullptr));
    }
    j["linewidth_hz"] = lw;
    return j;
}

SpinSystem system_from_json(const Json &j) {
    return guarded([&] {
        SpinSystem s;
        s.offsets_hz = num_array(j, "offsets_hz");
        size_t n = s.offsets_hz.size();
        const Json &jm = field(j, "j_hz");
        if (!jm.is_array() || jm.size() != n) {
            throw Error("'j_hz' must be an n_spins x n_spins array");
        }
        s.couplings_hz = Eigen::MatrixXd::Zero((long)n, (long)n);
        for (size_t a = 0; a < n; a++) {
            if (!jm[a].is_array() || jm[a].size() != n) {
                throw Error("'j_hz' must be an n_spins x n_spins array");
            }
            for (size_t b = 0; b < n; b++) {
                if (!jm[a][b].is_number()) {
                    throw Error("'j_hz' must hold numbers");
                }
                s.couplings_hz((long)a, (long)b) = jm[a][b].get<double>();
            }
        }
        s.t1_s = num_array(j, "t1_s");
        s.t2_s = num_array(j, "t2_s");
        s.linewidth_hz.assign(n, std::nullopt);
        if (j.contains("linewidth_hz")) {
            const Json &lw = j["linewidth_hz"];
            if (!lw.is_array() || lw.size() != n) {
                throw Error("'linewidth_hz' must have one entry per spin");
            }
            for (size_t a = 0; a < n; a++) {
                if (lw[a].is_number()) {
                    s.linewidth_hz[a] = lw[a].get<double>();
                } else if (!lw[a].is_null()) {
                    throw Error("'linewidth_hz' entries must be numbers or null");
                }
            }
        }
        s.validate();
        return s;
    });
}

Json to_json(const GateOp &op) {
    return std::visit(
        overloaded{
            [](const RotXY &o) {
                return Json{{"op", "rotxy"}, {"spin", o.spin}, {"phase_deg", o.phase_deg}, {"angle_deg", o.angle_deg}};
            },
            [](const RotZ &o) { return Json{{"op", "rotz"}, {"spin", o.spin}, {"angle_deg", o.angle_deg}}; },
            [](const ScalDelay &o) { return Json{{"op", "scal"}, {"i", o.i}, {"j", o.j}, {"jt", o.jt}}; },
            [](const TotalDelay &o) { return Json{{"op", "total_delay"}, {"t_s", o.t_s}}; },
            [](const Cnot &o) { return Json{{"op", "cnot"}, {"control", o.control}, {"target", o.target}}; },
            [](const Swap &o) { return Json{{"op", "swap"}, {"i", o.i}, {"k", o.k}}; },
            [](const QuadGate &o) { return Json{{"op", "quad"}, {"i", o.i}, {"j", o.j}}; },
            [](const LinGate &o) { return Json{{"op", "lin"}, {"i", o.i}}; },
        },
        op);
}

GateOp gate_from_json(const Json &j) {
    return guarded([&]() -> GateOp {
        const Json &tag = field(j, "op");
        if (!tag.is_string()) {
            throw Error("'op' must be a string");
        }
        std::string op = tag.get<std::string>();
        if (op == "rotxy") {
            return RotXY{index(j, "spin"), num(j, "phase_deg"), num(j, "angle_deg")};
        }
        if (op == "rotz") {
            return RotZ{index(j, "spin"), num(j, "angle_deg")};
        }
        if (op == "scal") {
            return ScalDelay{index(j, "i"), index(j, "j"), num(j, "jt")};
        }
        if (op == "total_delay") {
            return TotalDelay{num(j, "t_s")};
        }
        if (op == "cnot") {
            return Cnot{index(j, "control"), index(j, "target")};
        }
        if (op == "swap") {
            return Swap{index(j, "i"), index(j, "k")};
        }
        if (op == "quad") {
            return QuadGate{index(j, "i"), index(j, "j")};
        }
        if (op == "lin") {
            return LinGate{index(j, "i")};
        }
        throw Error("unknown op '" + op + "'");
    });
}

Json to_json(const GateSequence &seq) {
    Json a = Json::array();
    for (const auto &op : seq) {
        a.push_back(to_json(op));
    }
    return a;
}

GateSequence sequence_from_json(const Json &j) {
    if (!j.is_array()) {
        throw Error("gate sequence must be an array");
    }
    GateSequence seq;
    for (const auto &e : j) {
        seq.push_back(gate_from_json(e));
    }
    return seq;
}

Json to_json(const PulseProgram &program) {
    Json active = Json::array();
    for (const auto &op : program.active) {
        if (auto *r = std::get_if<RotXY>(&op)) {
            active.push_back(to_json(GateOp{*r}));
        } else {
            const auto &d = std::get<RefocusedDelay>(op);
            active.push_back(Json{{"op", "refocused_delay"},
                                  {"i", d.i},
                                  {"j", d.j},
                                  {"jt", d.jt},
                                  {"total_t_s", d.total_t_s},
                                  {"refocus_spin", d.refocus_spin},
                                  {"refocus_phase_deg", {d.refocus_phase_deg[0], d.refocus_phase_deg[1]}},
                                  {"override_t_s", d.override_t_s ? Json(*d.override_t_s) : Json(nullptr)}});
        }
    }
    Json j;
    j["n_spins"] = program.n_spins;
    j["active"] = active;
    j["passive_phases_deg"] = program.passive_phases_deg;
    j["duration_s"] = program.duration_s;
    j["zeeman_corrected"] = program.zeeman_corrected;
    j["timing"] = Json{{"pulse_s", program.timing.pulse_s},
                       {"gap_s", program.timing.gap_s},
                       {"self_phase",
                        {{"fraction", program.timing.self_phase.fraction},
                         {"pre_share", program.timing.self_phase.pre_share}}}};
    j["metadata"] = Json{{"source", program.source}, {"realizations", program.realizations}};
    return j;
}

PulseProgram program_from_json(const Json &j) {
    return guarded([&] {
        PulseProgram p;
        p.n_spins = index(j, "n_spins");
        const Json &active = field(j, "active");
        if (!active.is_array()) {
            throw Error("'active' must be an array");
        }
        for (const auto &e : active) {
            std::string op = field(e, "op").get<std::string>();
            if (op == "rotxy") {
                p.active.push_back(std::get<RotXY>(gate_from_json(e)));
            } else if (op == "refocused_delay") {
                RefocusedDelay d{};
                d.i = index(e, "i");
                d.j = index(e, "j");
                d.jt = num(e, "jt");
                d.total_t_s = num(e, "total_t_s");
                d.refocus_spin = index(e, "refocus_spin");
                auto ph = num_array(e, "refocus_phase_deg");
                if (ph.size() != 2) {
                    throw Error("'refocus_phase_deg' must hold two phases");
                }
                d.refocus_phase_deg = {ph[0], ph[1]};
                if (e.contains("override_t_s") && !e["override_t_s"].is_null()) {
                    d.override_t_s = num(e, "override_t_s");
                }
                p.active.push_back(d);
            } else {
                throw Error("active section op '" + op + "' is not a rotation or refocused delay");
            }
        }
        p.passive_phases_deg = num_array(j, "passive_phases_deg");
        p.zeeman_corrected = field(j, "zeeman_corrected").get<bool>();
        const Json &t = field(j, "timing");
        p.timing.pulse_s = num_array(t, "pulse_s");
        p.timing.gap_s = num(t, "gap_s");
        if (t.contains("self_phase")) {
            p.timing.self_phase.fraction = num(t["self_phase"], "fraction");
            p.timing.self_phase.pre_share = num(t["self_phase"], "pre_share");
        }
        if (j.contains("metadata")) {
            const Json &m = j["metadata"];
            if (m.contains("source")) {
                p.source = m["source"].get<std::string>();
            }
            if (m.contains("realizations")) {
                p.realizations = m["realizations"].get<std::vector<std::string>>();
            }
        }
        p.validate();
        p.duration_s = program_duration(p);
        return p;
    });
}

Json to_json(const Fid &fid) {
    std::vector<double> re, im;
    for (const auto &v : fid.samples) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return Json{{"dwell_s", fid.dwell_s}, {"phi_acq_deg", fid.phi_acq_deg}, {"re", re}, {"im", im}};
}

Fid fid_from_json(const Json &j) {
    return guarded([&] {
        Fid f;
        f.dwell_s = num(j, "dwell_s");
        f.phi_acq_deg = num(j, "phi_acq_deg");
        auto re = num_array(j, "re");
        auto im = num_array(j, "im");
        if (re.size() != im.size() || re.empty()) {
            throw Error("FID 're' and 'im' must be non-empty and equally long");
        }
        if (!(f.dwell_s > 0)) {
            throw Error("FID dwell time must be positive");
        }
        for (size_t k = 0; k < re.size(); k++) {
            f.samples.emplace_back(re[k], im[k]);
        }
        return f;
    });
}

Json to_json(const DoubletFit &fit) {
    return Json{{"s", fit.s},
                {"linewidth_rad_s", fit.linewidth_rad_s},
                {"j_hz", fit.j_hz},
                {"r_a", fit.r_a},
                {"du_max", fit.du_max}};
}

Json to_json(const FunctionSpec &spec) {
    Json j;
    j["name"] = spec.name;
    j["table"] = spec.bitstring();
    j["polynomial"] = spec.polynomial();
    j["kind"] = kind_name(classify_kind(spec.truth_table));
    if (spec.n_bits == 3) {
        auto c = coeffs3(spec);
        j["coeffs"] = Json{{"a", c[0]}, {"a2", c[1]}, {"a1", c[2]}, {"a0", c[3]},
                           {"a21", c[4]}, {"a20", c[5]}, {"a10", c[6]}, {"a210", spec.cubic()}};
        if (classify_kind(spec.truth_table) != Kind::Neither) {
            FunctionClass fc = canonical_class(spec);
            j["class_id"] = fc.class_id;
            j["active_class"] = fc.active_class;
            j["permutation"] = fc.permutation;
            j["representative_permutation"] = fc.representative_permutation;
        }
    }
    return j;
}

Json to_json(const MultipletReport &report) {
    Json ms = Json::array();
    for (const auto &m : report.multiplets) {
        Json lines = Json::array();
        for (const auto &l : m.lines) {
            lines.push_back(Json{{"freq_hz", l.freq_hz},
                                 {"amplitude", l.amplitude},
                                 {"phase_class", l.phase_class == PhaseClass::Up ? "up" : "inverted"}});
        }
        ms.push_back(Json{{"spin", m.spin}, {"class", m.multiplet_class}, {"lines", lines}});
    }
    return Json{{"multiplets", ms}, {"unclassifiable", report.unclassifiable}};
}

std::string spectrum_to_csv(const Spectrum &spec) {
    spec.validate();
    std::string out = "freq_hz,re,im\n";
    for (size_t k = 0; k < spec.freqs_hz.size(); k++) {
        out += fmt(spec.freqs_hz[k]) + "," + fmt(spec.values[k].real()) + "," + fmt(spec.values[k].imag()) + "\n";
    }
    return out;
}

Spectrum spectrum_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error("spectrum CSV is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "freq_hz,re,im") {
        throw Error("spectrum CSV must start with the header freq_hz,re,im");
    }
    Spectrum s;
    size_t row = 1;
    while (std::getline(in, line)) {
        row++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        double v[3];
        const char *p = line.c_str();
        for (int c = 0; c < 3; c++) {
            char *end = nullptr;
            v[c] = std::strtod(p, &end);
            if (end == p || (c < 2 && *end != ',') || (c == 2 && *end != '\0') || !std::isfinite(v[c])) {
                throw Error("malformed spectrum CSV row " + std::to_string(row));
            }
            p = end + 1;
        }
        s.freqs_hz.push_back(v[0]);
        s.values.emplace_back(v[1], v[2]);
    }
    s.validate();
    return s;
}

}  // namespace djnmr

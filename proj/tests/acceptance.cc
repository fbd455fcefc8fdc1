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

// End-to-end checks, one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "djnmr/compiler.h"
#include "djnmr/functions.h"
#include "djnmr/simulator.h"
#include "djnmr/spectra.h"
#include "fixtures.h"
#include "oracles.h"

using namespace djnmr;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what) {
        if (!cond) {
            if (ok) {
                detail << "failed: ";
            } else {
                detail << "; ";
            }
            detail << what;
            ok = false;
        }
    }
};

oracle::M permutation(size_t n, const std::function<size_t(size_t)> &map) {
    size_t dim = size_t{1} << n;
    oracle::M p = oracle::M::Zero(dim, dim);
    for (size_t x = 0; x < dim; x++) {
        p(map(x), x) = 1;
    }
    return p;
}

Matrix with_passive(const Matrix &u, const std::vector<double> &passive) {
    GateSequence z;
    for (size_t s = 0; s < passive.size(); s++) {
        z.push_back(RotZ{s, passive[s]});
    }
    return sequence_unitary(z, SpinSystem::uncoupled(passive.size())) * u;
}

// ---- 1 ----
void function_algebra(Check &c) {
    auto all = all_admissible();
    std::set<int> balanced_ids;
    size_t balanced = 0;
    const int group[11] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3, 3};
    for (const auto &f : all) {
        c.require(f.cubic() == 0, "cubic term in " + f.bitstring());
        FunctionClass fc = canonical_class(f);
        c.require(fc.class_id >= 0 && fc.class_id <= 10, "unclassified " + f.bitstring());
        if (classify_kind(f.truth_table) == Kind::Balanced) {
            balanced++;
            balanced_ids.insert(fc.class_id);
            c.require(fc.class_id >= 1, "balanced table in constant class " + f.bitstring());
        }
        if (fc.class_id >= 0 && fc.class_id <= 10) {
            c.require(fc.active_class == group[fc.class_id], "active class of " + f.bitstring());
        }
    }
    c.require(balanced == 70, "balanced count " + std::to_string(balanced));
    c.require(balanced_ids.size() == 10, "class count " + std::to_string(balanced_ids.size()));
    c.require(oracle::balanced_class_count() == 10, "brute-force class count");
    c.detail << "70 balanced tables in " << balanced_ids.size() << " classes, active groups {1-3}{4-6}{7,8}{9,10}";
}

// ---- 2 ----
void gate_oracles(Check &c) {
    SpinSystem s = SpinSystem::alanine();
    double worst = 0;
    for (const auto &f : all_admissible()) {
        oracle::M d = oracle::M::Zero(8, 8);
        for (size_t x = 0; x < 8; x++) {
            d(x, x) = f.truth_table[x] ? -1.0 : 1.0;
        }
        worst = std::max(worst, oracle::phase_distance(sequence_unitary(build_uf(f), s), d));
    }
    c.require(worst < 1e-9, "U_f oracle distance " + std::to_string(worst));
    double cn = 0, sw = 0;
    for (size_t a = 0; a < 3; a++) {
        for (size_t b = 0; b < 3; b++) {
            if (a == b) {
                continue;
            }
            oracle::M cnot = permutation(3, [&](size_t x) { return (x >> a) & 1 ? x ^ (size_t{1} << b) : x; });
            oracle::M swap = permutation(3, [&](size_t x) {
                size_t ba = (x >> a) & 1, bb = (x >> b) & 1;
                return (x & ~((size_t{1} << a) | (size_t{1} << b))) | (ba << b) | (bb << a);
            });
            for (CnotSign sign : {CnotSign::Upper, CnotSign::Lower}) {
                cn = std::max(cn, oracle::phase_distance(sequence_unitary(lower_cnot(a, b, sign), s), cnot));
                GateSequence triple = lower_cnots(lower_swap(a, b), {sign, sign, sign});
                sw = std::max(sw, oracle::phase_distance(sequence_unitary(triple, s), swap));
            }
        }
    }
    c.require(cn < 1e-9, "CNOT oracle distance " + std::to_string(cn));
    c.require(sw < 1e-9, "SWAP oracle distance " + std::to_string(sw));
    c.detail << "max distances U_f " << worst << ", CNOT " << cn << ", SWAP " << sw;
}

// ---- 3 ----
void table_one(Check &c) {
    const std::map<std::string, std::map<std::string, double>> table = {
        {"fconst", {{"xEE", -1}, {"ExE", -1}, {"EEx", -1}}},
        {"f1", {{"xEE", 1}, {"ExE", -1}, {"EEx", -1}}},
        {"f2", {{"xEE", 1}, {"ExE", 1}, {"EEx", -1}}},
        {"f3", {{"xEE", 1}, {"ExE", 1}, {"EEx", 1}}},
        {"f4", {{"xzE", -1}, {"zxE", -1}, {"EEx", 1}}},
        {"f5", {{"xzE", 1}, {"zxE", -1}, {"EEx", 1}}},
        {"f6", {{"xzE", 1}, {"zxE", 1}, {"EEx", 1}}},
        {"f7", {{"xzE", 1}, {"zxz", 1}, {"Ezx", -1}}},
        {"f8", {{"xzE", 1}, {"zxz", -1}, {"Ezx", -1}}},
        {"f9", {{"xzz", -1}, {"zxz", -1}, {"zzx", -1}}},
        {"f10", {{"xzz", -1}, {"zxz", 1}, {"zzx", 1}}},
    };
    SpinSystem s = SpinSystem::alanine();
    CompileOptions o;
    o.zeeman_bookkeeping = false;
    double worst = 0;
    for (const auto &[name, want] : table) {
        PulseProgram p = compile(parse_function(name), s, o);
        DensityOperator rho = apply_passive(apply_program(thermal_state(s), p, s, SimMode::Ideal), p.passive_phases_deg);
        ProductExpansion e = product_expansion(rho);
        for (const auto &[key, v] : e.coefficients) {
            auto it = want.find(key);
            double err = std::abs(v - (it == want.end() ? 0.0 : it->second));
            worst = std::max(worst, err);
            if (err > 1e-8) {
                c.require(false, name + " coefficient " + key);
            }
        }
    }
    c.detail << "11 representatives, max coefficient error " << worst;
}

// ---- 4 ----
void compilation_equivalence(Check &c) {
    SpinSystem s = SpinSystem::alanine();
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> coin(0, 1);
    CompileOptions o;
    o.thermal_shortcut = false;
    o.search = false;
    double worst = 0;
    for (int trial = 0; trial < 100; trial++) {
        GateSequence circ = fixtures::random_circuit(rng, 8);
        Matrix want = sequence_unitary(circ, s);
        // Each pass on its own, then the whole driver.
        GateSequence cancelled = cancel_cnot_pairs(circ);
        worst = std::max(worst, oracle::phase_distance(sequence_unitary(cancelled, s), want));
        std::vector<CnotSign> signs;
        for (size_t k = 0; k < count_cnots(cancelled); k++) {
            signs.push_back(coin(rng) ? CnotSign::Lower : CnotSign::Upper);
        }
        GateSequence lowered;
        for (const auto &op : lower_cnots(cancelled, signs)) {
            if (auto *q = std::get_if<QuadGate>(&op)) {
                for (const auto &g : lower_cnots(lower_quad(q->i, q->j), {})) {
                    lowered.push_back(g);
                }
            } else if (auto *l = std::get_if<LinGate>(&op)) {
                for (const auto &g : lower_lin(l->i)) {
                    lowered.push_back(g);
                }
            } else {
                lowered.push_back(op);
            }
        }
        worst = std::max(worst, oracle::phase_distance(sequence_unitary(lowered, s), want));
        GateSequence merged = merge_orthogonal_90(lowered, 3);
        worst = std::max(worst, oracle::phase_distance(sequence_unitary(merged, s), want));
        DeferredZ dz = defer_z(merged, 3);
        worst = std::max(worst, oracle::phase_distance(with_passive(sequence_unitary(dz.seq, s), dz.passive_deg), want));
        DeferredZ all = compile_to_gates(circ, s, o);
        worst = std::max(worst, oracle::phase_distance(with_passive(sequence_unitary(all.seq, s), all.passive_deg), want));
    }
    c.require(worst < 1e-9, "random sequence distance " + std::to_string(worst));

    CompileOptions plain;
    plain.zeeman_bookkeeping = false;
    DeferredZ u20 = compile_to_gates(fixtures::u20_circuit(), s, plain);
    c.require(fixtures::same_up_to_commutation(u20.seq, fixtures::u20_reference(), 3),
              "f9 quad(2,0) section skeleton: " + to_string(u20.seq));
    c.require(u20.passive_deg == fixtures::u20_reference_passive(), "f9 quad(2,0) passive rotations");

    size_t weak = 0;
    for (const auto &f : all_admissible()) {
        for (const auto &op : compile(f, s).active) {
            if (auto *d = std::get_if<RefocusedDelay>(&op)) {
                weak += (d->i == 2 && d->j == 0) || (d->i == 0 && d->j == 2);
            }
        }
    }
    c.require(weak == 0, std::to_string(weak) + " refocused (2,0) delays");
    c.detail << "100 random circuits max distance " << worst << ", skeleton and passive z(2,+90) z(1,-90) match, "
             << "no (2,0) delays in 72 programs";
}

// ---- 5 ----
void indirect_realization(Check &c) {
    SpinSystem s = SpinSystem::alanine();
    Matrix direct = op_unitary(ScalDelay{2, 0, 0.5}, s);
    bool a = oracle::equal_up_to_z(sequence_unitary(indirect_scal_via_swap_cnot(2, 0, 1, false), s), direct, 3, 1e-9);
    bool b = oracle::equal_up_to_z(sequence_unitary(indirect_scal_via_swap_scal(2, 0, 1), s), direct, 3, 1e-9);
    c.require(a, "swap-to-CNOT construction");
    c.require(b, "swap-to-scalar construction");
    PulseProgram sec = compile_circuit(fixtures::u20_circuit(), s, CompileOptions{});
    c.require(sec.duration_s >= 0.040 && sec.duration_s <= 0.070,
              "quad(2,0) section duration " + std::to_string(sec.duration_s));
    double nineties = 0;
    for (const auto &op : sec.active) {
        if (auto *r = std::get_if<RotXY>(&op)) {
            nineties += r->angle_deg == 90 ? sec.timing.pulse_s[r->spin] : 0;
        }
    }
    PulseProgram full = compile(parse_function("f9"), s);
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "indirect gates equal U_SCAL(2,0) up to z; quad(2,0) section %.1f ms (90-degree pulses %.1f ms), "
                  "whole f9 %.1f ms",
                  sec.duration_s * 1e3, nineties * 1e3, full.duration_s * 1e3);
    c.detail << buf;
}

// ---- 6 ----
void zeeman(Check &c) {
    SpinSystem base = SpinSystem::alanine();
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> off(-500, 500);
    CompileOptions plain;
    plain.zeeman_bookkeeping = false;
    auto reps = list_representatives();
    double worst = 0;
    for (int trial = 0; trial < 20; trial++) {
        const FunctionSpec &f = reps[(size_t)trial % reps.size()];
        PulseProgram ip = compile(f, base, plain);
        SpinSystem zero = base;
        zero.offsets_hz = {0, 0, 0};
        DensityOperator ideal = apply_passive(apply_program(thermal_state(zero), ip, zero, SimMode::Ideal), ip.passive_phases_deg);
        SpinSystem t = base;
        t.offsets_hz = {off(rng), off(rng), off(rng)};
        PulseProgram tp = compile(f, t);
        DensityOperator timed = apply_passive(apply_program(thermal_state(t), tp, t, SimMode::Timed), tp.passive_phases_deg);
        worst = std::max(worst, (timed - ideal).cwiseAbs().maxCoeff());
    }
    c.require(worst < 1e-8, "timed vs ideal " + std::to_string(worst));
    double e1 = coupling_error_estimate(5e-6, 56), e2 = coupling_error_estimate(0.7e-3, 56);
    c.require(std::abs(e1 - 0.00056) < 1e-15, "gap estimate " + std::to_string(e1));
    c.require(std::abs(e2 - 0.078) < 0.0005, "pulse estimate " + std::to_string(e2));
    c.detail << "20 offset draws max deviation " << worst << "; estimates " << e1 << ", " << e2;
}

// ---- 7 ----
void answer_criterion(Check &c) {
    SpinSystem s = SpinSystem::alanine();
    auto windows = multiplet_windows(s);
    auto spectrum_of = [&](const PulseProgram &p) {
        DensityOperator rho = apply_program(thermal_state(s), p, s, SimMode::Timed);
        return apply_passive_phases(fft_spectrum(acquire(rho, s, 4096, 400)), p.passive_phases_deg, windows);
    };
    Spectrum fid = spectrum_of(compile(parse_function("fconst"), s));
    auto phases = fiducial_phases(fid, windows);
    fid = apply_passive_phases(fid, phases, windows);
    size_t right = 0, total = 0;
    double const_dev = 0;
    for (const auto &f : all_admissible()) {
        Spectrum sp = apply_passive_phases(spectrum_of(compile(f, s)), phases, windows);
        Kind want = classify_kind(f.truth_table);
        Kind got = classify_dj(sp, fid);
        total++;
        right += got == want;
        if (got != want) {
            c.require(false, f.bitstring() + " classified " + kind_name(got));
        }
        if (want == Kind::Constant) {
            for (size_t k = 0; k < sp.values.size(); k++) {
                const_dev = std::max(const_dev, std::abs(sp.values[k] - fid.values[k]));
            }
        }
    }
    c.require(const_dev < 1e-8, "constant spectra deviate by " + std::to_string(const_dev));
    c.detail << right << "/" << total << " correct, constant spectra match fiducial to " << const_dev;
}

// ---- 8 ----
void appendix(Check &c) {
    double worst = 0;
    for (double s : {0.2, 0.5, 1 / std::sqrt(3.0), 1.0, 1.5}) {
        DispersionFeatures d = dispersion_features(s);
        auto prof = doublet_profile(s, DoubletMode::AntiphaseDisp);
        auto ex = oracle::extrema(prof, -6, 6);
        double mx = -1e9, mn = 1e9, xmax = 0;
        for (const auto &e : ex) {
            if (e.is_max && e.value > mx) {
                mx = e.value;
                xmax = std::abs(e.x);
            }
            mn = std::min(mn, e.value);
        }
        // Zero crossing between the centre and the maximum.
        double lo = 1e-9, hi = xmax;
        for (int k = 0; k < 200; k++) {
            double m = (lo + hi) / 2;
            (prof(m) < 0 ? lo : hi) = m;
        }
        worst = std::max({worst, std::abs(d.m_max - mx), std::abs(d.m_min - mn), std::abs(d.du_roots - (lo + hi)),
                          std::abs(d.r_a - mx / std::abs(mn))});
        // The location of a flat maximum is only resolved to about sqrt(eps).
        c.require(std::abs(d.du_max - 2 * xmax) < 1e-6, "du_max at s=" + std::to_string(s));
    }
    c.require(worst < 1e-8, "feature error " + std::to_string(worst));
    double crit = 1 / std::sqrt(3.0);
    size_t below = oracle::extrema(doublet_profile(crit - 1e-3, DoubletMode::InphaseAbs), -6, 6).size();
    size_t above = oracle::extrema(doublet_profile(crit + 1e-3, DoubletMode::InphaseAbs), -6, 6).size();
    c.require(below == 1 && above == 3, "in-phase extrema " + std::to_string(below) + " -> " + std::to_string(above));
    c.require(inphase_features(crit - 1e-3).n_extrema == 1 && inphase_features(crit + 1e-3).n_extrema == 3,
              "in-phase extrema count formula");
    double e157 = 0, e10 = 0;
    for (auto [j, fwhm, err] : {std::tuple<double, double, double *>{1.57, 2.0, &e157}, {10.0, 6.25, &e10}}) {
        Spectrum sp = synthesize_doublet(j, 2 * kPi * fwhm, 40, DoubletMode::AntiphaseDisp, uniform_axis(0, 80, 16001));
        *err = std::abs(fit_j_from_dispersion(sp, 40, 60).j_hz - j) / j;
    }
    c.require(e157 < 0.005, "J=1.57 Hz relative error " + std::to_string(e157));
    c.require(e10 < 0.005, "J=10 Hz relative error " + std::to_string(e10));
    c.detail << "feature error " << worst << ", extrema " << below << " -> " << above << ", J errors " << e157 << ", "
             << e10;
}

// ---- 9 ----
void calibration(Check &c) {
    SpinSystem s = SpinSystem::uncoupled(1);
    s.offsets_hz = {50};
    std::vector<double> ts;
    for (int k = 0; k <= 40; k++) {
        ts.push_back(k * 0.5e-3);
    }
    auto y = calibration_scan(s, 0, ts);
    double sy = 0, sc = 0, cc = 0;
    for (size_t k = 0; k < ts.size(); k++) {
        double cv = std::cos(2 * kPi * 50 * ts[k]);
        sc += y[k] * cv;
        cc += cv * cv;
        sy += y[k] * y[k];
    }
    double amp = sc / cc, res = 0;
    for (size_t k = 0; k < ts.size(); k++) {
        double r = y[k] - amp * std::cos(2 * kPi * 50 * ts[k]);
        res += r * r;
    }
    double rel = std::sqrt(res / sy);
    c.require(sy > 0 && rel < 1e-6, "relative residual " + std::to_string(rel));
    c.detail << "41 delays, amplitude " << amp << ", relative residual " << rel;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double budget_s;
        void (*run)(Check &);
    };
    const Criterion criteria[] = {
        {1, "function algebra", 1, function_algebra},
        {2, "gate oracles", 5, gate_oracles},
        {3, "table of output states", 5, table_one},
        {4, "compilation equivalence", 10, compilation_equivalence},
        {5, "indirect realization", 5, indirect_realization},
        {6, "zeeman bookkeeping", 10, zeeman},
        {7, "answer criterion", 30, answer_criterion},
        {8, "doublet lineshapes", 5, appendix},
        {9, "calibration scan", 2, calibration},
    };
    int failed = 0;
    for (const auto &cr : criteria) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception &e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.require(dt < cr.budget_s, "took " + std::to_string(dt) + " s");
        failed += !c.ok;
        std::printf("criterion %d %-24s %s  %.2fs  %s\n", cr.id, cr.name, c.ok ? "PASS" : "FAIL", dt,
                    c.detail.str().c_str());
    }
    return failed ? 1 : 0;
}

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

#include "djnmr/compiler.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace djnmr {

namespace {

constexpr double kAngleTol = 1e-9;
constexpr size_t kMaxSignPatterns = 4096;

bool touches(const GateOp &op, size_t spin, size_t n) {
    auto s = op_spins(op, n);
    return std::find(s.begin(), s.end(), spin) != s.end();
}

// Rotation with angle in (0, 180], or nothing for a multiple of 360.
std::optional<RotXY> make_rot(size_t spin, double phase_deg, double angle_deg) {
    double a = normalize_deg(angle_deg);
    if (a == 0) {
        return std::nullopt;
    }
    double p = phase_deg;
    if (a > 180) {
        a = 360 - a;
        p += 180;
    }
    return RotXY{spin, normalize_deg(p), a};
}

bool near(double a, double b) {
    return std::abs(a - b) < kAngleTol;
}

// Replacement for the pulse-order pair (p, q), or nullopt when no rule applies.
std::optional<std::vector<GateOp>> merge_pair(const RotXY &p, const RotXY &q) {
    double d = wrap_deg(q.phase_deg - p.phase_deg);
    std::vector<GateOp> out;
    if (near(d, 0)) {
        if (auto r = make_rot(p.spin, p.phase_deg, p.angle_deg + q.angle_deg)) {
            out.push_back(*r);
        }
        return out;
    }
    if (near(d, 180)) {
        if (auto r = make_rot(p.spin, p.phase_deg, p.angle_deg - q.angle_deg)) {
            out.push_back(*r);
        }
        return out;
    }
    if (near(std::abs(d), 90) && near(p.angle_deg, 90) && near(q.angle_deg, 90)) {
        out.push_back(RotXY{p.spin, normalize_deg(q.phase_deg), 90});
        out.push_back(RotZ{p.spin, d > 0 ? -90.0 : 90.0});
        return out;
    }
    return std::nullopt;
}

size_t count_rotxy(const GateSequence &seq) {
    return (size_t)std::count_if(seq.begin(), seq.end(), [](const GateOp &o) { return std::holds_alternative<RotXY>(o); });
}

size_t count_delays(const GateSequence &seq) {
    return (size_t)std::count_if(seq.begin(), seq.end(),
                                 [](const GateOp &o) { return std::holds_alternative<ScalDelay>(o); });
}

DeferredZ merge_defer_fixpoint(GateSequence seq, size_t n) {
    std::vector<double> passive(n, 0.0);
    while (true) {
        DeferredZ dz = defer_z(merge_orthogonal_90(seq, n), n);
        for (size_t s = 0; s < n; s++) {
            passive[s] = normalize_deg(passive[s] + dz.passive_deg[s]);
        }
        if (dz.seq == seq) {
            break;
        }
        seq = std::move(dz.seq);
    }
    return {seq, passive};
}

std::string quad_label(size_t i, size_t j) {
    return "quad(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

std::pair<double, double> SelfPhaseModel::split(double offset_hz, double duration_s) const {
    double total = 360.0 * offset_hz * duration_s * fraction;
    return {total * pre_share, total * (1 - pre_share)};
}

PulseTiming PulseTiming::standard(size_t n_spins) {
    PulseTiming t;
    t.pulse_s.assign(n_spins, 0.7e-3);
    if (n_spins == 3) {
        t.pulse_s[2] = 0.5e-3;
    }
    return t;
}

void PulseProgram::validate() const {
    if (n_spins == 0 || n_spins > kMaxSpins) {
        throw Error("program spin count out of range");
    }
    if (passive_phases_deg.size() != n_spins) {
        throw Error("passive phases must have one entry per spin");
    }
    if (timing.pulse_s.size() != n_spins) {
        throw Error("pulse durations must have one entry per spin");
    }
    for (double t : timing.pulse_s) {
        if (!(t >= 0)) {
            throw Error("pulse durations must be non-negative");
        }
    }
    if (!(timing.gap_s >= 0)) {
        throw Error("gap must be non-negative");
    }
    for (const auto &op : active) {
        if (auto *r = std::get_if<RotXY>(&op)) {
            if (r->spin >= n_spins) {
                throw Error("rotation on spin out of range");
            }
        } else {
            const auto &d = std::get<RefocusedDelay>(op);
            if (d.i >= n_spins || d.j >= n_spins || d.refocus_spin >= n_spins || d.i == d.j ||
                d.refocus_spin == d.i || d.refocus_spin == d.j) {
                throw Error("refocused delay has invalid spins");
            }
            if (!(d.free_time_s() >= 0)) {
                throw Error("refocused delay has negative duration");
            }
        }
    }
}

std::vector<TimelineEvent> timeline(const PulseProgram &program) {
    program.validate();
    std::vector<TimelineEvent> events;
    bool after_pulse = false;
    auto pulse = [&](size_t spin, double phase, double angle) {
        if (after_pulse && program.timing.gap_s > 0) {
            events.push_back({TimelineEvent::Kind::Gap, program.timing.gap_s});
        }
        events.push_back({TimelineEvent::Kind::Pulse, program.timing.pulse_s[spin], spin, phase, angle});
        after_pulse = true;
    };
    auto delay = [&](double t) {
        events.push_back({TimelineEvent::Kind::Delay, t});
        after_pulse = false;
    };
    for (const auto &op : program.active) {
        if (auto *r = std::get_if<RotXY>(&op)) {
            pulse(r->spin, r->phase_deg, r->angle_deg);
        } else {
            const auto &d = std::get<RefocusedDelay>(op);
            delay(d.free_time_s() / 2);
            pulse(d.refocus_spin, d.refocus_phase_deg[0], 180);
            delay(d.free_time_s() / 2);
            pulse(d.refocus_spin, d.refocus_phase_deg[1], 180);
        }
    }
    return events;
}

double program_duration(const PulseProgram &program) {
    double t = 0;
    for (const auto &e : timeline(program)) {
        t += e.duration_s;
    }
    return t;
}

std::string to_string(const PulseOp &op) {
    if (auto *r = std::get_if<RotXY>(&op)) {
        return to_string(GateOp{*r});
    }
    const auto &d = std::get<RefocusedDelay>(op);
    std::ostringstream ss;
    ss.precision(12);
    ss << "RefocusedDelay(" << d.i << "," << d.j << ",t=" << d.free_time_s() << ",k=" << d.refocus_spin << ","
       << d.refocus_phase_deg[0] << "/" << d.refocus_phase_deg[1] << ")";
    return ss.str();
}

DeferredZ defer_z(const GateSequence &seq, size_t n_spins) {
    std::vector<double> z(n_spins, 0.0);
    auto pending = [&](size_t s) { return normalize_deg(z.at(s)) != 0; };
    DeferredZ out;
    for (const auto &op : seq) {
        if (auto *r = std::get_if<RotZ>(&op)) {
            z.at(r->spin) += r->angle_deg;
        } else if (auto *x = std::get_if<RotXY>(&op)) {
            out.seq.push_back(RotXY{x->spin, normalize_deg(x->phase_deg - z.at(x->spin)), x->angle_deg});
        } else if (auto *c = std::get_if<Cnot>(&op)) {
            if (pending(c->target)) {
                throw Error("cannot move a z rotation through a CNOT target; lower CNOTs first");
            }
            out.seq.push_back(op);
        } else if (auto *w = std::get_if<Swap>(&op)) {
            std::swap(z.at(w->i), z.at(w->k));
            out.seq.push_back(op);
        } else {
            out.seq.push_back(op);
        }
    }
    for (double &v : z) {
        v = normalize_deg(v);
    }
    out.passive_deg = z;
    return out;
}

GateSequence merge_orthogonal_90(const GateSequence &seq, size_t n_spins) {
    GateSequence cur = seq;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < cur.size() && !changed; a++) {
            auto *p = std::get_if<RotXY>(&cur[a]);
            if (!p) {
                continue;
            }
            size_t b = a + 1;
            while (b < cur.size() && !touches(cur[b], p->spin, n_spins)) {
                b++;
            }
            if (b == cur.size()) {
                continue;
            }
            auto *q = std::get_if<RotXY>(&cur[b]);
            if (!q) {
                continue;
            }
            auto rep = merge_pair(*p, *q);
            if (!rep) {
                continue;
            }
            GateSequence next(cur.begin(), cur.begin() + (long)a);
            if (!rep->empty()) {
                next.push_back((*rep)[0]);
            }
            next.insert(next.end(), cur.begin() + (long)a + 1, cur.begin() + (long)b);
            if (rep->size() > 1) {
                next.push_back((*rep)[1]);
            }
            next.insert(next.end(), cur.begin() + (long)b + 1, cur.end());
            cur = std::move(next);
            changed = true;
        }
    }
    return cur;
}

GateSequence cancel_cnot_pairs(const GateSequence &seq) {
    GateSequence cur;
    for (const auto &op : seq) {
        if (auto *w = std::get_if<Swap>(&op)) {
            for (const auto &g : lower_swap(w->i, w->k)) {
                cur.push_back(g);
            }
        } else {
            cur.push_back(op);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < cur.size() && !changed; a++) {
            auto *c = std::get_if<Cnot>(&cur[a]);
            if (!c) {
                continue;
            }
            for (size_t b = a + 1; b < cur.size(); b++) {
                if (auto *d = std::get_if<Cnot>(&cur[b])) {
                    if (*d == *c) {
                        cur.erase(cur.begin() + (long)b);
                        cur.erase(cur.begin() + (long)a);
                        changed = true;
                        break;
                    }
                    if (d->control != c->target && d->target != c->control) {
                        continue;
                    }
                    break;
                }
                auto spins = op_spins(cur[b], kMaxSpins);
                if (std::find(spins.begin(), spins.end(), c->control) == spins.end() &&
                    std::find(spins.begin(), spins.end(), c->target) == spins.end()) {
                    continue;
                }
                break;
            }
        }
    }
    return cur;
}

size_t count_cnots(const GateSequence &seq) {
    size_t n = 0;
    for (const auto &op : seq) {
        if (std::holds_alternative<Cnot>(op)) {
            n += 1;
        } else if (std::holds_alternative<Swap>(op)) {
            n += 3;
        }
    }
    return n;
}

GateSequence lower_cnots(const GateSequence &seq, const std::vector<CnotSign> &signs) {
    GateSequence out;
    size_t used = 0;
    auto next_sign = [&]() { return used < signs.size() ? signs[used++] : (used++, CnotSign::Upper); };
    auto emit_cnot = [&](size_t c, size_t t) {
        for (const auto &g : lower_cnot(c, t, next_sign())) {
            out.push_back(g);
        }
    };
    for (const auto &op : seq) {
        if (auto *c = std::get_if<Cnot>(&op)) {
            emit_cnot(c->control, c->target);
        } else if (auto *w = std::get_if<Swap>(&op)) {
            for (const auto &g : lower_swap(w->i, w->k)) {
                const auto &cc = std::get<Cnot>(g);
                emit_cnot(cc.control, cc.target);
            }
        } else {
            out.push_back(op);
        }
    }
    return out;
}

GateSequence drop_thermal_noops(const GateSequence &seq) {
    std::set<size_t> touched;
    GateSequence out;
    for (const auto &op : seq) {
        if (auto *r = std::get_if<RotXY>(&op)) {
            touched.insert(r->spin);
        } else if (auto *d = std::get_if<ScalDelay>(&op)) {
            if (!touched.count(d->i) && !touched.count(d->j)) {
                continue;
            }
        } else if (!std::holds_alternative<RotZ>(op)) {
            for (size_t s : op_spins(op, kMaxSpins)) {
                touched.insert(s);
            }
        }
        out.push_back(op);
    }
    return out;
}

Realization choose_realization(const SpinSystem &system, size_t i, size_t j, double ratio_threshold) {
    system.validate();
    size_t n = system.n_spins();
    if (i >= n || j >= n || i == j) {
        throw Error("invalid spin pair for a coupling gate");
    }
    double min_t2 = *std::min_element(system.t2_s.begin(), system.t2_s.end());
    double jij = std::abs(system.j(i, j));
    if (jij > 0 && 1.0 / (2 * jij) < ratio_threshold * min_t2) {
        return {true, 0};
    }
    double best = 0;
    size_t best_k = n;
    for (size_t k = 0; k < n; k++) {
        if (k == i || k == j) {
            continue;
        }
        double m = std::min(std::abs(system.j(i, k)), std::abs(system.j(j, k)));
        if (m > best) {
            best = m;
            best_k = k;
        }
    }
    if (best_k == n) {
        throw Error("spins " + std::to_string(i) + " and " + std::to_string(j) +
                    " are uncouplable: no intermediate spin couples to both");
    }
    return {false, best_k};
}

GateSequence swap_scal_gates(size_t i, size_t j, size_t k, double jt) {
    return {Swap{i, k}, ScalDelay{j, k, jt}, Swap{i, k}};
}

GateSequence indirect_scal_via_swap_scal(size_t i, size_t j, size_t k, double jt) {
    return lower_cnots(swap_scal_gates(i, j, k, jt), {});
}

GateSequence swap_cnot_gates(size_t i, size_t j, size_t k) {
    return {RotXY{j, 90, 90}, Swap{j, k}, Cnot{i, k}, Swap{j, k}, RotXY{j, 270, 90}};
}

GateSequence indirect_scal_via_swap_cnot(size_t i, size_t j, size_t k, bool thermal_shortcut) {
    size_t n = std::max({i, j, k}) + 1;
    GateSequence seq = lower_cnots(swap_cnot_gates(i, j, k), {});
    DeferredZ dz = merge_defer_fixpoint(seq, n);
    if (thermal_shortcut) {
        auto again = merge_defer_fixpoint(drop_thermal_noops(dz.seq), n);
        for (size_t s = 0; s < n; s++) {
            again.passive_deg[s] = normalize_deg(again.passive_deg[s] + dz.passive_deg[s]);
        }
        dz = again;
    }
    for (size_t s = 0; s < n; s++) {
        if (dz.passive_deg[s] != 0) {
            dz.seq.push_back(RotZ{s, dz.passive_deg[s]});
        }
    }
    return dz.seq;
}

RefocusedDelay refocus_expand(const ScalDelay &delay, const SpinSystem &system, double refocus_phase_deg) {
    if (system.n_spins() != 3) {
        throw Error("refocusing is implemented for three-spin systems only");
    }
    if (delay.i >= 3 || delay.j >= 3 || delay.i == delay.j) {
        throw Error("invalid spin pair for a refocused delay");
    }
    double jij = system.j(delay.i, delay.j);
    if (jij == 0) {
        throw Error("refocused delay on an uncoupled pair");
    }
    double t = delay.jt / jij;
    if (t < 0) {
        throw Error("coupling sign requires a negative delay");
    }
    size_t k = 3 - delay.i - delay.j;
    double ph = normalize_deg(refocus_phase_deg);
    return RefocusedDelay{delay.i, delay.j, delay.jt, t, k, {ph, ph}, std::nullopt};
}

PulseProgram zeeman_bookkeeping(const PulseProgram &program, const SpinSystem &system) {
    program.validate();
    if (system.n_spins() != program.n_spins) {
        throw Error("program and system spin counts differ");
    }
    if (program.zeeman_corrected) {
        throw Error("program is already Zeeman corrected");
    }
    size_t n = program.n_spins;
    std::vector<double> z(n, 0.0);
    bool after_pulse = false;
    auto precess = [&](double t, std::optional<size_t> except) {
        for (size_t s = 0; s < n; s++) {
            if (!except || *except != s) {
                z[s] += 360.0 * system.offsets_hz[s] * t;
            }
        }
    };
    auto pulse = [&](size_t spin, double phase) {
        if (after_pulse) {
            precess(program.timing.gap_s, std::nullopt);
        }
        double tau = program.timing.pulse_s[spin];
        auto [pre, post] = program.timing.self_phase.split(system.offsets_hz[spin], tau);
        precess(tau, spin);
        z[spin] += pre;
        double corrected = normalize_deg(phase + z[spin]);
        z[spin] += post;
        after_pulse = true;
        return corrected;
    };
    PulseProgram out = program;
    for (auto &op : out.active) {
        if (auto *r = std::get_if<RotXY>(&op)) {
            r->phase_deg = pulse(r->spin, r->phase_deg);
        } else {
            auto &d = std::get<RefocusedDelay>(op);
            precess(d.free_time_s() / 2, std::nullopt);
            after_pulse = false;
            d.refocus_phase_deg[0] = pulse(d.refocus_spin, d.refocus_phase_deg[0]);
            precess(d.free_time_s() / 2, std::nullopt);
            after_pulse = false;
            d.refocus_phase_deg[1] = pulse(d.refocus_spin, d.refocus_phase_deg[1]);
        }
    }
    for (size_t s = 0; s < n; s++) {
        out.passive_phases_deg[s] = normalize_deg(out.passive_phases_deg[s] - z[s]);
    }
    out.zeeman_corrected = true;
    return out;
}

double coupling_error_estimate(double t_s, double j_hz) {
    if (t_s < 0 || j_hz < 0) {
        throw Error("coupling error estimate needs non-negative t and J");
    }
    return 2 * j_hz * t_s;
}

DeferredZ compile_to_gates(const GateSequence &circuit, const SpinSystem &system, const CompileOptions &options,
                           std::vector<std::string> *realizations) {
    system.validate();
    size_t n = system.n_spins();

    // Quadratic gates are diagonal and commute, so their order is free.
    std::vector<size_t> quad_pos;
    for (size_t p = 0; p < circuit.size(); p++) {
        if (std::holds_alternative<QuadGate>(circuit[p])) {
            quad_pos.push_back(p);
        }
    }
    for (size_t p = quad_pos.empty() ? 0 : quad_pos.front(); !quad_pos.empty() && p <= quad_pos.back(); p++) {
        if (!std::holds_alternative<QuadGate>(circuit[p]) && !std::holds_alternative<LinGate>(circuit[p])) {
            quad_pos.clear();
            break;
        }
    }

    std::vector<std::string> notes;
    std::vector<std::pair<size_t, size_t>> seen;
    auto realize = [&](size_t i, size_t j, GateSequence &out) {
        Realization r = choose_realization(system, i, j, options.ratio_threshold);
        std::string label = quad_label(i, j);
        if (r.direct) {
            label += ": direct";
            for (const auto &g : lower_quad(i, j)) {
                out.push_back(g);
            }
        } else if (options.indirect == IndirectStrategy::SwapCnot) {
            label += ": indirect via " + std::to_string(r.k) + " (swap-cnot)";
            for (const auto &g : swap_cnot_gates(i, j, r.k)) {
                out.push_back(g);
            }
        } else {
            label += ": indirect via " + std::to_string(r.k) + " (swap-scal)";
            for (const auto &g : swap_scal_gates(i, j, r.k)) {
                out.push_back(g);
            }
            out.push_back(RotZ{i, -90});
            out.push_back(RotZ{j, -90});
        }
        if (std::find(seen.begin(), seen.end(), std::make_pair(i, j)) == seen.end()) {
            seen.emplace_back(i, j);
            notes.push_back(label);
        }
    };
    auto expand = [&](const std::vector<size_t> &order) {
        GateSequence out;
        size_t next_quad = 0;
        for (size_t p = 0; p < circuit.size(); p++) {
            const GateOp &op = circuit[p];
            if (auto *q = std::get_if<QuadGate>(&op)) {
                const auto &chosen = quad_pos.empty() ? *q : std::get<QuadGate>(circuit[quad_pos[order[next_quad++]]]);
                realize(chosen.i, chosen.j, out);
            } else if (auto *l = std::get_if<LinGate>(&op)) {
                for (const auto &g : lower_lin(l->i)) {
                    out.push_back(g);
                }
            } else {
                out.push_back(op);
            }
        }
        return out;
    };
    auto finish = [&](const GateSequence &lowered) {
        DeferredZ dz = merge_defer_fixpoint(lowered, n);
        if (options.thermal_shortcut) {
            DeferredZ again = merge_defer_fixpoint(drop_thermal_noops(dz.seq), n);
            for (size_t s = 0; s < n; s++) {
                again.passive_deg[s] = normalize_deg(again.passive_deg[s] + dz.passive_deg[s]);
            }
            dz = again;
        }
        return dz;
    };

    std::vector<size_t> order(quad_pos.size());
    std::iota(order.begin(), order.end(), 0);
    bool have = false;
    DeferredZ best;
    std::pair<size_t, size_t> best_cost;
    std::vector<std::string> best_notes;
    do {
        notes.clear();
        seen.clear();
        GateSequence gates = cancel_cnot_pairs(expand(order));
        size_t nc = count_cnots(gates);
        size_t patterns = 1;
        if (options.search && nc < 63 && (size_t{1} << nc) <= kMaxSignPatterns) {
            patterns = size_t{1} << nc;
        }
        for (size_t mask = 0; mask < patterns; mask++) {
            std::vector<CnotSign> signs(nc, CnotSign::Upper);
            for (size_t c = 0; c < nc && patterns > 1; c++) {
                if ((mask >> (nc - 1 - c)) & 1) {
                    signs[c] = CnotSign::Lower;
                }
            }
            DeferredZ dz = finish(lower_cnots(gates, signs));
            std::pair<size_t, size_t> cost{count_rotxy(dz.seq), count_delays(dz.seq)};
            if (!have || cost < best_cost) {
                have = true;
                best = dz;
                best_cost = cost;
                best_notes = notes;
                std::string sg = "cnot signs: ";
                for (auto s : signs) {
                    sg += s == CnotSign::Upper ? "+" : "-";
                }
                best_notes.push_back(nc == 0 ? sg + "none" : sg);
                std::string ord = "quad order:";
                for (size_t o : order) {
                    const auto &q = std::get<QuadGate>(circuit[quad_pos[o]]);
                    ord += " " + quad_label(q.i, q.j);
                }
                if (!order.empty()) {
                    best_notes.push_back(ord);
                }
            }
        }
    } while (options.search && order.size() <= 4 && std::next_permutation(order.begin(), order.end()));

    if (realizations) {
        *realizations = best_notes;
    }
    return best;
}

PulseProgram compile_circuit(const GateSequence &circuit, const SpinSystem &system, const CompileOptions &options) {
    std::vector<std::string> notes;
    DeferredZ dz = compile_to_gates(circuit, system, options, &notes);
    PulseProgram prog;
    prog.n_spins = system.n_spins();
    prog.passive_phases_deg = dz.passive_deg;
    prog.timing = options.timing.value_or(PulseTiming::standard(prog.n_spins));
    prog.realizations = notes;
    for (const auto &op : dz.seq) {
        if (auto *r = std::get_if<RotXY>(&op)) {
            prog.active.push_back(*r);
        } else if (auto *d = std::get_if<ScalDelay>(&op)) {
            prog.active.push_back(refocus_expand(*d, system, options.refocus_phase_deg));
        } else {
            throw Error("op " + to_string(op) + " has no pulse realization");
        }
    }
    prog.validate();
    if (options.zeeman_bookkeeping) {
        prog = zeeman_bookkeeping(prog, system);
    }
    prog.duration_s = program_duration(prog);
    return prog;
}

PulseProgram compile(const FunctionSpec &spec, const SpinSystem &system, const CompileOptions &options) {
    if (spec.n_bits != system.n_spins()) {
        throw Error("function has " + std::to_string(spec.n_bits) + " inputs but the system has " +
                    std::to_string(system.n_spins()) + " spins");
    }
    PulseProgram prog = compile_circuit(build_dj_circuit(spec, options.init_axis_phase_deg), system, options);
    prog.source = spec.name.empty() ? spec.bitstring() : spec.name;
    return prog;
}

}  // namespace djnmr

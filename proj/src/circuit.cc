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

#include "djnmr/circuit.h"

#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

namespace djnmr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

void check_pair(size_t a, size_t b, size_t n) {
    if (a >= n || b >= n) {
        throw Error("spin index out of range");
    }
    if (a == b) {
        throw Error("two-spin op needs distinct spins");
    }
}

Matrix diagonal_unitary(size_t n, const std::function<double(size_t)> &phase) {
    size_t dim = size_t{1} << n;
    Vector d(dim);
    for (size_t x = 0; x < dim; x++) {
        d[x] = std::polar(1.0, phase(x));
    }
    return d.asDiagonal();
}

Matrix permutation_unitary(size_t n, const std::function<size_t(size_t)> &map) {
    size_t dim = size_t{1} << n;
    Matrix u = Matrix::Zero(dim, dim);
    for (size_t x = 0; x < dim; x++) {
        u(map(x), x) = 1;
    }
    return u;
}

double zz(size_t x, size_t a, size_t b) {
    double sa = (x >> a) & 1 ? -1.0 : 1.0;
    double sb = (x >> b) & 1 ? -1.0 : 1.0;
    return sa * sb;
}

}  // namespace

std::string to_string(const GateOp &op) {
    return std::visit(
        overloaded{
            [](const RotXY &o) {
                return "RotXY(" + std::to_string(o.spin) + "," + num(o.phase_deg) + "," + num(o.angle_deg) + ")";
            },
            [](const RotZ &o) { return "RotZ(" + std::to_string(o.spin) + "," + num(o.angle_deg) + ")"; },
            [](const ScalDelay &o) {
                return "ScalDelay(" + std::to_string(o.i) + "," + std::to_string(o.j) + ",jt=" + num(o.jt) + ")";
            },
            [](const TotalDelay &o) { return "TotalDelay(" + num(o.t_s) + ")"; },
            [](const Cnot &o) { return "Cnot(" + std::to_string(o.control) + "," + std::to_string(o.target) + ")"; },
            [](const Swap &o) { return "Swap(" + std::to_string(o.i) + "," + std::to_string(o.k) + ")"; },
            [](const QuadGate &o) { return "QuadGate(" + std::to_string(o.i) + "," + std::to_string(o.j) + ")"; },
            [](const LinGate &o) { return "LinGate(" + std::to_string(o.i) + ")"; },
        },
        op);
}

std::string to_string(const GateSequence &seq) {
    std::string out = "[";
    for (size_t k = 0; k < seq.size(); k++) {
        if (k) {
            out += ", ";
        }
        out += to_string(seq[k]);
    }
    return out + "]";
}

GateSequence build_uf(const FunctionSpec &spec) {
    GateSequence out;
    size_t n = spec.n_bits;
    for (size_t i = n; i-- > 0;) {
        for (size_t j = i; j-- > 0;) {
            if (spec.quadratic(i, j)) {
                out.push_back(QuadGate{i, j});
            }
        }
    }
    for (size_t i = n; i-- > 0;) {
        if (spec.linear(i)) {
            out.push_back(LinGate{i});
        }
    }
    for (size_t m = 0; m < spec.anf.size(); m++) {
        if (spec.anf[m] && std::popcount(m) > 2) {
            throw Error("functions with cubic or higher terms have no gate decomposition here");
        }
    }
    return out;
}

GateSequence lower_lin(size_t i) {
    return {RotZ{i, 180}};
}

GateSequence lower_quad(size_t i, size_t j) {
    return {RotXY{j, 90, 90}, Cnot{i, j}, RotXY{j, 270, 90}};
}

GateSequence lower_cnot(size_t i, size_t j, CnotSign sign) {
    if (i == j) {
        throw Error("CNOT control and target must differ");
    }
    if (sign == CnotSign::Upper) {
        return {RotXY{j, 90, 90}, ScalDelay{i, j, 0.5}, RotXY{j, 0, 90}, RotZ{i, 90}, RotZ{j, -90}};
    }
    return {RotXY{j, 270, 90}, ScalDelay{i, j, 0.5}, RotXY{j, 180, 90}, RotZ{i, -90}, RotZ{j, -90}};
}

GateSequence lower_swap(size_t i, size_t k) {
    if (i == k) {
        throw Error("SWAP needs distinct spins");
    }
    return {Cnot{i, k}, Cnot{k, i}, Cnot{i, k}};
}

GateSequence build_dj_circuit(const FunctionSpec &spec, double init_axis_phase_deg) {
    if (classify_kind(spec.truth_table) == Kind::Neither) {
        throw Error("function is neither constant nor balanced");
    }
    GateSequence out;
    for (size_t j = spec.n_bits; j-- > 0;) {
        out.push_back(RotXY{j, init_axis_phase_deg, 90});
    }
    for (const auto &op : build_uf(spec)) {
        out.push_back(op);
    }
    return out;
}

std::vector<size_t> op_spins(const GateOp &op, size_t n_spins) {
    return std::visit(
        overloaded{
            [](const RotXY &o) { return std::vector<size_t>{o.spin}; },
            [](const RotZ &o) { return std::vector<size_t>{o.spin}; },
            [](const ScalDelay &o) { return std::vector<size_t>{o.i, o.j}; },
            [n_spins](const TotalDelay &) {
                std::vector<size_t> all;
                for (size_t s = 0; s < n_spins; s++) {
                    all.push_back(s);
                }
                return all;
            },
            [](const Cnot &o) { return std::vector<size_t>{o.control, o.target}; },
            [](const Swap &o) { return std::vector<size_t>{o.i, o.k}; },
            [](const QuadGate &o) { return std::vector<size_t>{o.i, o.j}; },
            [](const LinGate &o) { return std::vector<size_t>{o.i}; },
        },
        op);
}

Matrix op_unitary(const GateOp &op, const SpinSystem &system) {
    size_t n = system.n_spins();
    return std::visit(
        overloaded{
            [&](const RotXY &o) -> Matrix { return embed(rot_xy_2x2(o.phase_deg, o.angle_deg), o.spin, n); },
            [&](const RotZ &o) -> Matrix { return embed(rot_z_2x2(o.angle_deg), o.spin, n); },
            [&](const ScalDelay &o) -> Matrix {
                check_pair(o.i, o.j, n);
                if (system.j(o.i, o.j) == 0) {
                    throw Error("scalar-coupling delay on uncoupled pair " + std::to_string(o.i) + "," +
                                std::to_string(o.j));
                }
                double a = kPi / 2 * o.jt;
                return diagonal_unitary(n, [&](size_t x) { return -a * zz(x, o.i, o.j); });
            },
            [&](const TotalDelay &o) -> Matrix {
                return propagator(build_hamiltonian(system, Frame::CouplingsOnly), o.t_s);
            },
            [&](const Cnot &o) -> Matrix {
                check_pair(o.control, o.target, n);
                return permutation_unitary(n, [&](size_t x) {
                    return (x >> o.control) & 1 ? x ^ (size_t{1} << o.target) : x;
                });
            },
            [&](const Swap &o) -> Matrix {
                check_pair(o.i, o.k, n);
                return permutation_unitary(n, [&](size_t x) {
                    size_t bi = (x >> o.i) & 1, bk = (x >> o.k) & 1;
                    if (bi == bk) {
                        return x;
                    }
                    return x ^ (size_t{1} << o.i) ^ (size_t{1} << o.k);
                });
            },
            [&](const QuadGate &o) -> Matrix {
                check_pair(o.i, o.j, n);
                return diagonal_unitary(n, [&](size_t x) { return ((x >> o.i) & (x >> o.j) & 1) ? kPi : 0.0; });
            },
            [&](const LinGate &o) -> Matrix {
                if (o.i >= n) {
                    throw Error("spin index out of range");
                }
                return diagonal_unitary(n, [&](size_t x) { return ((x >> o.i) & 1) ? kPi : 0.0; });
            },
        },
        op);
}

Matrix sequence_unitary(const GateSequence &seq, const SpinSystem &system) {
    system.validate();
    size_t dim = size_t{1} << system.n_spins();
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto &op : seq) {
        u = op_unitary(op, system) * u;
    }
    return u;
}

}  // namespace djnmr

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

#ifndef DJNMR_CIRCUIT_H
#define DJNMR_CIRCUIT_H

#include <string>
#include <variant>
#include <vector>

#include "djnmr/functions.h"
#include "djnmr/linalg.h"
#include "djnmr/spinsys.h"

namespace djnmr {

/// exp(-i theta n.sigma/2) on one spin, n = (cos phase, sin phase, 0).
struct RotXY {
    size_t spin;
    double phase_deg;
    double angle_deg;
    bool operator==(const RotXY &) const = default;
};

/// exp(-i theta sigma_z/2) on one spin.
struct RotZ {
    size_t spin;
    double angle_deg;
    bool operator==(const RotZ &) const = default;
};

/// Evolution under the i-j coupling alone, exp(-i (pi/2) jt sigma_z^i sigma_z^j).
/// jt is the product J_ij t, so jt = 0.5 is the [1/2J] delay. The duration in
/// seconds follows from a spin system as jt / J_ij.
struct ScalDelay {
    size_t i;
    size_t j;
    double jt;
    bool operator==(const ScalDelay &) const = default;
};

/// Free evolution under every coupling for t seconds.
struct TotalDelay {
    double t_s;
    bool operator==(const TotalDelay &) const = default;
};

struct Cnot {
    size_t control;
    size_t target;
    bool operator==(const Cnot &) const = default;
};

struct Swap {
    size_t i;
    size_t k;
    bool operator==(const Swap &) const = default;
};

/// diag((-1)^{x_i x_j}).
struct QuadGate {
    size_t i;
    size_t j;
    bool operator==(const QuadGate &) const = default;
};

/// diag((-1)^{x_i}).
struct LinGate {
    size_t i;
    bool operator==(const LinGate &) const = default;
};

using GateOp = std::variant<RotXY, RotZ, ScalDelay, TotalDelay, Cnot, Swap, QuadGate, LinGate>;

/// Ops in pulse order: the first op acts first.
using GateSequence = std::vector<GateOp>;

enum class CnotSign {
    Upper,
    Lower,
};

std::string to_string(const GateOp &op);
std::string to_string(const GateSequence &seq);

/// Quadratic gates for every a_ij, then linear gates. The constant is dropped.
GateSequence build_uf(const FunctionSpec &spec);
GateSequence lower_lin(size_t i);
GateSequence lower_quad(size_t i, size_t j);
/// Control i, target j.
GateSequence lower_cnot(size_t i, size_t j, CnotSign sign);
GateSequence lower_swap(size_t i, size_t k);
/// 90 degree rotation of every spin about init_axis_phase_deg, then U_f.
GateSequence build_dj_circuit(const FunctionSpec &spec, double init_axis_phase_deg = 270.0);

/// Ideal matrix of one op on n spins. Delays need the system for J and t.
Matrix op_unitary(const GateOp &op, const SpinSystem &system);
Matrix sequence_unitary(const GateSequence &seq, const SpinSystem &system);

/// Spins touched by an op.
std::vector<size_t> op_spins(const GateOp &op, size_t n_spins);

}  // namespace djnmr

#endif

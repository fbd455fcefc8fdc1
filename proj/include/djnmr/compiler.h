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

#ifndef DJNMR_COMPILER_H
#define DJNMR_COMPILER_H

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "djnmr/circuit.h"

namespace djnmr {

/// [t/2]tot - [180]k - [t/2]tot - [180]k. Free evolution under the i-j
/// coupling only, since the pulse pair on k refocuses every coupling to k.
struct RefocusedDelay {
    size_t i;
    size_t j;
    /// Coupling product J_ij t of the target pair.
    double jt;
    /// Theoretical free evolution time jt / J_ij.
    double total_t_s;
    size_t refocus_spin;
    std::array<double, 2> refocus_phase_deg;
    /// Replaces total_t_s during simulation and timing when set.
    std::optional<double> override_t_s;

    double free_time_s() const {
        return override_t_s.value_or(total_t_s);
    }
    bool operator==(const RefocusedDelay &) const = default;
};

using PulseOp = std::variant<RotXY, RefocusedDelay>;

/// Precession of the rotated spin during its own selective pulse, modeled as
/// z rotations just before and after an instantaneous pulse.
struct SelfPhaseModel {
    /// Fraction of the free precession 360 nu tau accumulated during the pulse.
    double fraction = 1.0;
    /// Share of it placed before the pulse.
    double pre_share = 0.5;

    /// (pre, post) in degrees.
    std::pair<double, double> split(double offset_hz, double duration_s) const;
    bool operator==(const SelfPhaseModel &) const = default;
};

struct PulseTiming {
    /// Selective pulse duration per spin, independent of flip angle.
    std::vector<double> pulse_s;
    double gap_s = 5e-6;
    SelfPhaseModel self_phase;

    /// 0.7 ms for spins 0 and 1, 0.5 ms for spin 2, 5 us gaps; 0.7 ms elsewhere.
    static PulseTiming standard(size_t n_spins);
    bool operator==(const PulseTiming &) const = default;
};

struct PulseProgram {
    size_t n_spins = 0;
    std::vector<PulseOp> active;
    /// Final R_z(phi_j) per spin, applied to the data after acquisition.
    std::vector<double> passive_phases_deg;
    double duration_s = 0;
    PulseTiming timing;
    /// Pulse phases already include the Zeeman and self-phase corrections.
    bool zeeman_corrected = false;
    std::string source;
    std::vector<std::string> realizations;

    /// Throws Error when an index is out of range or arrays disagree.
    void validate() const;
};

/// One interval of the physical timeline of a program.
struct TimelineEvent {
    enum class Kind {
        Pulse,
        /// Free evolution under offsets and couplings.
        Delay,
        /// Switching gap between adjacent pulses, offsets only.
        Gap,
    };
    Kind kind;
    double duration_s;
    size_t spin = 0;
    double phase_deg = 0;
    double angle_deg = 0;
};

std::vector<TimelineEvent> timeline(const PulseProgram &program);
double program_duration(const PulseProgram &program);

std::string to_string(const PulseOp &op);

// ---- passes on gate sequences ----

struct DeferredZ {
    GateSequence seq;
    std::vector<double> passive_deg;
};

/// Moves every RotZ to the end. U(seq) = R_z(passive) U(result.seq).
DeferredZ defer_z(const GateSequence &seq, size_t n_spins);

/// Rewrites same-spin RotXY pairs with nothing in between on that spin.
/// Collinear pairs add, opposite pairs subtract, orthogonal 90 degree pairs
/// become R_n(90) followed by a RotZ. Runs until nothing changes.
GateSequence merge_orthogonal_90(const GateSequence &seq, size_t n_spins);

/// Splits each Swap into three CNOTs, then removes identical CNOT pairs
/// separated only by commuting CNOTs.
GateSequence cancel_cnot_pairs(const GateSequence &seq);

/// Lowers every Cnot and Swap, consuming one sign per CNOT in order.
GateSequence lower_cnots(const GateSequence &seq, const std::vector<CnotSign> &signs);
size_t count_cnots(const GateSequence &seq);

/// Drops ScalDelay ops on spins no RotXY has touched yet. Valid only when the
/// input state is diagonal in the computational basis.
GateSequence drop_thermal_noops(const GateSequence &seq);

// ---- realizations ----

struct Realization {
    bool direct = true;
    size_t k = 0;
};

Realization choose_realization(const SpinSystem &system, size_t i, size_t j, double ratio_threshold = 0.25);

/// SWAP(i,k) - [jt]jk - SWAP(i,k), gate level.
GateSequence swap_scal_gates(size_t i, size_t j, size_t k, double jt = 0.5);
/// The same lowered with upper-sign CNOTs.
GateSequence indirect_scal_via_swap_scal(size_t i, size_t j, size_t k, double jt = 0.5);
/// R_y(90)j - SWAP(j,k) - CNOT(i,k) - SWAP(j,k) - R_-y(90)j, gate level.
GateSequence swap_cnot_gates(size_t i, size_t j, size_t k);
/// The same lowered with upper-sign CNOTs and passed through merging.
/// Equals U_SCAL^{ij}(1/2J) up to z rotations collected in the RotZ tail.
GateSequence indirect_scal_via_swap_cnot(size_t i, size_t j, size_t k, bool thermal_shortcut);

RefocusedDelay refocus_expand(const ScalDelay &delay, const SpinSystem &system,
                              double refocus_phase_deg = 0.0);

/// Shifts later pulse phases of spin j by the Zeeman precession 360 nu_j t
/// accumulated in delays, gaps and pulses, and subtracts the total from the
/// passive phase.
PulseProgram zeeman_bookkeeping(const PulseProgram &program, const SpinSystem &system);

/// Fraction 2 J t of a full 1/2J coupling evolution.
double coupling_error_estimate(double t_s, double j_hz);

// ---- driver ----

enum class IndirectStrategy {
    SwapCnot,
    SwapScal,
};

struct CompileOptions {
    IndirectStrategy indirect = IndirectStrategy::SwapCnot;
    double ratio_threshold = 0.25;
    bool thermal_shortcut = true;
    double init_axis_phase_deg = 270.0;
    double refocus_phase_deg = 0.0;
    bool zeeman_bookkeeping = true;
    /// Try every order of the commuting quadratic gates and every CNOT sign
    /// pattern, keeping the fewest pulses then the fewest delays.
    bool search = true;
    std::optional<PulseTiming> timing;
};

/// Compiles an arbitrary gate sequence on a three-spin system.
PulseProgram compile_circuit(const GateSequence &circuit, const SpinSystem &system, const CompileOptions &options);
PulseProgram compile(const FunctionSpec &spec, const SpinSystem &system, const CompileOptions &options = {});

/// Lowered, merged and z-deferred gate sequence before refocusing. Exposed for
/// inspection and tests.
DeferredZ compile_to_gates(const GateSequence &circuit, const SpinSystem &system, const CompileOptions &options,
                           std::vector<std::string> *realizations = nullptr);

}  // namespace djnmr

#endif

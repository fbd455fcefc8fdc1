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

#ifndef DJNMR_SPINSYS_H
#define DJNMR_SPINSYS_H

#include <optional>
#include <vector>

#include "djnmr/linalg.h"

namespace djnmr {

/// Weakly coupled homonuclear spin-1/2 system in the receiver rotating frame.
/// Offsets are relative to the receiver frequency. Couplings are symmetric.
struct SpinSystem {
    std::vector<double> offsets_hz;
    Eigen::MatrixXd couplings_hz;
    std::vector<double> t1_s;
    std::vector<double> t2_s;
    /// FWHM in Hz. Overrides the 2/T2 linewidth when present.
    std::vector<std::optional<double>> linewidth_hz;

    size_t n_spins() const {
        return offsets_hz.size();
    }
    double j(size_t a, size_t b) const {
        return couplings_hz(a, b);
    }
    /// Throws Error if shapes disagree, couplings are asymmetric or relaxation
    /// times are not positive.
    void validate() const;

    /// Labeled 13C alanine: 2 carboxyl, 1 alpha, 0 methyl.
    static SpinSystem alanine();
    /// n spins, no offsets, no couplings, T1 = T2 = 1 s.
    static SpinSystem uncoupled(size_t n);
};

enum class Frame {
    CouplingsOnly,
    Rotating,
};

/// Diagonal Hamiltonian in rad/s, one entry per computational basis state.
struct HamiltonianMatrix {
    Eigen::VectorXd diagonal;

    size_t dim() const {
        return (size_t)diagonal.size();
    }
    Matrix dense() const;
};

HamiltonianMatrix build_hamiltonian(const SpinSystem &system, Frame frame);

/// exp(-i H t), computed element-wise.
Matrix propagator(const HamiltonianMatrix &h, double t_s);
/// Diagonal of exp(-i H t).
Vector propagator_diagonal(const HamiltonianMatrix &h, double t_s);

/// Full linewidth Delta omega_h in rad/s: 2/T2, or 2 pi FWHM when overridden.
double linewidth(const SpinSystem &system, size_t spin);

}  // namespace djnmr

#endif

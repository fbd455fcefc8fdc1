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

#ifndef DJNMR_SIMULATOR_H
#define DJNMR_SIMULATOR_H

#include <map>
#include <string>
#include <vector>

#include "djnmr/compiler.h"
#include "djnmr/spinsys.h"

namespace djnmr {

/// Deviation density operator, 2^n x 2^n.
using DensityOperator = Matrix;

/// Coefficients over the product basis {E, x, y, z}^n.
/// Keys read spin n-1 first, e.g. "xzE" is 2 I_x^2 I_z^1 for n = 3.
/// A product of m non-identity factors carries the 2^(m-1) weight, so a
/// state -4 I_x^2 I_z^1 I_z^0 has coefficient -1 on "xzz".
struct ProductExpansion {
    size_t n_spins = 0;
    std::map<std::string, double> coefficients;

    /// Coefficient of a term, 0 when absent.
    double operator[](const std::string &key) const;
    /// Terms with |c| > tol.
    std::map<std::string, double> significant(double tol = 1e-10) const;
    /// Human form like "-4 I2x I1z I0z".
    std::string to_string(double tol = 1e-10) const;
};

struct Fid {
    std::vector<Complex> samples;
    double dwell_s = 0;
    double phi_acq_deg = 0;
};

enum class SimMode {
    Ideal,
    Timed,
};

/// Basis operator of a product key with its 2^(m-1) weight.
Matrix product_operator(const std::string &key);

DensityOperator thermal_state(const SpinSystem &system);
/// -sum_j I_x^j, the state after the default initial rotation.
DensityOperator fiducial_state(size_t n_spins);

DensityOperator apply_program(const DensityOperator &rho, const PulseProgram &program, const SpinSystem &system,
                              SimMode mode);
/// Conjugation by prod_j R_z(phi_j).
DensityOperator apply_passive(const DensityOperator &rho, const std::vector<double> &phases_deg);
/// Conjugation by an ideal gate sequence.
DensityOperator apply_sequence(const DensityOperator &rho, const GateSequence &seq, const SpinSystem &system);

ProductExpansion product_expansion(const DensityOperator &rho);
DensityOperator reconstruct(const ProductExpansion &exp);

Fid acquire(const DensityOperator &rho, const SpinSystem &system, size_t n_points, double sweep_hz,
            double phi_acq_deg = 0.0);

/// First-point intensity of [90]y - T - [90]theta - acquire on one spin,
/// couplings neglected during T.
std::vector<double> calibration_scan(const SpinSystem &system, size_t spin, const std::vector<double> &delays_s,
                                     double theta_deg = 0.0);

}  // namespace djnmr

#endif

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

#ifndef DJNMR_LINALG_H
#define DJNMR_LINALG_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace djnmr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kPi = std::numbers::pi;
constexpr size_t kMaxSpins = 6;

/// Raised for any violated precondition or malformed input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double deg_to_rad(double deg) {
    return deg * kPi / 180.0;
}
inline double rad_to_deg(double rad) {
    return rad * 180.0 / kPi;
}

/// Angle in [0, 360). Values within 1e-9 of an integer degree snap to it.
double normalize_deg(double deg);
/// Angle in (-180, 180].
double wrap_deg(double deg);

/// Single spin-1/2 operators I_x, I_y, I_z (half the Pauli matrices) and E.
Matrix spin_op(char axis);

/// Embeds a 2x2 operator acting on `spin` into the 2^n space.
/// Spin n-1 is the leftmost tensor factor, so basis bit i belongs to spin i.
Matrix embed(const Matrix &op2, size_t spin, size_t n);

/// exp(-i n.sigma theta/2) with n = (cos a, sin a, 0).
Matrix rot_xy_2x2(double phase_deg, double angle_deg);
/// exp(-i sigma_z theta/2).
Matrix rot_z_2x2(double angle_deg);

/// Largest |a - e^{ic} b| entry after choosing c to align the traces.
double distance_up_to_phase(const Matrix &a, const Matrix &b);
bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol);

/// Conjugation u rho u^dagger.
Matrix conjugate(const Matrix &u, const Matrix &rho);

}  // namespace djnmr

#endif

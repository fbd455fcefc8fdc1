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

#include "djnmr/linalg.h"

#include <cmath>

namespace djnmr {

double normalize_deg(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0) {
        r += 360.0;
    }
    double k = std::round(r);
    if (std::abs(r - k) < 1e-9) {
        r = k;
    }
    if (r >= 360.0) {
        r -= 360.0;
    }
    return r;
}

double wrap_deg(double deg) {
    double r = normalize_deg(deg);
    return r > 180.0 ? r - 360.0 : r;
}

Matrix spin_op(char axis) {
    Matrix m = Matrix::Zero(2, 2);
    switch (axis) {
        case 'E':
            m(0, 0) = m(1, 1) = 1;
            break;
        case 'x':
            m(0, 1) = m(1, 0) = 0.5;
            break;
        case 'y':
            m(0, 1) = Complex(0, -0.5);
            m(1, 0) = Complex(0, 0.5);
            break;
        case 'z':
            m(0, 0) = 0.5;
            m(1, 1) = -0.5;
            break;
        default:
            throw Error(std::string("unknown spin operator axis '") + axis + "'");
    }
    return m;
}

Matrix embed(const Matrix &op2, size_t spin, size_t n) {
    if (spin >= n) {
        throw Error("spin index out of range");
    }
    size_t dim = size_t{1} << n;
    size_t bit = size_t{1} << spin;
    Matrix out = Matrix::Zero(dim, dim);
    for (size_t c = 0; c < dim; c++) {
        size_t bc = (c & bit) ? 1 : 0;
        for (size_t br = 0; br < 2; br++) {
            Complex v = op2(br, bc);
            if (v == Complex(0)) {
                continue;
            }
            size_t r = (c & ~bit) | (br ? bit : 0);
            out(r, c) = v;
        }
    }
    return out;
}

Matrix rot_xy_2x2(double phase_deg, double angle_deg) {
    double a = deg_to_rad(phase_deg);
    double h = deg_to_rad(angle_deg) / 2;
    Matrix m(2, 2);
    Complex s = Complex(0, -std::sin(h));
    m(0, 0) = std::cos(h);
    m(1, 1) = std::cos(h);
    m(0, 1) = s * Complex(std::cos(a), -std::sin(a));
    m(1, 0) = s * Complex(std::cos(a), std::sin(a));
    return m;
}

Matrix rot_z_2x2(double angle_deg) {
    double h = deg_to_rad(angle_deg) / 2;
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -h);
    m(1, 1) = std::polar(1.0, h);
    return m;
}

double distance_up_to_phase(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error("matrix shape mismatch");
    }
    Complex t = (b.adjoint() * a).trace();
    Complex ph = std::abs(t) > 1e-300 ? t / std::abs(t) : Complex(1);
    return (a - ph * b).cwiseAbs().maxCoeff();
}

bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol) {
    return distance_up_to_phase(a, b) < tol;
}

Matrix conjugate(const Matrix &u, const Matrix &rho) {
    return u * rho * u.adjoint();
}

}  // namespace djnmr

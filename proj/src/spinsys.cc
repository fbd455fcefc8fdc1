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

#include "djnmr/spinsys.h"

#include <cmath>

namespace djnmr {

void SpinSystem::validate() const {
    size_t n = offsets_hz.size();
    if (n == 0) {
        throw Error("spin system has no spins");
    }
    if (n > kMaxSpins) {
        throw Error("spin system has " + std::to_string(n) + " spins; the maximum is " + std::to_string(kMaxSpins));
    }
    if ((size_t)couplings_hz.rows() != n || (size_t)couplings_hz.cols() != n) {
        throw Error("coupling matrix must be n_spins x n_spins");
    }
    if (t1_s.size() != n || t2_s.size() != n || linewidth_hz.size() != n) {
        throw Error("per-spin arrays must have n_spins entries");
    }
    for (size_t a = 0; a < n; a++) {
        if (couplings_hz(a, a) != 0) {
            throw Error("coupling matrix diagonal must be zero");
        }
        for (size_t b = 0; b < a; b++) {
            if (couplings_hz(a, b) != couplings_hz(b, a)) {
                throw Error("coupling matrix must be symmetric");
            }
        }
        if (!(t1_s[a] > 0) || !(t2_s[a] > 0)) {
            throw Error("relaxation times must be positive");
        }
        if (linewidth_hz[a].has_value() && !(*linewidth_hz[a] > 0)) {
            throw Error("linewidth override must be positive");
        }
        if (!std::isfinite(offsets_hz[a])) {
            throw Error("offsets must be finite");
        }
    }
}

SpinSystem SpinSystem::alanine() {
    SpinSystem s;
    s.offsets_hz = {-120.0, 15.0, 130.0};
    s.couplings_hz = Eigen::MatrixXd::Zero(3, 3);
    s.couplings_hz(2, 1) = s.couplings_hz(1, 2) = 56.0;
    s.couplings_hz(1, 0) = s.couplings_hz(0, 1) = 36.0;
    s.couplings_hz(2, 0) = s.couplings_hz(0, 2) = 1.57;
    s.t1_s = {1.45, 2.82, 20.3};
    s.t2_s = {0.702, 0.417, 1.25};
    s.linewidth_hz = {std::nullopt, std::nullopt, std::nullopt};
    return s;
}

SpinSystem SpinSystem::uncoupled(size_t n) {
    SpinSystem s;
    s.offsets_hz.assign(n, 0.0);
    s.couplings_hz = Eigen::MatrixXd::Zero(n, n);
    s.t1_s.assign(n, 1.0);
    s.t2_s.assign(n, 1.0);
    s.linewidth_hz.assign(n, std::nullopt);
    return s;
}

Matrix HamiltonianMatrix::dense() const {
    return diagonal.cast<Complex>().asDiagonal();
}

HamiltonianMatrix build_hamiltonian(const SpinSystem &system, Frame frame) {
    system.validate();
    size_t n = system.n_spins();
    size_t dim = size_t{1} << n;
    HamiltonianMatrix h{Eigen::VectorXd::Zero(dim)};
    for (size_t x = 0; x < dim; x++) {
        double e = 0;
        for (size_t a = 0; a < n; a++) {
            double sa = (x >> a) & 1 ? -1.0 : 1.0;
            if (frame == Frame::Rotating) {
                e += kPi * system.offsets_hz[a] * sa;
            }
            for (size_t b = 0; b < a; b++) {
                double sb = (x >> b) & 1 ? -1.0 : 1.0;
                e += kPi / 2 * system.couplings_hz(a, b) * sa * sb;
            }
        }
        h.diagonal[x] = e;
    }
    return h;
}

Vector propagator_diagonal(const HamiltonianMatrix &h, double t_s) {
    Vector d(h.dim());
    for (size_t k = 0; k < h.dim(); k++) {
        d[k] = std::polar(1.0, -h.diagonal[k] * t_s);
    }
    return d;
}

Matrix propagator(const HamiltonianMatrix &h, double t_s) {
    return propagator_diagonal(h, t_s).asDiagonal();
}

double linewidth(const SpinSystem &system, size_t spin) {
    if (spin >= system.n_spins()) {
        throw Error("spin index out of range");
    }
    if (system.linewidth_hz[spin].has_value()) {
        return 2 * kPi * *system.linewidth_hz[spin];
    }
    return 2.0 / system.t2_s[spin];
}

}  // namespace djnmr

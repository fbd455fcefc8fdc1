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

#include "djnmr/simulator.h"

#include <cmath>
#include <sstream>

namespace djnmr {

namespace {

// Column index and value of the single nonzero of row x in a product operator.
struct RowEntry {
    size_t col;
    Complex value;
};

RowEntry product_row(const std::string &key, size_t x) {
    size_t n = key.size();
    size_t col = x;
    Complex v = 1;
    size_t m = 0;
    for (size_t p = 0; p < n; p++) {
        size_t spin = n - 1 - p;
        size_t b = (x >> spin) & 1;
        switch (key[p]) {
            case 'E':
                break;
            case 'x':
                col ^= size_t{1} << spin;
                v *= 0.5;
                m++;
                break;
            case 'y':
                col ^= size_t{1} << spin;
                v *= b == 0 ? Complex(0, -0.5) : Complex(0, 0.5);
                m++;
                break;
            case 'z':
                v *= b == 0 ? 0.5 : -0.5;
                m++;
                break;
            default:
                throw Error("product operator keys use only E, x, y, z");
        }
    }
    if (m > 1) {
        v *= double(size_t{1} << (m - 1));
    }
    return {col, v};
}

std::string key_of(size_t index, size_t n) {
    static const char kAxes[4] = {'E', 'x', 'y', 'z'};
    std::string key(n, 'E');
    for (size_t p = 0; p < n; p++) {
        key[n - 1 - p] = kAxes[(index >> (2 * p)) & 3];
    }
    return key;
}

size_t check_dim(const Matrix &rho) {
    size_t dim = (size_t)rho.rows();
    if (dim == 0 || (size_t)rho.cols() != dim || (dim & (dim - 1)) != 0) {
        throw Error("density operator must be square with power-of-two size");
    }
    size_t n = 0;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    if (n > kMaxSpins) {
        throw Error("too many spins");
    }
    return n;
}

Vector zeeman_diagonal(const SpinSystem &system, double t_s, std::optional<size_t> except) {
    size_t n = system.n_spins();
    size_t dim = size_t{1} << n;
    Vector d(dim);
    for (size_t x = 0; x < dim; x++) {
        double e = 0;
        for (size_t s = 0; s < n; s++) {
            if (except && *except == s) {
                continue;
            }
            e += kPi * system.offsets_hz[s] * ((x >> s) & 1 ? -1.0 : 1.0);
        }
        d[x] = std::polar(1.0, -e * t_s);
    }
    return d;
}

}  // namespace

double ProductExpansion::operator[](const std::string &key) const {
    auto it = coefficients.find(key);
    return it == coefficients.end() ? 0.0 : it->second;
}

std::map<std::string, double> ProductExpansion::significant(double tol) const {
    std::map<std::string, double> out;
    for (const auto &[k, v] : coefficients) {
        if (std::abs(v) > tol) {
            out[k] = v;
        }
    }
    return out;
}

std::string ProductExpansion::to_string(double tol) const {
    std::ostringstream ss;
    ss.precision(6);
    bool first = true;
    for (const auto &[k, v] : significant(tol)) {
        size_t m = 0;
        for (char c : k) {
            m += c != 'E';
        }
        double c = v * (m > 1 ? double(size_t{1} << (m - 1)) : 1.0);
        ss << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + ")) << std::abs(c);
        for (size_t p = 0; p < k.size(); p++) {
            if (k[p] != 'E') {
                ss << " I" << (k.size() - 1 - p) << k[p];
            }
        }
        if (m == 0) {
            ss << " E";
        }
        first = false;
    }
    return first ? "0" : ss.str();
}

Matrix product_operator(const std::string &key) {
    size_t n = key.size();
    size_t dim = size_t{1} << n;
    Matrix b = Matrix::Zero(dim, dim);
    for (size_t x = 0; x < dim; x++) {
        RowEntry e = product_row(key, x);
        b(x, e.col) = e.value;
    }
    return b;
}

DensityOperator thermal_state(const SpinSystem &system) {
    system.validate();
    size_t n = system.n_spins();
    size_t dim = size_t{1} << n;
    DensityOperator rho = Matrix::Zero(dim, dim);
    for (size_t x = 0; x < dim; x++) {
        double v = 0;
        for (size_t s = 0; s < n; s++) {
            v += (x >> s) & 1 ? -0.5 : 0.5;
        }
        rho(x, x) = v;
    }
    return rho;
}

DensityOperator fiducial_state(size_t n_spins) {
    size_t dim = size_t{1} << n_spins;
    DensityOperator rho = Matrix::Zero(dim, dim);
    for (size_t s = 0; s < n_spins; s++) {
        rho -= embed(spin_op('x'), s, n_spins);
    }
    return rho;
}

DensityOperator apply_program(const DensityOperator &rho, const PulseProgram &program, const SpinSystem &system,
                              SimMode mode) {
    system.validate();
    size_t n = check_dim(rho);
    if (program.n_spins != system.n_spins() || n != system.n_spins()) {
        throw Error("program, system and state spin counts differ");
    }
    bool offsets = false;
    for (double v : system.offsets_hz) {
        offsets |= v != 0;
    }
    if (mode == SimMode::Ideal && program.zeeman_corrected && offsets) {
        throw Error("program carries Zeeman corrections; simulate it in timed mode");
    }
    size_t dim = size_t{1} << n;
    Matrix u = Matrix::Identity(dim, dim);
    HamiltonianMatrix h_delay = build_hamiltonian(system, mode == SimMode::Ideal ? Frame::CouplingsOnly : Frame::Rotating);
    for (const auto &e : timeline(program)) {
        switch (e.kind) {
            case TimelineEvent::Kind::Pulse: {
                Matrix r = embed(rot_xy_2x2(e.phase_deg, e.angle_deg), e.spin, n);
                if (mode == SimMode::Timed) {
                    auto [pre, post] = program.timing.self_phase.split(system.offsets_hz[e.spin], e.duration_s);
                    Matrix zp = embed(rot_z_2x2(pre), e.spin, n);
                    Matrix zq = embed(rot_z_2x2(post), e.spin, n);
                    r = zq * r * zp;
                    r = zeeman_diagonal(system, e.duration_s, e.spin).asDiagonal() * r;
                }
                u = r * u;
                break;
            }
            case TimelineEvent::Kind::Delay:
                u = propagator_diagonal(h_delay, e.duration_s).asDiagonal() * u;
                break;
            case TimelineEvent::Kind::Gap:
                if (mode == SimMode::Timed) {
                    u = zeeman_diagonal(system, e.duration_s, std::nullopt).asDiagonal() * u;
                }
                break;
        }
    }
    return conjugate(u, rho);
}

DensityOperator apply_passive(const DensityOperator &rho, const std::vector<double> &phases_deg) {
    size_t n = check_dim(rho);
    if (phases_deg.size() != n) {
        throw Error("one passive phase per spin required");
    }
    size_t dim = size_t{1} << n;
    Vector d(dim);
    for (size_t x = 0; x < dim; x++) {
        double a = 0;
        for (size_t s = 0; s < n; s++) {
            a += deg_to_rad(phases_deg[s]) / 2 * ((x >> s) & 1 ? 1.0 : -1.0);
        }
        d[x] = std::polar(1.0, a);
    }
    return conjugate(d.asDiagonal().toDenseMatrix(), rho);
}

DensityOperator apply_sequence(const DensityOperator &rho, const GateSequence &seq, const SpinSystem &system) {
    return conjugate(sequence_unitary(seq, system), rho);
}

ProductExpansion product_expansion(const DensityOperator &rho) {
    size_t n = check_dim(rho);
    size_t dim = size_t{1} << n;
    ProductExpansion out;
    out.n_spins = n;
    size_t terms = size_t{1} << (2 * n);
    for (size_t t = 0; t < terms; t++) {
        std::string key = key_of(t, n);
        Complex tr = 0;
        for (size_t x = 0; x < dim; x++) {
            RowEntry e = product_row(key, x);
            tr += e.value * rho(e.col, x);
        }
        double norm = t == 0 ? double(dim) : double(dim) / 4.0;
        out.coefficients[key] = tr.real() / norm;
    }
    return out;
}

DensityOperator reconstruct(const ProductExpansion &exp) {
    size_t dim = size_t{1} << exp.n_spins;
    DensityOperator rho = Matrix::Zero(dim, dim);
    for (const auto &[k, v] : exp.coefficients) {
        if (v != 0) {
            rho += v * product_operator(k);
        }
    }
    return rho;
}

Fid acquire(const DensityOperator &rho, const SpinSystem &system, size_t n_points, double sweep_hz,
            double phi_acq_deg) {
    system.validate();
    size_t n = check_dim(rho);
    if (n != system.n_spins()) {
        throw Error("state and system spin counts differ");
    }
    if (n_points == 0 || !(sweep_hz > 0)) {
        throw Error("acquisition needs positive points and sweep width");
    }
    struct Line {
        Complex amp;
        double omega;
        double rate;
    };
    HamiltonianMatrix h = build_hamiltonian(system, Frame::Rotating);
    Complex rot = std::polar(1.0, deg_to_rad(phi_acq_deg));
    std::vector<Line> lines;
    size_t dim = size_t{1} << n;
    for (size_t j = 0; j < n; j++) {
        double rate = linewidth(system, j) / 2;
        size_t bit = size_t{1} << j;
        for (size_t a = 0; a < dim; a++) {
            if (a & bit) {
                continue;
            }
            size_t b = a | bit;
            Complex c = rho(b, a);
            if (c == Complex(0)) {
                continue;
            }
            lines.push_back({rot * c, -(h.diagonal[b] - h.diagonal[a]), rate});
        }
    }
    Fid fid;
    fid.dwell_s = 1.0 / sweep_hz;
    fid.phi_acq_deg = phi_acq_deg;
    fid.samples.resize(n_points);
    for (size_t k = 0; k < n_points; k++) {
        double t = (double)k * fid.dwell_s;
        Complex s = 0;
        for (const auto &l : lines) {
            s += l.amp * std::exp(Complex(-l.rate * t, l.omega * t));
        }
        fid.samples[k] = s;
    }
    return fid;
}

std::vector<double> calibration_scan(const SpinSystem &system, size_t spin, const std::vector<double> &delays_s,
                                     double theta_deg) {
    system.validate();
    size_t n = system.n_spins();
    if (spin >= n) {
        throw Error("spin index out of range");
    }
    DensityOperator rho0 = thermal_state(system);
    Matrix first = embed(rot_xy_2x2(90, 90), spin, n);
    Matrix second = embed(rot_xy_2x2(theta_deg, 90), spin, n);
    std::vector<double> out;
    for (double t : delays_s) {
        Matrix u = second * zeeman_diagonal(system, t, std::nullopt).asDiagonal() * first;
        Fid f = acquire(conjugate(u, rho0), system, 1, 1.0);
        out.push_back(f.samples[0].real());
    }
    return out;
}

}  // namespace djnmr

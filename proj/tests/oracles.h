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

// Slow, independent reference computations shared by the tests. Nothing here
// calls into the library except for plain types.

#ifndef DJNMR_TESTS_ORACLES_H
#define DJNMR_TESTS_ORACLES_H

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
constexpr double kPi = 3.14159265358979323846;

inline M pauli(char a) {
    M m(2, 2);
    switch (a) {
        case 'x':
            m << 0, 1, 1, 0;
            break;
        case 'y':
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case 'z':
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
    }
    return m;
}

// Explicit Kronecker chain, spin n-1 leftmost.
inline M on_spin(const M &op, size_t spin, size_t n) {
    M out = M::Identity(1, 1);
    for (size_t p = n; p-- > 0;) {
        M f = p == spin ? op : M(M::Identity(2, 2));
        M next = Eigen::kroneckerProduct(out, f).eval();
        out = next;
    }
    return out;
}

// Truncated Taylor series with scaling and squaring.
inline M expm(const M &a) {
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = std::max(0, (int)std::ceil(std::log2(norm + 1e-300)) + 1);
    M x = a / std::pow(2.0, squarings);
    M term = M::Identity(a.rows(), a.cols());
    M sum = term;
    for (int k = 1; k < 30; k++) {
        term = (term * x / (double)k).eval();
        sum += term;
    }
    for (int s = 0; s < squarings; s++) {
        sum = (sum * sum).eval();
    }
    return sum;
}

inline M rot(double phase_deg, double angle_deg) {
    double a = phase_deg * kPi / 180, t = angle_deg * kPi / 180;
    M gen = (std::cos(a) * pauli('x') + std::sin(a) * pauli('y')) * C(0, -t / 2);
    return expm(gen);
}

inline M rotz(double angle_deg) {
    return expm(pauli('z') * C(0, -angle_deg * kPi / 360));
}

// max |a - e^{ic} b| minimized over c via the overlap phase.
inline double phase_distance(const M &a, const M &b) {
    C ov = (b.adjoint() * a).trace();
    C ph = std::abs(ov) > 0 ? ov / std::abs(ov) : C(1);
    return (a - ph * b).cwiseAbs().maxCoeff();
}

// True iff a = D b with D a product of single-spin z rotations and a global
// phase, up to tol.
inline bool equal_up_to_z(const M &a, const M &b, size_t n, double tol) {
    M d = a * b.adjoint();
    size_t dim = size_t{1} << n;
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            if (r != c && std::abs(d(r, c)) > tol) {
                return false;
            }
        }
        if (std::abs(std::abs(d(r, r)) - 1) > tol) {
            return false;
        }
    }
    for (size_t x = 0; x < dim; x++) {
        C pred = d(0, 0);
        for (size_t s = 0; s < n; s++) {
            if ((x >> s) & 1) {
                pred *= d(size_t{1} << s, size_t{1} << s) / d(0, 0);
            }
        }
        if (std::abs(pred - d(x, x)) > tol) {
            return false;
        }
    }
    return true;
}

// Local extremum of f near x0, golden-section on [lo, hi].
inline double golden(const std::function<double(double)> &f, double lo, double hi, bool maximize) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    auto h = [&](double x) { return maximize ? -f(x) : f(x); };
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    for (int it = 0; it < 200 && b - a > 1e-14; it++) {
        if (h(c) < h(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return (a + b) / 2;
}

struct Extremum {
    double x;
    double value;
    bool is_max;
};

// Extrema of f on [lo, hi] found on a grid and refined by golden section.
inline std::vector<Extremum> extrema(const std::function<double(double)> &f, double lo, double hi,
                                     size_t grid = 20001) {
    std::vector<double> xs(grid), ys(grid);
    for (size_t k = 0; k < grid; k++) {
        xs[k] = lo + (hi - lo) * (double)k / (double)(grid - 1);
        ys[k] = f(xs[k]);
    }
    std::vector<Extremum> out;
    for (size_t k = 1; k + 1 < grid; k++) {
        bool mx = ys[k] >= ys[k - 1] && ys[k] > ys[k + 1];
        bool mn = ys[k] <= ys[k - 1] && ys[k] < ys[k + 1];
        if (mx || mn) {
            double x = golden(f, xs[k - 1], xs[k + 1], mx);
            out.push_back({x, f(x), mx});
        }
    }
    return out;
}

// Balanced 3-bit tables grouped under input permutations and output
// complement, by brute force. Returns the number of classes.
inline size_t balanced_class_count() {
    std::vector<int> tables;
    for (int t = 0; t < 256; t++) {
        if (__builtin_popcount(t) == 4) {
            tables.push_back(t);
        }
    }
    std::set<int> canon;
    std::array<int, 3> p{0, 1, 2};
    for (int t : tables) {
        int best = 256;
        std::array<int, 3> q = p;
        do {
            int u = 0;
            for (int x = 0; x < 8; x++) {
                int y = 0;
                for (int b = 0; b < 3; b++) {
                    y |= ((x >> b) & 1) << q[b];
                }
                u |= ((t >> x) & 1) << y;
            }
            best = std::min({best, u, u ^ 0xff});
        } while (std::next_permutation(q.begin(), q.end()));
        canon.insert(best);
    }
    return canon.size();
}

}  // namespace oracle

#endif

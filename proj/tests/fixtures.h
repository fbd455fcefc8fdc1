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


#ifndef DJNMR_TESTS_FIXTURES_H
#define DJNMR_TESTS_FIXTURES_H

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "djnmr/compiler.h"

namespace fixtures {

using namespace djnmr;

// Equal up to swapping neighbours that act on disjoint spins: true iff the
// per-spin subsequences agree.
inline bool same_up_to_commutation(const GateSequence &a, const GateSequence &b, size_t n) {
    for (size_t s = 0; s < n; s++) {
        GateSequence pa, pb;
        for (const auto &op : a) {
            auto sp = op_spins(op, n);
            if (std::find(sp.begin(), sp.end(), s) != sp.end()) {
                pa.push_back(op);
            }
        }
        for (const auto &op : b) {
            auto sp = op_spins(op, n);
            if (std::find(sp.begin(), sp.end(), s) != sp.end()) {
                pb.push_back(op);
            }
        }
        if (pa.size() != pb.size()) {
            return false;
        }
        for (size_t k = 0; k < pa.size(); k++) {
            if (auto *x = std::get_if<ScalDelay>(&pa[k])) {
                auto *y = std::get_if<ScalDelay>(&pb[k]);
                bool same_pair = y && ((x->i == y->i && x->j == y->j) || (x->i == y->j && x->j == y->i));
                if (!same_pair || x->jt != y->jt) {
                    return false;
                }
            } else if (auto *x = std::get_if<RotXY>(&pa[k])) {
                auto *y = std::get_if<RotXY>(&pb[k]);
                if (!y || y->spin != x->spin || normalize_deg(x->phase_deg - y->phase_deg) != 0 ||
                    x->angle_deg != y->angle_deg) {
                    return false;
                }
            } else if (!(pa[k] == pb[k])) {
                return false;
            }
        }
    }
    return true;
}

// The quadratic 2-0 gate through the CNOT route, after the initial -y pulse
// on spin 2: x0 x1 D10 y1 D21 x1 D10 y1 x0 D10 x1 -y0, then z(2,+90), z(1,-90).
inline GateSequence u20_reference() {
    return {RotXY{2, 270, 90}, RotXY{0, 0, 90}, RotXY{1, 0, 90},  ScalDelay{1, 0, 0.5}, RotXY{1, 90, 90},
            ScalDelay{2, 1, 0.5}, RotXY{1, 0, 90}, ScalDelay{1, 0, 0.5}, RotXY{1, 90, 90}, RotXY{0, 0, 90},
            ScalDelay{1, 0, 0.5}, RotXY{1, 0, 90}, RotXY{0, 270, 90}};
}

inline std::vector<double> u20_reference_passive() {
    return {0, 270, 90};
}

inline GateSequence u20_circuit() {
    return {RotXY{2, 270, 90}, RotXY{1, 270, 90}, RotXY{0, 270, 90}, QuadGate{2, 0}};
}

// Random three-spin circuit mixing every gate kind the compiler accepts.
inline GateSequence random_circuit(std::mt19937_64 &rng, size_t length) {
    std::uniform_int_distribution<int> kind(0, 6), spin(0, 2), quarter(0, 3);
    std::uniform_real_distribution<double> angle(-180, 180);
    auto pair = [&]() {
        size_t a = (size_t)spin(rng);
        size_t b = (a + 1 + (size_t)spin(rng) % 2) % 3;
        return std::pair<size_t, size_t>{a, b};
    };
    GateSequence seq;
    for (size_t k = 0; k < length; k++) {
        auto [a, b] = pair();
        switch (kind(rng)) {
            case 0:
                seq.push_back(RotXY{a, 90.0 * quarter(rng), 90.0 * (1 + quarter(rng) % 2)});
                break;
            case 1:
                seq.push_back(RotXY{a, angle(rng), angle(rng)});
                break;
            case 2:
                seq.push_back(RotZ{a, angle(rng)});
                break;
            case 3:
                seq.push_back(Cnot{a, b});
                break;
            case 4:
                seq.push_back(Swap{a, b});
                break;
            case 5:
                seq.push_back(QuadGate{std::max(a, b), std::min(a, b)});
                break;
            default:
                seq.push_back(LinGate{a});
        }
    }
    return seq;
}

}  // namespace fixtures

#endif

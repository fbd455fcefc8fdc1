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

#include <gtest/gtest.h>

#include "oracles.h"

using namespace djnmr;

namespace {

// Dense Hamiltonian from spin operators, rad/s.
oracle::M dense_h(const SpinSystem &s, bool offsets) {
    size_t n = s.n_spins();
    oracle::M h = oracle::M::Zero(1 << n, 1 << n);
    for (size_t a = 0; a < n; a++) {
        if (offsets) {
            h += 2 * oracle::kPi * s.offsets_hz[a] * oracle::on_spin(oracle::pauli('z') / 2.0, a, n);
        }
        for (size_t b = a + 1; b < n; b++) {
            h += 2 * oracle::kPi * s.j(a, b) * oracle::on_spin(oracle::pauli('z') / 2.0, a, n) *
                 oracle::on_spin(oracle::pauli('z') / 2.0, b, n);
        }
    }
    return h;
}

}  // namespace

TEST(spinsys, alanine) {
    SpinSystem s = SpinSystem::alanine();
    ASSERT_EQ(s.n_spins(), 3u);
    EXPECT_DOUBLE_EQ(s.j(2, 1), 56.0);
    EXPECT_DOUBLE_EQ(s.j(1, 0), 36.0);
    EXPECT_DOUBLE_EQ(s.j(0, 2), 1.57);
    EXPECT_NO_THROW(s.validate());
}

TEST(spinsys, validation) {
    SpinSystem s = SpinSystem::alanine();
    s.couplings_hz(0, 1) = 35;
    EXPECT_THROW(s.validate(), Error);
    s = SpinSystem::alanine();
    s.t2_s[1] = 0;
    EXPECT_THROW(s.validate(), Error);
    s = SpinSystem::alanine();
    s.offsets_hz.push_back(1);
    EXPECT_THROW(s.validate(), Error);
}

TEST(spinsys, hamiltonian_matches_spin_operators) {
    SpinSystem s = SpinSystem::alanine();
    for (bool rot : {false, true}) {
        HamiltonianMatrix h = build_hamiltonian(s, rot ? Frame::Rotating : Frame::CouplingsOnly);
        EXPECT_LT((h.dense() - dense_h(s, rot)).norm(), 1e-9);
    }
}

TEST(spinsys, propagator_matches_expm) {
    SpinSystem s = SpinSystem::alanine();
    HamiltonianMatrix h = build_hamiltonian(s, Frame::Rotating);
    double t = 3.7e-3;
    oracle::M want = oracle::expm(dense_h(s, true) * oracle::C(0, -t));
    EXPECT_LT((propagator(h, t) - want).norm(), 1e-10);
    EXPECT_LT((Matrix(propagator_diagonal(h, t).asDiagonal()) - want).norm(), 1e-10);
}

TEST(spinsys, linewidth) {
    SpinSystem s = SpinSystem::alanine();
    EXPECT_NEAR(linewidth(s, 1), 2 / 0.417, 1e-12);
    s.linewidth_hz[1] = 2.0;
    EXPECT_NEAR(linewidth(s, 1), 4 * kPi, 1e-12);
}

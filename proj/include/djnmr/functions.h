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

#ifndef DJNMR_FUNCTIONS_H
#define DJNMR_FUNCTIONS_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "djnmr/linalg.h"

namespace djnmr {

enum class Kind {
    Constant,
    Balanced,
    Neither,
};
const char *kind_name(Kind k);

/// Boolean function f: {0,1}^n -> {0,1} with its algebraic normal form.
/// truth_table[x] is f(x); bit i of x is x_i.
/// anf[m] is the coefficient of the monomial prod_{i in m} x_i.
struct FunctionSpec {
    size_t n_bits = 0;
    std::vector<uint8_t> truth_table;
    std::vector<uint8_t> anf;
    std::string name;

    uint8_t constant() const {
        return anf[0];
    }
    uint8_t linear(size_t i) const {
        return anf[size_t{1} << i];
    }
    uint8_t quadratic(size_t i, size_t j) const {
        return anf[(size_t{1} << i) | (size_t{1} << j)];
    }
    uint8_t cubic() const;
    /// Evaluates the polynomial, not the stored table.
    uint8_t evaluate(size_t x) const;
    /// e.g. "x2x1 + x1x0 + x2x0" with + meaning XOR; "0" or "1" for constants.
    std::string polynomial() const;
    /// f(0) f(1) ... f(2^n - 1) as characters.
    std::string bitstring() const;
};

/// GF(2) Moebius transform of the table.
FunctionSpec expand_gf2(const std::vector<uint8_t> &truth_table);
FunctionSpec from_bitstring(const std::string &bits);
/// Accepts a Table 1 name ("fconst", "f1".."f10") or a bitstring.
FunctionSpec parse_function(const std::string &selector);

Kind classify_kind(const std::vector<uint8_t> &truth_table);

/// Coefficient vector (a, a2, a1, a0, a21, a20, a10) of a 3-bit function.
using Coeffs3 = std::array<uint8_t, 7>;
Coeffs3 coeffs3(const FunctionSpec &spec);

/// Relabels inputs: the result's coefficient on x_{perm[i]} is spec's on x_i.
FunctionSpec permute_inputs(const FunctionSpec &spec, const std::array<size_t, 3> &perm);

struct FunctionClass {
    Kind kind = Kind::Neither;
    /// 0 for the constant class, k for the class of f_k.
    int class_id = -1;
    Coeffs3 canonical_coeffs{};
    /// Maps spec indices to those of canonical_coeffs.
    std::array<size_t, 3> permutation{};
    /// Maps spec indices to those of the class representative, constant ignored.
    std::array<size_t, 3> representative_permutation{};
    /// Quadratic pattern group: number of quadratic terms, 0..3.
    int active_class = -1;
};

FunctionClass canonical_class(const FunctionSpec &spec);

/// f_const, f1 .. f10.
std::vector<FunctionSpec> list_representatives();
/// All 2 constant and 70 balanced 3-bit tables in increasing bitstring order.
std::vector<FunctionSpec> all_admissible();

}  // namespace djnmr

#endif

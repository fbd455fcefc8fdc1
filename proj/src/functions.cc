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

#include "djnmr/functions.h"

#include <algorithm>
#include <bit>

#include "djnmr/linalg.h"

namespace djnmr {

namespace {

constexpr std::array<std::array<size_t, 3>, 6> kPerms = {{
    {0, 1, 2},
    {0, 2, 1},
    {1, 0, 2},
    {1, 2, 0},
    {2, 0, 1},
    {2, 1, 0},
}};

// Function from a list of monomial masks.
FunctionSpec from_monomials(const std::vector<size_t> &monomials, const std::string &name) {
    std::vector<uint8_t> anf(8, 0);
    for (size_t m : monomials) {
        anf[m] ^= 1;
    }
    std::vector<uint8_t> table(8, 0);
    for (size_t x = 0; x < 8; x++) {
        uint8_t v = 0;
        for (size_t m = 0; m < 8; m++) {
            if (anf[m] && (x & m) == m) {
                v ^= 1;
            }
        }
        table[x] = v;
    }
    FunctionSpec f = expand_gf2(table);
    f.name = name;
    return f;
}

Coeffs3 without_constant(Coeffs3 c) {
    c[0] = 0;
    return c;
}

}  // namespace

const char *kind_name(Kind k) {
    switch (k) {
        case Kind::Constant:
            return "constant";
        case Kind::Balanced:
            return "balanced";
        default:
            return "neither";
    }
}

uint8_t FunctionSpec::cubic() const {
    return n_bits >= 3 ? anf[7] : 0;
}

uint8_t FunctionSpec::evaluate(size_t x) const {
    uint8_t v = 0;
    for (size_t m = 0; m < anf.size(); m++) {
        if (anf[m] && (x & m) == m) {
            v ^= 1;
        }
    }
    return v;
}

std::string FunctionSpec::polynomial() const {
    // Higher degree first, then larger indices first, as in x2x1 + x1x0 + x2x0.
    std::vector<size_t> terms;
    for (size_t m = 1; m < anf.size(); m++) {
        if (anf[m]) {
            terms.push_back(m);
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](size_t a, size_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) {
            return pa > pb;
        }
        if (pa == 2) {
            // x2x1, x1x0, x2x0
            auto rank = [](size_t m) { return m == 6 ? 0 : m == 3 ? 1 : m == 5 ? 2 : (int)m; };
            return rank(a) < rank(b);
        }
        return a > b;
    });
    std::string out;
    for (size_t m : terms) {
        if (!out.empty()) {
            out += " + ";
        }
        for (int i = (int)n_bits - 1; i >= 0; i--) {
            if (m & (size_t{1} << i)) {
                out += "x" + std::to_string(i);
            }
        }
    }
    if (anf[0]) {
        out += out.empty() ? "1" : " + 1";
    }
    return out.empty() ? "0" : out;
}

std::string FunctionSpec::bitstring() const {
    std::string s;
    for (uint8_t v : truth_table) {
        s += v ? '1' : '0';
    }
    return s;
}

FunctionSpec expand_gf2(const std::vector<uint8_t> &truth_table) {
    size_t len = truth_table.size();
    if (len == 0 || !std::has_single_bit(len)) {
        throw Error("truth table length must be a power of two");
    }
    size_t n = (size_t)std::countr_zero(len);
    if (n > 16) {
        throw Error("truth table too large");
    }
    FunctionSpec f;
    f.n_bits = n;
    f.truth_table.resize(len);
    for (size_t x = 0; x < len; x++) {
        if (truth_table[x] > 1) {
            throw Error("truth table entries must be 0 or 1");
        }
        f.truth_table[x] = truth_table[x];
    }
    f.anf = f.truth_table;
    for (size_t bit = 1; bit < len; bit <<= 1) {
        for (size_t m = 0; m < len; m++) {
            if (m & bit) {
                f.anf[m] ^= f.anf[m ^ bit];
            }
        }
    }
    return f;
}

FunctionSpec from_bitstring(const std::string &bits) {
    std::vector<uint8_t> t;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error("bitstring may contain only 0 and 1: '" + bits + "'");
        }
        t.push_back(c == '1');
    }
    return expand_gf2(t);
}

FunctionSpec parse_function(const std::string &selector) {
    auto reps = list_representatives();
    if (selector == "fconst" || selector == "const" || selector == "f_const" || selector == "fid") {
        return reps[0];
    }
    for (size_t k = 1; k < reps.size(); k++) {
        if (selector == reps[k].name) {
            return reps[k];
        }
    }
    if (!selector.empty() && selector.find_first_not_of("01") == std::string::npos) {
        FunctionSpec f = from_bitstring(selector);
        f.name = selector;
        return f;
    }
    throw Error("unknown function '" + selector + "'; use fconst, f1..f10 or a bitstring");
}

Kind classify_kind(const std::vector<uint8_t> &truth_table) {
    size_t len = truth_table.size();
    if (len == 0 || !std::has_single_bit(len)) {
        throw Error("truth table length must be a power of two");
    }
    size_t ones = (size_t)std::count_if(truth_table.begin(), truth_table.end(), [](uint8_t v) { return v != 0; });
    if (ones == 0 || ones == len) {
        return Kind::Constant;
    }
    if (2 * ones == len) {
        return Kind::Balanced;
    }
    return Kind::Neither;
}

Coeffs3 coeffs3(const FunctionSpec &spec) {
    if (spec.n_bits != 3) {
        throw Error("three-bit function required");
    }
    return {spec.anf[0], spec.anf[4], spec.anf[2], spec.anf[1], spec.anf[6], spec.anf[5], spec.anf[3]};
}

FunctionSpec permute_inputs(const FunctionSpec &spec, const std::array<size_t, 3> &perm) {
    if (spec.n_bits != 3) {
        throw Error("three-bit function required");
    }
    std::vector<uint8_t> anf(8, 0);
    for (size_t m = 0; m < 8; m++) {
        size_t pm = 0;
        for (size_t i = 0; i < 3; i++) {
            if (m & (size_t{1} << i)) {
                pm |= size_t{1} << perm[i];
            }
        }
        anf[pm] = spec.anf[m];
    }
    std::vector<uint8_t> table(8);
    for (size_t x = 0; x < 8; x++) {
        uint8_t v = 0;
        for (size_t m = 0; m < 8; m++) {
            if (anf[m] && (x & m) == m) {
                v ^= 1;
            }
        }
        table[x] = v;
    }
    FunctionSpec out = expand_gf2(table);
    out.name = spec.name;
    return out;
}

FunctionClass canonical_class(const FunctionSpec &spec) {
    if (spec.n_bits != 3) {
        throw Error("classification is defined for three-bit functions only");
    }
    FunctionClass fc;
    fc.kind = classify_kind(spec.truth_table);
    if (fc.kind == Kind::Neither) {
        throw Error("function is neither constant nor balanced");
    }
    bool first = true;
    for (const auto &p : kPerms) {
        Coeffs3 c = coeffs3(permute_inputs(spec, p));
        if (first || c < fc.canonical_coeffs) {
            fc.canonical_coeffs = c;
            fc.permutation = p;
            first = false;
        }
    }
    Coeffs3 key = without_constant(fc.canonical_coeffs);
    auto reps = list_representatives();
    for (size_t k = 0; k < reps.size(); k++) {
        Coeffs3 rep = without_constant(coeffs3(reps[k]));
        Coeffs3 rep_min = rep;
        for (const auto &p : kPerms) {
            rep_min = std::min(rep_min, without_constant(coeffs3(permute_inputs(reps[k], p))));
        }
        if (rep_min == key) {
            fc.class_id = (int)k;
            for (const auto &p : kPerms) {
                if (without_constant(coeffs3(permute_inputs(spec, p))) == rep) {
                    fc.representative_permutation = p;
                    break;
                }
            }
            break;
        }
    }
    if (fc.class_id < 0) {
        throw Error("function matches no known class");
    }
    fc.active_class = spec.quadratic(2, 1) + spec.quadratic(2, 0) + spec.quadratic(1, 0);
    return fc;
}

std::vector<FunctionSpec> list_representatives() {
    constexpr size_t x0 = 1, x1 = 2, x2 = 4, x10 = 3, x20 = 5, x21 = 6;
    return {
        from_monomials({}, "fconst"),
        from_monomials({x2}, "f1"),
        from_monomials({x2, x1}, "f2"),
        from_monomials({x2, x1, x0}, "f3"),
        from_monomials({x21, x0}, "f4"),
        from_monomials({x21, x2, x0}, "f5"),
        from_monomials({x21, x2, x1, x0}, "f6"),
        from_monomials({x21, x10, x2, x1}, "f7"),
        from_monomials({x21, x10, x2}, "f8"),
        from_monomials({x21, x10, x20}, "f9"),
        from_monomials({x21, x10, x20, x1, x0}, "f10"),
    };
}

std::vector<FunctionSpec> all_admissible() {
    std::vector<FunctionSpec> out;
    for (size_t bits = 0; bits < 256; bits++) {
        std::vector<uint8_t> t(8);
        for (size_t x = 0; x < 8; x++) {
            t[x] = (bits >> (7 - x)) & 1;
        }
        if (classify_kind(t) != Kind::Neither) {
            FunctionSpec f = expand_gf2(t);
            f.name = f.bitstring();
            out.push_back(f);
        }
    }
    return out;
}

}  // namespace djnmr

#pragma once

#include "trihex/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace trihex {

// Integer matrix acting on (m, n) columns in the basis {v1, v2}.
struct IntMat2 {
    int64_t a = 1, b = 0, c = 0, d = 1;

    int64_t det() const { return a * d - b * c; }
    // Inverse of a unimodular matrix; throws if det is not +-1.
    IntMat2 inverse() const;
    LatticeVec operator()(LatticeVec v) const { return {a * v.m + b * v.n, c * v.m + d * v.n}; }
    friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const IntMat2&, const IntMat2&) = default;
    std::string to_string() const;
};

inline const IntMat2 kIdentity{1, 0, 0, 1};

// R, P0, P1, P2, -I, RP0, P1^-1 R P0.
std::map<std::string, IntMat2> generators();

bool in_veech(const IntMat2& m);

enum class CuspClass { Xi, NonXi };
std::string to_string(CuspClass c);
// Visible vectors only.
CuspClass cusp_class(LatticeVec v);

struct ClassMismatch : std::invalid_argument {
    ClassMismatch() : std::invalid_argument("find_element: directions lie in different cusp classes") {}
};

struct GroupElement {
    IntMat2 matrix;
    std::vector<std::string> word;  // product from left to right
};

// Element of the group carrying src to dst.
GroupElement find_element(LatticeVec src, LatticeVec dst);

// Product of a word over the generator names (and their inverses written NAME^-1).
IntMat2 evaluate_word(const std::vector<std::string>& word);

// C M C^-1 where C has columns v1 and v2.
QMat2 to_standard_basis(const IntMat2& m);

}  // namespace trihex

#include "oracles.hpp"
#include "trihex/veech.hpp"

#include <doctest.h>

#include <random>

using namespace trihex;

namespace {

// Group membership from the definition: the matrix maps the visible lattice vectors with
// m = n mod 3 into themselves, checked on a box.
bool preserves_xi(const IntMat2& g) {
    if (std::abs(g.det()) != 1) return false;
    for (int m = -6; m <= 6; ++m)
        for (int n = -6; n <= 6; ++n) {
            if (!oracle::visible(m, n) || ((m - n) % 3 + 3) % 3 != 0) continue;
            LatticeVec w = g({m, n});
            if (((w.m - w.n) % 3 + 3) % 3 != 0) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("generators belong to the group and satisfy their relations") {
    auto g = generators();
    for (const auto& [name, mat] : g) {
        CAPTURE(name);
        CHECK(in_veech(mat));
        CHECK(preserves_xi(mat));
        CHECK(std::abs(mat.det()) == 1);
    }
    IntMat2 r = g.at("R");
    CHECK(r * r == kIdentity);
    CHECK(r.det() == -1);
    IntMat2 x = r * g.at("P1^-1RP0");
    CHECK(x * x * x == kIdentity);
    CHECK(g.at("-I") * g.at("-I") == kIdentity);
    CHECK(g.at("RP0") == r * g.at("P0"));
}

TEST_CASE("membership agrees with the preserved-class oracle") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> e(-4, 4);
    int in = 0, out = 0;
    for (int k = 0; k < 3000; ++k) {
        IntMat2 m{e(rng), e(rng), e(rng), e(rng)};
        if (std::abs(m.det()) != 1) continue;
        bool a = in_veech(m), b = preserves_xi(m);
        CHECK(a == b);
        (a ? in : out)++;
    }
    CHECK(in > 10);
    CHECK(out > 10);
    IntMat2 rot{0, -1, 1, -1};
    CHECK_FALSE(in_veech(rot));
    CHECK_FALSE(in_veech(rot * rot));
    CHECK(in_veech(rot * rot * rot));
}

TEST_CASE("cusp classes") {
    CHECK(cusp_class({1, 1}) == CuspClass::Xi);
    CHECK(cusp_class({-2, 1}) == CuspClass::Xi);
    CHECK(cusp_class({1, 0}) == CuspClass::NonXi);
    CHECK_THROWS(cusp_class({2, 2}));
}

TEST_CASE("find_element carries any visible vector to any other in its class") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> e(-25, 25);
    for (int k = 0; k < 300; ++k) {
        LatticeVec a{e(rng), e(rng)}, b{e(rng), e(rng)};
        if (!oracle::visible(a.m, a.n) || !oracle::visible(b.m, b.n)) continue;
        if (cusp_class(a) != cusp_class(b)) {
            CHECK_THROWS_AS(find_element(a, b), ClassMismatch);
            continue;
        }
        GroupElement g = find_element(a, b);
        CHECK(in_veech(g.matrix));
        CHECK(g.matrix(a) == b);
        CHECK(evaluate_word(g.word) == g.matrix);
    }
}

TEST_CASE("random generator products stay in the group and preserve cusp classes") {
    std::mt19937_64 rng(7);
    std::vector<IntMat2> gens;
    for (const auto& [name, m] : generators()) {
        gens.push_back(m);
        gens.push_back(m.inverse());
    }
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(1, 6);
    for (int k = 0; k < 500; ++k) {
        IntMat2 m = kIdentity;
        for (int j = len(rng); j > 0; --j) m = m * gens[pick(rng)];
        CHECK(in_veech(m));
        for (int a = -10; a <= 10; ++a)
            for (int b = -10; b <= 10; ++b)
                if (oracle::visible(a, b)) CHECK(cusp_class(m(LatticeVec{a, b})) == cusp_class({a, b}));
    }
}

TEST_CASE("change to the standard basis") {
    auto g = generators();
    QMat2 r = to_standard_basis(g.at("R"));
    // the reflection fixes the vertical axis up to sign
    QSqrt3 x = r.b, y = r.d;
    CHECK(x == QSqrt3(0));
    CHECK((y == QSqrt3(1) || y == QSqrt3(-1)));
    QMat2 id = to_standard_basis(kIdentity);
    CHECK(id.a == QSqrt3(1));
    CHECK(id.b == QSqrt3(0));
    CHECK(id.c == QSqrt3(0));
    CHECK(id.d == QSqrt3(1));
    QMat2 mi = to_standard_basis(g.at("-I"));
    CHECK(mi.a == QSqrt3(-1));
    CHECK(mi.b == QSqrt3(0));
    CHECK(mi.c == QSqrt3(0));
    CHECK(mi.d == QSqrt3(-1));
    // the lattice action matches the Cartesian action
    IntMat2 p1 = g.at("P1");
    QMat2 c = to_standard_basis(p1);
    for (LatticeVec v : std::vector<LatticeVec>{{1, 0}, {0, 1}, {2, -3}}) {
        Vec2 p = v.to_vec2(), q = p1(v).to_vec2();
        Vec2 img{c.a.to_double() * p.x + c.b.to_double() * p.y, c.c.to_double() * p.x + c.d.to_double() * p.y};
        CHECK(norm(img - q) < 1e-12);
    }
}

TEST_CASE("word evaluation handles inverses") {
    CHECK(evaluate_word({"P0", "P0^-1"}) == kIdentity);
    CHECK(evaluate_word({}) == kIdentity);
    CHECK_THROWS(evaluate_word({"Q"}));
}

#include <doctest.h>

#include <random>

#include "equivar/numeric.hpp"

using namespace equivar;

TEST_CASE("rational arithmetic stays normalized") {
    Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK((a + Rational(1, 2)) == Rational(-1));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK((Rational(1, 3) / Rational(1, 6)) == Rational(2));
    CHECK(Rational(5, 5).is_integer());
    CHECK(Rational(-1, 3) < Rational(0));
}

TEST_CASE("determinant and adjugate") {
    IntMat m(3, 3);
    Int vals[9] = {2, 0, 1, 1, 1, 0, 0, 3, 1};
    for (int i = 0; i < 9; ++i) m.a[i] = vals[i];
    Int d = det(m);
    CHECK(d == 5);
    IntMat adj = adjugate(m);
    IntMat prod = mat_mul(m, adj);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(prod.at(i, j) == (i == j ? d : 0));
    CHECK(det(IntMat::identity(4)) == 1);
    CHECK(det(IntMat(0, 0)) == 1);
}

TEST_CASE("char_like_poly matches principal minors on random matrices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 5;
        IntMat m(n, n);
        for (Int& v : m.a) v = coef(rng);
        IntVec p = char_like_poly(m);
        REQUIRE(static_cast<int>(p.size()) == n + 1);
        for (int k = 0; k <= n; ++k) {
            Int ek = principal_minor_sum(m, k);
            CHECK(p[k] == (k % 2 == 0 ? ek : -ek));
        }
    }
}

TEST_CASE("integer kernel and saturation") {
    // kernel of (1 2 3) is rank 2 and saturated
    IntMat m(1, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = 3;
    IntMat k = integer_kernel(m);
    CHECK(k.cols == 2);
    for (int c = 0; c < k.cols; ++c)
        CHECK(k.at(0, c) + 2 * k.at(1, c) + 3 * k.at(2, c) == 0);

    // saturation of span{(2,0)} in Z^2 is Z(1,0)
    IntMat g(2, 1);
    g.at(0, 0) = 2;
    g.at(1, 0) = 0;
    IntMat sat = saturated_column_basis(g);
    REQUIRE(sat.cols == 1);
    CHECK(std::abs(sat.at(0, 0)) == 1);
    CHECK(sat.at(1, 0) == 0);
}

TEST_CASE("solve_integer handles rectangular systems") {
    IntMat m(3, 2);
    // columns (1,0,1), (0,2,1)
    m.at(0, 0) = 1;
    m.at(1, 0) = 0;
    m.at(2, 0) = 1;
    m.at(0, 1) = 0;
    m.at(1, 1) = 2;
    m.at(2, 1) = 1;
    IntVec rhs{3, 4, 5};  // 3*(col0) + 2*(col1)
    IntVec x = solve_integer(m, rhs, ErrorKind::InvariantViolation, "test");
    CHECK(x == IntVec{3, 2});
    CHECK_THROWS_AS(solve_integer(m, IntVec{1, 1, 1}, ErrorKind::InvariantViolation, "test"),
                    Error);
}

TEST_CASE("series inverse and polynomial multiply") {
    IntVec p{1, -1};  // 1 - t
    IntVec inv = series_inverse(p, 5);
    for (int i = 0; i <= 5; ++i) CHECK(inv[i] == 1);
    IntVec q = poly_mul(p, inv, 5);
    CHECK(q[0] == 1);
    for (int i = 1; i <= 5; ++i) CHECK(q[i] == 0);
}

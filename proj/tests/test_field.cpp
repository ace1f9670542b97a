#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablecat/field.hpp"

using namespace stablecat;

TEST_CASE("prime field arithmetic") {
    PrimeField f5(5);
    CHECK(f5.add(3, 4) == 2);
    CHECK(f5.sub(1, 3) == 3);
    CHECK(f5.mul(3, 4) == 2);
    CHECK(f5.inv(2) == 3);
    CHECK(f5.inv(4) == 4);
    CHECK(f5.reduce(-1) == 4);
    CHECK_THROWS_AS(PrimeField(1), invariant_error);
    CHECK_THROWS_AS(PrimeField(4), invariant_error);
    CHECK_THROWS_AS(f5.inv(0), invariant_error);
    PrimeField f2(2);
    CHECK(f2.add(1, 1) == 0);
}

TEST_CASE("rref normalizes pivots and is deterministic") {
    PrimeField f5(5);
    auto m = FieldMatrix::from_rows(f5, {{1, 2}, {2, 4}});
    Rref r = rref(m);
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(r.reduced == FieldMatrix::from_rows(f5, {{1, 2}, {0, 0}}));

    // First nonzero entry in a column is chosen as pivot and scaled to 1.
    auto m2 = FieldMatrix::from_rows(f5, {{0, 3}, {2, 1}});
    Rref r2 = rref(m2);
    CHECK(r2.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r2.reduced == FieldMatrix::identity(f5, 2));
}

TEST_CASE("rank and kernel") {
    PrimeField f2(2);
    auto m = FieldMatrix::from_rows(f2, {{1, 1, 0}, {0, 0, 1}});
    CHECK(rank(m) == 2);
    FieldMatrix k = kernel_basis(m);
    CHECK(k.cols() == 1);
    CHECK(mul(m, k).is_zero());
    CHECK(k.col(0) == std::vector<std::int64_t>{1, 1, 0});

    // Kernel of a 0 x n matrix is everything.
    FieldMatrix empty(f2, 0, 3);
    CHECK(kernel_basis(empty).cols() == 3);

    // Kernel of an injective map is trivial.
    CHECK(kernel_basis(FieldMatrix::identity(f2, 3)).cols() == 0);
}

TEST_CASE("solve") {
    PrimeField f5(5);
    auto m = FieldMatrix::from_rows(f5, {{2}});
    auto b = FieldMatrix::from_rows(f5, {{1}});
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(x->at(0, 0) == 3);

    // Inconsistent system.
    auto m2 = FieldMatrix::from_rows(f5, {{1, 2}, {2, 4}});
    auto b2 = FieldMatrix::from_rows(f5, {{0}, {1}});
    CHECK(!solve(m2, b2).has_value());

    // Multi-column right-hand side.
    auto b3 = FieldMatrix::from_rows(f5, {{1, 2}, {2, 4}});
    auto x3 = solve(m2, b3);
    REQUIRE(x3.has_value());
    CHECK(mul(m2, *x3) == b3);
}

TEST_CASE("kron") {
    PrimeField f2(2);
    auto a = FieldMatrix::from_rows(f2, {{1, 1}});
    auto b = FieldMatrix::from_rows(f2, {{1}, {1}});
    auto k = kron(a, b);
    CHECK(k.rows() == 2);
    CHECK(k.cols() == 2);
    CHECK(k == FieldMatrix::from_rows(f2, {{1, 1}, {1, 1}}));

    // Mixed-product property: kron(AC, BD) = kron(A,B) kron(C,D).
    PrimeField f3(3);
    auto A = FieldMatrix::from_rows(f3, {{1, 2}, {0, 1}});
    auto C = FieldMatrix::from_rows(f3, {{2, 1}, {1, 1}});
    auto B = FieldMatrix::from_rows(f3, {{1, 0}, {2, 2}});
    auto D = FieldMatrix::from_rows(f3, {{0, 1}, {1, 2}});
    CHECK(kron(mul(A, C), mul(B, D)) == mul(kron(A, B), kron(C, D)));
}

TEST_CASE("vec/unvec round trip and the Kronecker-vec identity") {
    PrimeField f5(5);
    auto x = FieldMatrix::from_rows(f5, {{1, 2, 3}, {4, 0, 1}});
    CHECK(unvec_columns(vec_columns(x), 2, 3) == x);

    auto a = FieldMatrix::from_rows(f5, {{1, 2}, {3, 4}});
    auto b = FieldMatrix::from_rows(f5, {{0, 1, 2}, {2, 0, 1}, {1, 1, 0}});
    // vec(A X B) = kron(B^T, A) vec(X)
    CHECK(vec_columns(mul(a, mul(x, b))) == mul(kron(b.transpose(), a), vec_columns(x)));
}

TEST_CASE("row spaces canonicalize subspaces") {
    PrimeField f2(2);
    auto s1 = RowSpace::from_rows(FieldMatrix::from_rows(f2, {{1, 1, 0}, {0, 1, 1}}));
    auto s2 = RowSpace::from_rows(FieldMatrix::from_rows(f2, {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}));
    CHECK(s1 == s2);
    CHECK(s1.dim() == 2);
    CHECK(s1.contains_col({1, 0, 1}));
    CHECK(!s1.contains_col({1, 0, 0}));

    auto proj = s1.quotient_projection();
    auto sec = s1.quotient_section();
    CHECK(proj.rows() == 1);
    CHECK(mul(proj, sec) == FieldMatrix::identity(f2, 1));
    // The projection kills the subspace.
    CHECK(mul(proj, s1.basis_columns()).is_zero());

    auto sum = RowSpace::sum(s1, RowSpace::from_rows(FieldMatrix::from_rows(f2, {{1, 0, 0}})));
    CHECK(sum.dim() == 3);
}

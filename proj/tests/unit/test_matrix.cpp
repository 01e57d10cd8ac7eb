#include "polysum/matrix.hpp"

#include "polysum/errors.hpp"
#include "polysum/rng.hpp"

#include <doctest.h>

using namespace polysum;

namespace {

Rational R(long n) { return Rational(n); }

Matrix random_matrix(SplitMix64& rng, std::size_t m, std::size_t n, long bound = 4) {
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(rng.range(-bound, bound));
    return a;
}

} // namespace

TEST_CASE("rref: identity and zero") {
    auto idr = rref(Matrix::identity(2));
    CHECK(idr.r == Matrix::identity(2));
    CHECK(idr.rank == 2);
    CHECK(idr.pivot_cols == std::vector<std::size_t>{0, 1});

    auto zr = rref(Matrix(2, 3));
    CHECK(zr.r == Matrix(2, 3));
    CHECK(zr.rank == 0);
    CHECK(zr.pivot_cols.empty());
}

TEST_CASE("rref of a rank-one matrix") {
    Matrix m{{R(2), R(4)}, {R(1), R(2)}};
    auto rr = rref(m);
    CHECK(rr.r == Matrix{{R(1), R(2)}, {R(0), R(0)}});
    CHECK(rr.rank == 1);
    CHECK(rr.pivot_cols == std::vector<std::size_t>{0});
    // row operations are invertible: same row space, same rank
    CHECK(rank(m.vstack(rr.r)) == rr.rank);
}

TEST_CASE("rref is idempotent on random matrices") {
    SplitMix64 rng(3);
    for (int t = 0; t < 50; ++t) {
        Matrix m = random_matrix(rng, 1 + rng.below(4), 1 + rng.below(5));
        auto rr = rref(m);
        auto rr2 = rref(rr.r);
        CHECK(rr2.r == rr.r);
        CHECK(rr2.rank == rr.rank);
        CHECK(rank(m.vstack(rr.r)) == rr.rank);
    }
}

TEST_CASE("kernel basis spans the null space exactly") {
    CHECK(kernel_basis(Matrix::identity(2)).empty());

    auto one_eq = kernel_basis(Matrix{{R(1), R(1)}});
    REQUIRE(one_eq.size() == 1);
    CHECK(is_zero(mul(Matrix{{R(1), R(1)}}, one_eq[0])));

    Matrix m{{R(1), R(2), R(3)}, {R(0), R(1), R(1)}};
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 1);
    CHECK(is_zero(mul(m, basis[0])));
}

TEST_CASE("rank plus nullity equals the column count") {
    SplitMix64 rng(17);
    for (int t = 0; t < 60; ++t) {
        Matrix m = random_matrix(rng, 1 + rng.below(4), 1 + rng.below(5));
        auto basis = kernel_basis(m);
        CHECK(rank(m) + basis.size() == m.cols());
        for (const auto& v : basis) CHECK(is_zero(mul(m, v)));
    }
}

TEST_CASE("solve: identity, inconsistent, diagonal") {
    CHECK(*solve(Matrix::identity(2), {R(3), R(5)}) == Vec{R(3), R(5)});
    CHECK_FALSE(solve(Matrix{{R(1), R(1)}, {R(1), R(1)}}, {R(1), R(2)}).has_value());
    CHECK(*solve(Matrix{{R(2), R(0)}, {R(0), R(4)}}, {R(1), R(1)}) ==
          Vec{Rational(1, 2), Rational(1, 4)});
}

TEST_CASE("solve rejects mismatched dimensions") {
    CHECK_THROWS_AS(solve(Matrix::identity(2), {R(1)}), ContractError);
}

TEST_CASE("solve round trip on random full-column-rank systems") {
    SplitMix64 rng(23);
    int done = 0;
    while (done < 40) {
        std::size_t n = 1 + rng.below(4);
        std::size_t m = n + rng.below(3);
        Matrix a = random_matrix(rng, m, n);
        if (rank(a) != n) continue;
        Vec x(n);
        for (auto& e : x) e = Rational(rng.range(-6, 6), rng.range(1, 4));
        auto sol = solve(a, mul(a, x));
        REQUIRE(sol.has_value());
        CHECK(*sol == x);
        ++done;
    }
}

TEST_CASE("outer product and block helpers") {
    Matrix ab = outer({R(1), R(2)}, {R(3), R(4)});
    CHECK(ab == Matrix{{R(3), R(4)}, {R(6), R(8)}});
    Matrix h = Matrix::identity(2).hstack(Matrix(2, 1));
    CHECK(h.cols() == 3);
    CHECK(h.at(0, 2).is_zero());
    CHECK(h.drop_cols({2}) == Matrix::identity(2));
    CHECK(h.select_cols({1}).at(1, 0) == R(1));
}

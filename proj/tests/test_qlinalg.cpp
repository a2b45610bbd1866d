#include <random>

#include "dgdef/matrix.hpp"
#include "doctest.h"

using namespace dgdef;

namespace {

RatMatrix make(std::size_t r, std::size_t c, std::vector<int> entries) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entries[i * c + j];
    return m;
}

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> dist(-3, 3);
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dist(rng);
    return m;
}

}  // namespace

TEST_CASE("kernel_basis on the spec examples") {
    CHECK(kernel_basis(RatMatrix::identity(2)).empty());

    auto kz = kernel_basis(RatMatrix(2, 2));
    REQUIRE(kz.size() == 2);
    CHECK(kz[0] == Vec{1, 0});
    CHECK(kz[1] == Vec{0, 1});

    auto k = kernel_basis(make(2, 2, {1, 2, 2, 4}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vec{-2, 1});
}

TEST_CASE("solve: canonical particular solutions") {
    auto x = solve(RatMatrix::identity(2), Vec{3, 5});
    REQUIRE(x);
    CHECK(*x == Vec{3, 5});

    auto y = solve(make(1, 2, {1, 1}), Vec{2});
    REQUIRE(y);
    CHECK(*y == Vec{2, 0});  // free variable zeroed

    CHECK(!solve(RatMatrix(1, 1), Vec{1}));
    CHECK_THROWS_AS(solve(RatMatrix::identity(2), Vec{1}), std::invalid_argument);
}

TEST_CASE("subquotient dimensions") {
    // d_in = 0 into Q^2, d_out = 0
    CHECK(subquotient(RatMatrix(2, 0), RatMatrix(0, 2)).dim == 2);
    // exact complex: d_in = id on Q, d_out = 0
    CHECK(subquotient(RatMatrix::identity(1), RatMatrix(0, 1)).dim == 0);
    // both zero on Q
    CHECK(subquotient(make(1, 1, {0}), make(1, 1, {0})).dim == 1);
    CHECK_THROWS_AS(subquotient(RatMatrix::identity(1), RatMatrix::identity(1)),
                    std::invalid_argument);
}

TEST_CASE("rank-nullity and solve certificate on random matrices") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
        RatMatrix m = random_matrix(rng, r, c);
        CHECK(m.rank() + kernel_basis(m).size() == m.cols());
        for (auto& v : kernel_basis(m)) CHECK(is_zero(m.apply(v)));

        Vec b(r);
        std::uniform_int_distribution<int> dist(-3, 3);
        for (auto& x : b) x = dist(rng);
        auto sol = solve(m, b);
        if (sol) {
            CHECK(m.apply(*sol) == b);
        } else {
            // b outside the column space: augmenting raises the rank
            RatMatrix aug = m.hstack(RatMatrix::from_columns(r, {b}));
            CHECK(aug.rank() == m.rank() + 1);
        }
        // determinism
        auto again = solve(m, b);
        CHECK(bool(sol) == bool(again));
        if (sol) CHECK(*sol == *again);
    }
}

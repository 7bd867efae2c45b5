#include <random>

#include "catch_amalgamated.hpp"
#include "moorehom/lattice.hpp"
#include "oracles.hpp"

using moore::Integer;
using moore::IntegerMatrix;
using moore::Lattice;

TEST_CASE("Hermite form is canonical under generator reordering") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        IntegerMatrix G = oracle::random_matrix(rng, 4, 3 + it % 3, -6, 6);
        IntegerMatrix P = G;
        for (size_t j = 0; j + 1 < P.cols(); j += 2) P.swap_cols(j, j + 1);
        P.add_col_multiple(0, P.cols() - 1, Integer(5));
        P.negate_col(1);
        CHECK(Lattice::span(G) == Lattice::span(P));
    }
}

TEST_CASE("kernel is exactly the integer null space") {
    std::mt19937_64 rng(6);
    for (int it = 0; it < 200; ++it) {
        IntegerMatrix M = oracle::random_matrix(rng, 1 + it % 3, 4 + it % 3, -5, 5);
        Lattice K = Lattice::kernel(M);
        CHECK(K.rank() + moore::matrix_rank(M) == M.cols());
        CHECK((M * K.basis()).is_zero());
        // Saturation: 2v in K implies v in K, checked on a sample of vectors.
        IntegerMatrix B = K.basis();
        for (size_t j = 0; j < B.cols(); ++j) {
            auto v = B.column(j);
            CHECK(K.contains(v));
        }
        std::uniform_int_distribution<int64_t> d(-3, 3);
        moore::IntVector w(M.cols());
        for (auto& x : w) x = d(rng);
        CHECK(K.contains(w) == moore::is_zero_vector(M.apply(w)));
    }
}

TEST_CASE("solve_integer finds integer solutions exactly when they exist") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 300; ++it) {
        IntegerMatrix M = oracle::random_matrix(rng, 3, 3, -4, 4);
        std::uniform_int_distribution<int64_t> d(-3, 3);
        moore::IntVector x(3);
        for (auto& v : x) v = d(rng);
        auto b = M.apply(x);
        auto sol = moore::solve_integer(M, b);
        REQUIRE(sol.has_value());
        CHECK(M.apply(*sol) == b);
    }
    auto none = moore::solve_integer(IntegerMatrix::from_rows({{2, 0}, {0, 2}}), moore::to_int_vector({1, 0}));
    CHECK_FALSE(none.has_value());
}

TEST_CASE("coordinates, containment and sums") {
    Lattice L = Lattice::span(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(L.contains(moore::to_int_vector({4, -3})));
    CHECK_FALSE(L.contains(moore::to_int_vector({1, 0})));
    Lattice M = Lattice::span(IntegerMatrix::from_rows({{3}, {0}}));
    Lattice S = L + M;
    CHECK(S.contains(moore::to_int_vector({1, 0})));
    CHECK(S.contains(L));
    CHECK_FALSE(L.contains(S));
    CHECK(Lattice::full(2).contains(S));
    auto c = L.coordinates(moore::to_int_vector({4, 9}));
    REQUIRE(c.has_value());
    CHECK(L.basis().apply(*c) == moore::to_int_vector({4, 9}));
}

#include <numeric>
#include <random>

#include "catch_amalgamated.hpp"
#include "moorehom/abelian.hpp"
#include "oracles.hpp"

using moore::FinAbGroup;
using moore::GroupHom;
using moore::Integer;
using moore::IntegerMatrix;
using moore::PresentedGroup;

namespace {

FinAbGroup G(const std::string& s) {
    return FinAbGroup::parse(s);
}

FinAbGroup random_group(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> rank(0, 2), count(0, 3), order(0, 12);
    moore::IntVector t;
    for (int i = count(rng); i > 0; --i) t.emplace_back(order(rng));
    return FinAbGroup::from_summands(static_cast<size_t>(rank(rng)), t);
}

}  // namespace

TEST_CASE("normal form and rendering") {
    CHECK(FinAbGroup::from_summands(0, moore::to_int_vector({2, 3})) == FinAbGroup::cyclic(Integer(6)));
    CHECK(FinAbGroup::from_summands(0, moore::to_int_vector({0, 1, 4, 6})).to_string() == "Z ⊕ Z/2 ⊕ Z/12");
    CHECK(FinAbGroup::trivial().to_string() == "0");
    CHECK(FinAbGroup::free(2).to_string() == "Z^2");
    CHECK(G("Z/12").to_string(true) == "Z/3 ⊕ Z/4");
    CHECK(G("z^2 + z/4") == FinAbGroup::from_summands(2, moore::to_int_vector({4})));
    CHECK(G("Z/3 ⊕ Z ⊕ Z/5") == FinAbGroup::from_summands(1, moore::to_int_vector({15})));
    CHECK_THROWS(G("Q"));
    CHECK_THROWS(G("Z/"));
}

TEST_CASE("group_of on small presentations") {
    CHECK(moore::group_of(IntegerMatrix::from_rows({{3}})) == G("Z/3"));
    CHECK(moore::group_of(IntegerMatrix(2, 2)) == G("Z^2"));
    CHECK(moore::group_of(IntegerMatrix::from_rows({{2, 4}, {6, 8}})) == G("Z/2 + Z/4"));
    CHECK(moore::group_of(IntegerMatrix::identity(3)) == FinAbGroup::trivial());
    for (int64_t n = 2; n <= 9; ++n) {
        IntegerMatrix M = IntegerMatrix::identity(static_cast<size_t>(n));
        for (size_t i = 0; i < static_cast<size_t>(n); ++i)
            for (size_t j = 0; j < static_cast<size_t>(n); ++j) M(i, j) -= Integer(1);
        CHECK(moore::group_of(M) == FinAbGroup::cyclic(Integer(n - 1)));
    }
}

TEST_CASE("tensor, Tor and direct sums of named groups") {
    CHECK(moore::tensor(G("Z"), G("Z/6")) == G("Z/6"));
    CHECK(moore::tensor(G("Z/4"), G("Z/6")) == G("Z/2"));
    CHECK(moore::tensor(FinAbGroup(), G("Z^3 + Z/5")) == FinAbGroup());
    CHECK(moore::tor1(G("Z"), G("Z/6")) == FinAbGroup());
    CHECK(moore::tor1(G("Z/4"), G("Z/6")) == G("Z/2"));
    CHECK(moore::tor1(G("Z/3"), G("Z/5")) == FinAbGroup());
    CHECK(moore::direct_sum({G("Z/2"), G("Z/3")}) == G("Z/6"));
    CHECK(moore::direct_sum({G("Z/3"), G("Z"), G("Z/5")}) == G("Z + Z/15"));
    CHECK(moore::direct_sum({}) == FinAbGroup());
}

TEST_CASE("functor identities on random groups") {
    std::mt19937_64 rng(17);
    const FinAbGroup Z = FinAbGroup::free(1);
    for (int it = 0; it < 500; ++it) {
        FinAbGroup a = random_group(rng), b = random_group(rng), c = random_group(rng);
        CHECK(moore::tensor(a, b) == moore::tensor(b, a));
        CHECK(moore::tor1(a, b) == moore::tor1(b, a));
        CHECK(moore::tensor(a, Z) == a);
        CHECK(moore::tor1(a, Z) == FinAbGroup());
        CHECK(moore::direct_sum({a, moore::direct_sum({b, c})}) == moore::direct_sum({moore::direct_sum({c, a}), b}));
        CHECK(FinAbGroup::parse(a.to_string()) == a);
        CHECK(FinAbGroup::parse(a.to_string(true)) == a);
        for (size_t i = 0; i + 1 < a.torsion().size(); ++i) CHECK(moore::divides(a.torsion()[i], a.torsion()[i + 1]));
        if (a.is_finite()) {
            // k-torsion counts are multiplicative over coprime k.
            CHECK(a.count_killed_by(Integer(12)) == a.count_killed_by(Integer(4)) * a.count_killed_by(Integer(3)));
            CHECK(a.count_killed_by(Integer(0)) == *a.order());
        }
    }
}

TEST_CASE("group_of is invariant under unimodular changes of basis") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 100; ++it) {
        IntegerMatrix M = oracle::random_matrix(rng, 3, 4, -6, 6);
        IntegerMatrix L = IntegerMatrix::identity(3), R = IntegerMatrix::identity(4);
        L.add_row_multiple(0, 1, Integer(3));
        L.add_row_multiple(2, 0, Integer(-2));
        L.swap_rows(1, 2);
        R.add_col_multiple(3, 0, Integer(5));
        R.negate_col(2);
        CHECK(moore::group_of(L * M * R) == moore::group_of(M));
    }
}

TEST_CASE("middle homology on small sequences") {
    const PresentedGroup zero(0, IntegerMatrix(0, 0));
    const PresentedGroup Z(1, IntegerMatrix(1, 0));
    const PresentedGroup Z2 = PresentedGroup::diagonal(moore::to_int_vector({2}));
    GroupHom f0(zero, Z, IntegerMatrix(1, 0)), g0(Z, zero, IntegerMatrix(0, 1));
    CHECK(moore::middle_homology(f0, g0) == G("Z"));

    GroupHom twice(Z, Z, IntegerMatrix::from_rows({{2}})), quotient(Z, Z2, IntegerMatrix::from_rows({{1}}));
    CHECK(moore::middle_homology(twice, quotient).is_trivial());

    GroupHom id(Z, Z, IntegerMatrix::identity(1));
    CHECK_THROWS_WITH(moore::middle_homology(id, quotient), Catch::Matchers::ContainsSubstring("composite nonzero"));
    CHECK_THROWS_WITH(moore::middle_homology(quotient, twice), Catch::Matchers::ContainsSubstring("mismatched node"));
    CHECK_THROWS(GroupHom(Z2, Z, IntegerMatrix::from_rows({{1}})));
}

TEST_CASE("middle homology agrees with exhaustive enumeration on finite groups") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int64_t> ord(1, 6), coef(-5, 5), mult(1, 2);
    auto pres = [](const std::vector<int64_t>& o) {
        moore::IntVector v;
        for (auto x : o) v.emplace_back(x);
        return PresentedGroup::diagonal(v);
    };
    auto to_matrix = [](const std::vector<std::vector<int64_t>>& m, size_t cols) {
        IntegerMatrix M(m.size(), cols);
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < cols; ++j) M(i, j) = m[i][j];
        return M;
    };
    for (int it = 0; it < 150; ++it) {
        std::vector<int64_t> B{ord(rng), ord(rng)}, C{ord(rng), ord(rng)};
        int64_t expB = std::lcm(B[0], B[1]);
        // g_ij must be a multiple of C_i / gcd(B_j, C_i) to be well defined.
        std::vector<std::vector<int64_t>> g(2, std::vector<int64_t>(2));
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) g[i][j] = coef(rng) * (C[i] / std::gcd(B[j], C[i]));
        // Columns of f are random elements of ker g; A's orders kill all of B.
        std::vector<std::vector<int64_t>> kernel;
        for (int64_t x = 0; x < B[0]; ++x)
            for (int64_t y = 0; y < B[1]; ++y) {
                bool zero = true;
                for (size_t i = 0; i < 2; ++i) zero = zero && ((g[i][0] * x + g[i][1] * y) % C[i] == 0);
                if (zero) kernel.push_back({x, y});
            }
        std::vector<int64_t> A{expB * mult(rng), expB * mult(rng)};
        std::uniform_int_distribution<size_t> pick(0, kernel.size() - 1);
        std::vector<std::vector<int64_t>> f(2, std::vector<int64_t>(2));
        for (size_t j = 0; j < 2; ++j) {
            auto v = kernel[pick(rng)];
            f[0][j] = v[0];
            f[1][j] = v[1];
        }
        GroupHom F(pres(A), pres(B), to_matrix(f, 2)), Gm(pres(B), pres(C), to_matrix(g, 2));
        FinAbGroup h = moore::middle_homology(F, Gm);
        REQUIRE(h.order().has_value());
        CHECK(*h.order() == Integer(static_cast<int64_t>(oracle::middle_homology_order(A, B, C, f, g))));
    }
}

TEST_CASE("subquotient classification") {
    // K = Z^2, B = span{(2,0), (0,3)}: K/B = Z/6.
    moore::Subquotient sq(moore::Lattice::full(2), IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(sq.group() == G("Z/6"));
    CHECK(sq.is_trivial_class(moore::to_int_vector({4, -3})));
    CHECK_FALSE(sq.is_trivial_class(moore::to_int_vector({1, 0})));
    auto c = sq.classify(moore::to_int_vector({1, 1}));
    REQUIRE(c.has_value());
    CHECK(c->size() == 1);
    CHECK(moore::gcd((*c)[0], Integer(6)) == Integer(1));  // (1,1) generates Z/6
    moore::Subquotient half(moore::Lattice::span(IntegerMatrix::from_rows({{2}, {0}})), IntegerMatrix::from_rows({{4}, {0}}));
    CHECK_FALSE(half.classify(moore::to_int_vector({1, 0})).has_value());
}

#include <map>
#include <numeric>

#include "catch_amalgamated.hpp"
#include "moorehom/sft.hpp"
#include "moorehom/uct.hpp"
#include "oracles.hpp"

using moore::FamilySpec;
using moore::FinAbGroup;
using moore::Integer;
using moore::IntegerMatrix;

namespace {

FinAbGroup G(const std::string& s) {
    return FinAbGroup::parse(s);
}

// H_1(;Z/q) of the family as (gcd, lcm) of the two cyclic factors.
std::vector<std::pair<int64_t, int64_t>> h1_table(int64_t n, int64_t m, int64_t qmax) {
    std::vector<std::pair<int64_t, int64_t>> out;
    for (int64_t q = 1; q <= qmax; ++q) out.push_back(oracle::two_cyclic_type(std::gcd(n - 1, q), std::gcd(m - 1, q)));
    return out;
}

std::vector<std::pair<FamilySpec, FamilySpec>> brute_force_collisions(int64_t B, int64_t qmax) {
    std::vector<FamilySpec> specs;
    for (int64_t n = 2; n <= B; ++n)
        for (int64_t m = n; m <= B; ++m) specs.push_back({n, m});
    std::vector<std::pair<FamilySpec, FamilySpec>> out;
    for (size_t i = 0; i < specs.size(); ++i)
        for (size_t j = i + 1; j < specs.size(); ++j)
            if (h1_table(specs[i].n, specs[i].m, qmax) == h1_table(specs[j].n, specs[j].m, qmax))
                out.emplace_back(specs[i], specs[j]);
    return out;
}

IntegerMatrix identity_minus_transpose(const IntegerMatrix& A) {
    return IntegerMatrix::identity(A.rows()) - A.transposed();
}

}  // namespace

TEST_CASE("full shift homology") {
    CHECK(moore::full_shift_homology(2)[0].is_trivial());
    CHECK(moore::full_shift_homology(5)[0] == G("Z/4"));
    for (int64_t n = 2; n <= 12; ++n) {
        auto h = moore::full_shift_homology(n);
        REQUIRE(h.size() == 4);
        for (size_t k = 1; k < 4; ++k) CHECK(h[k].is_trivial());
        auto s = moore::sft_matrix_homology(moore::full_shift_matrix(size_t(n)));
        CHECK(s.h0 == h[0]);
        CHECK(s.h1 == h[1]);
        if (n > 6) continue;  // cofactor expansion is exponential
        // Invariant factors of I - J^T from determinantal divisors.
        auto f = oracle::determinantal_invariant_factors(identity_minus_transpose(moore::full_shift_matrix(size_t(n))));
        CHECK(f.back() == Integer(n - 1));
        for (size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i] == Integer(1));
    }
    CHECK_THROWS(moore::full_shift_homology(1));
}

TEST_CASE("general SFT matrices") {
    CHECK(moore::sft_matrix_homology(IntegerMatrix::identity(1)) == moore::SftHomology{G("Z"), G("Z")});
    // Golden mean shift: I - A^T = [[0,-1],[-1,1]] is unimodular, so both groups vanish.
    CHECK(moore::sft_matrix_homology(IntegerMatrix::from_rows({{1, 1}, {1, 0}})) == moore::SftHomology{G("0"), G("0")});
    CHECK(oracle::determinantal_invariant_factors(identity_minus_transpose(IntegerMatrix::from_rows({{1, 1}, {1, 0}}))) ==
          std::vector<Integer>{Integer(1), Integer(1)});
    CHECK(moore::sft_matrix_homology(IntegerMatrix::from_rows({{2, 1}, {1, 1}})).h0 == G("Z/1"));
    CHECK(moore::sft_matrix_homology(IntegerMatrix::from_rows({{0, 1}, {1, 0}})) == moore::SftHomology{G("Z"), G("Z")});
    CHECK_THROWS_WITH(moore::sft_matrix_homology(IntegerMatrix(2, 3)), Catch::Matchers::StartsWith("degenerate matrix"));
    CHECK_THROWS_WITH(moore::sft_matrix_homology(IntegerMatrix::from_rows({{1, -1}, {1, 1}})),
                      Catch::Matchers::StartsWith("degenerate matrix"));
    CHECK_THROWS_WITH(moore::sft_matrix_homology(IntegerMatrix::from_rows({{1, 0}, {1, 0}})),
                      Catch::Matchers::StartsWith("degenerate matrix"));
}

TEST_CASE("family closed forms") {
    CHECK(moore::family_integral({4, 6})[0] == G("Z + Z/15"));
    CHECK(moore::family_integral({2, 2})[0] == G("Z"));
    CHECK(moore::family_mod({4, 6}, 6).h1 == G("Z/3"));
    CHECK(moore::family_mod({3, 3}, 4).h0 == G("Z/4 + Z/2 + Z/2"));
    CHECK(moore::family_mod({5, 7}, 1).h0.is_trivial());
    CHECK(moore::family_mod({5, 7}, 1).h1.is_trivial());
    CHECK_THROWS(moore::family_integral({1, 3}));

    for (int64_t n = 2; n <= 9; ++n)
        for (int64_t m = 2; m <= 9; ++m) {
            FamilySpec s{n, m};
            auto integral = moore::family_integral(s);
            // Degreewise direct sum of the components.
            for (size_t k = 0; k < 4; ++k) {
                FinAbGroup point = k == 0 ? G("Z") : G("0");
                CHECK(integral[k] == moore::direct_sum({moore::full_shift_homology(n)[k], point,
                                                        moore::full_shift_homology(m)[k]}));
            }
            for (int64_t q = 1; q <= 60; ++q) {
                auto row = moore::family_mod(s, q);
                CHECK(row.h0 == moore::uct_assemble(integral[0], G("0"), FinAbGroup::cyclic(Integer(q))).assembled);
                CHECK(row.h1 == moore::uct_assemble(integral[1], integral[0], FinAbGroup::cyclic(Integer(q))).assembled);
                // Exponent divides q.
                for (const auto& t : row.h0.torsion()) CHECK(moore::divides(t, Integer(q)));
                auto [g, l] = oracle::two_cyclic_type(std::gcd(n - 1, q), std::gcd(m - 1, q));
                CHECK(row.h1 == moore::FinAbGroup::from_summands(0, moore::to_int_vector({g, l})));
            }
        }
    auto table = moore::family_table({4, 6}, 12);
    REQUIRE(table.size() == 12);
    for (size_t i = 0; i < table.size(); ++i) CHECK(table[i] == moore::family_mod({4, 6}, int64_t(i + 1)));
}

TEST_CASE("the gcd identity behind the 3,4 versus 7,2 collision") {
    for (int64_t q = 1; q <= 2520; ++q)
        CHECK(oracle::two_cyclic_type(std::gcd(2, q), std::gcd(3, q)) == oracle::two_cyclic_type(std::gcd(6, q), 1));
}

TEST_CASE("collision search agrees with a brute-force table comparison") {
    auto c9 = moore::collision_search(9, 2520);
    CHECK(c9 == brute_force_collisions(9, 2520));
    REQUIRE(c9.size() == 1);
    CHECK(c9[0].first == FamilySpec{2, 7});
    CHECK(c9[0].second == FamilySpec{3, 4});
    CHECK(moore::collision_search(5, 60) == brute_force_collisions(5, 60));
    CHECK(moore::collision_search(5, 60).empty());
    for (const auto& [a, b] : moore::collision_search(12, 200)) {
        CHECK(a < b);
        CHECK(a == a.canonical());
        CHECK(b == b.canonical());
        for (int64_t q = 1; q <= 200; ++q) CHECK(moore::family_mod(a, q).h1 == moore::family_mod(b, q).h1);
    }
}

TEST_CASE("classify is sound") {
    for (int64_t n = 2; n <= 9; ++n)
        for (int64_t m = 2; m <= 9; ++m) {
            auto r = moore::classify(moore::family_h1_oracle({n, m}), 9);
            FamilySpec want = FamilySpec{n, m}.canonical();
            CHECK(std::find(r.candidates.begin(), r.candidates.end(), want) != r.candidates.end());
            CHECK(std::is_sorted(r.candidates.begin(), r.candidates.end()));
        }
    CHECK(moore::classify(moore::family_h1_oracle({4, 4}), 9).candidates == std::vector<FamilySpec>{{4, 4}});
    CHECK(moore::classify(moore::family_h1_oracle({2, 2}), 9).candidates == std::vector<FamilySpec>{{2, 2}});
    CHECK(moore::classify(moore::family_h1_oracle({3, 4}), 9).candidates == std::vector<FamilySpec>{{2, 7}, {3, 4}});

    auto r = moore::classify(moore::family_h1_oracle({4, 6}), 9);
    for (const auto& p : r.probes) {
        CHECK(p.q > 1);
        CHECK(p.valuations.first <= p.valuations.second);
        CHECK(p.valuations.second <= p.ell);
    }
    moore::H1Oracle bogus = [](int64_t q) { return FinAbGroup::cyclic(Integer(q)); };
    CHECK_THROWS_WITH(moore::classify(bogus, 9), Catch::Matchers::ContainsSubstring("no candidate"));
}

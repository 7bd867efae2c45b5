#ifndef MOOREHOM_SFT_HPP
#define MOOREHOM_SFT_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "moorehom/abelian.hpp"

namespace moore {

/// H_{n,m} = S_n ⊔ I ⊔ S_m with full shifts S_n, S_m and a one-point unit groupoid I.
struct FamilySpec {
    int64_t n = 2;
    int64_t m = 2;

    /// Throws std::invalid_argument unless n, m >= 2.
    void check() const;
    /// Unordered form (n <= m).
    FamilySpec canonical() const;
    friend bool operator==(const FamilySpec& a, const FamilySpec& b) = default;
    friend auto operator<=>(const FamilySpec& a, const FamilySpec& b) = default;
};

/// [Z/(n-1), 0, 0, ...] for degrees 0..degrees-1.
std::vector<FinAbGroup> full_shift_homology(int64_t n, size_t degrees = 4);

/// Square nonnegative adjacency matrix with no zero rows or columns.
struct SftHomology {
    FinAbGroup h0;  ///< coker(I - A^T)
    FinAbGroup h1;  ///< ker(I - A^T)
    friend bool operator==(const SftHomology& a, const SftHomology& b) = default;
};
SftHomology sft_matrix_homology(const IntegerMatrix& A);
/// Full-shift adjacency matrix: n x n, all ones.
IntegerMatrix full_shift_matrix(size_t n);

/// H_0 = Z/(n-1) ⊕ Z ⊕ Z/(m-1), zero above, for degrees 0..degrees-1.
std::vector<FinAbGroup> family_integral(const FamilySpec& spec, size_t degrees = 4);

struct GcdRow {
    int64_t q = 1;
    FinAbGroup h0, h1;
    friend bool operator==(const GcdRow& a, const GcdRow& b) = default;
};
/// H_0(;Z/q) = Z/q ⊕ Z/gcd(n-1,q) ⊕ Z/gcd(m-1,q), H_1(;Z/q) = Z/gcd(n-1,q) ⊕ Z/gcd(m-1,q).
GcdRow family_mod(const FamilySpec& spec, int64_t q);
std::vector<GcdRow> family_table(const FamilySpec& spec, int64_t qmax);

using H1Oracle = std::function<FinAbGroup(int64_t q)>;
H1Oracle family_h1_oracle(const FamilySpec& spec);

struct Probe {
    int64_t p = 0;
    int ell = 0;
    int64_t q = 0;
    FinAbGroup h1;
    std::pair<int, int> valuations;  ///< unordered exponents, smaller first
};

struct ClassifyResult {
    std::vector<Probe> probes;
    std::vector<FamilySpec> candidates;  ///< canonical, sorted
};

/// Probes q = p^ℓ for primes p <= B-1 and ℓ <= floor(log2 B) and returns all
/// {n, m} with n, m <= B matching every probe. Throws std::runtime_error
/// ("no candidate ≤ B") when nothing matches.
ClassifyResult classify(const H1Oracle& oracle, int64_t bound);

/// Unordered pairs of distinct specs with n, m <= B whose H_1(;Z/q) agree for
/// all q <= qmax; each pair is (smaller, larger) in canonical order.
std::vector<std::pair<FamilySpec, FamilySpec>> collision_search(int64_t bound, int64_t qmax);

}  // namespace moore

#endif  // MOOREHOM_SFT_HPP

#ifndef MOOREHOM_UCT_HPP
#define MOOREHOM_UCT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "moorehom/groupoid.hpp"

namespace moore {

struct UctParts {
    FinAbGroup tensor_part;
    FinAbGroup tor_part;
    FinAbGroup assembled;
};

/// (Hn ⊗ A) ⊕ Tor(Hn_1, A).
UctParts uct_assemble(const FinAbGroup& Hn, const FinAbGroup& Hn_1, const FinAbGroup& A);

struct UctReport {
    size_t degree = 0;
    FinAbGroup integral_n;
    FinAbGroup integral_nminus1;
    FinAbGroup coefficient;
    FinAbGroup tensor_part;
    FinAbGroup tor_part;
    FinAbGroup assembled;
    FinAbGroup direct;
    bool match = false;
    /// |direct| = |tensor| * |tor| (only checked when all three are finite).
    bool order_equation = true;
};

/// One report per degree 0..N-1. The direct side is computed from Moore
/// complexes built with Z/t coefficients for each torsion summand of A, the
/// assembled side from integral homology.
std::vector<UctReport> uct_verify(const FiniteGroupoid& G, const FinAbGroup& A, size_t N,
                                  size_t budget = kDefaultNerveBudget);

/// The mod-q Moore complex equals the integral one with entries reduced mod q,
/// matrix for matrix.
bool phi_chain_check(const FiniteGroupoid& G, const Integer& q, size_t N, size_t budget = kDefaultNerveBudget);

struct KappaReport {
    size_t degree = 0;
    Integer q;
    FinAbGroup image;  ///< subgroup of H_n(;Z/q) generated by reduced integral cycles
    FinAbGroup direct;
    FinAbGroup tensor_part;
    FinAbGroup tor_part;
};

/// Reduces every integral cycle representative of H_n mod q and classifies it
/// in H_n(;Z/q). Checks that integral boundaries land on zero, that the image
/// has the iso type of H_n ⊗ Z/q, and that |direct| / |image| = |Tor(H_{n-1}, Z/q)|.
/// Throws AlgebraError("kappa image mismatch ...") with the offending cycle.
KappaReport kappa_check(const FiniteGroupoid& G, const Integer& q, size_t n, size_t budget = kDefaultNerveBudget);

/// num / 2^exp, kept in lowest terms.
struct Dyadic {
    Integer num;
    unsigned exp = 0;

    static Dyadic make(Integer num, unsigned exp);
    std::string to_string() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
};

struct Cylinder {
    std::vector<uint8_t> word;  ///< first k binary digits
    Dyadic inf, sup, width;
};

/// ξ(x) = Σ_{n≥1} 2^{-n} x_n on the 2^k level-k cylinders of {0,1}^N.
struct CantorReport {
    unsigned level = 0;
    std::vector<Cylinder> cylinders;
    bool all_widths_exact = false;  ///< every width equals 2^{-k}
    /// ξ(w000...) and ξ(w1000...) for the first cylinder; they differ, so ξ is
    /// constant on no level-k cylinder.
    Dyadic witness_low, witness_high;
    bool nonconstant = false;
};

CantorReport cantor_obstruction(unsigned k);

/// A locally constant function on level-k cylinders with values in Z (modulus
/// 0) or Z/q.
struct StepFunction {
    unsigned level = 0;
    Integer modulus;
    IntVector values;  ///< indexed by the cylinder word read as a binary number, first digit most significant
};

/// ξ = Σ_a χ_{U_a} ⊗ a with U_a = ξ^{-1}(a), a ≠ 0.
struct PhiPreimage {
    unsigned level = 0;
    std::vector<std::pair<Integer, std::vector<bool>>> terms;
};

StepFunction random_step_function(unsigned level, const Integer& modulus, std::mt19937_64& rng);
PhiPreimage phi_preimage(const StepFunction& f);
/// Φ(Σ χ_U ⊗ a) evaluated on every cylinder.
StepFunction phi_apply(const PhiPreimage& p, const Integer& modulus);

}  // namespace moore

#endif  // MOOREHOM_UCT_HPP

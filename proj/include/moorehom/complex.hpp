#ifndef MOOREHOM_COMPLEX_HPP
#define MOOREHOM_COMPLEX_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "moorehom/abelian.hpp"

namespace moore {

class ComplexError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// ∂_{n-1} ∂_n != 0; carries the degree and a column witnessing it.
class BoundarySquareError : public ComplexError {
  public:
    BoundarySquareError(size_t degree, size_t witness_column);
    size_t degree;
    size_t witness_column;
};

/// Asked for H_n with n >= max_degree: ∂_{n+1} was never built.
class TruncationError : public ComplexError {
  public:
    using ComplexError::ComplexError;
};

/// Free chain complex C_0 <- C_1 <- ... <- C_N over Z, or over Z/q when
/// `modulus` is q != 0 (entries are then only meaningful mod q).
struct FreeChainComplex {
    std::vector<size_t> dims;                  ///< dims[0..N]
    std::vector<IntegerMatrix> boundaries;     ///< boundaries[n-1] is ∂_n : C_n -> C_{n-1}, n = 1..N
    Integer modulus;                           ///< 0 for integer coefficients
    std::vector<std::vector<std::string>> basis_labels;  ///< optional, per degree

    size_t max_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
    /// ∂_n; ∂_0 is the zero map to the zero group.
    IntegerMatrix boundary(size_t n) const;
};

/// Throws ComplexError on shape mismatch, BoundarySquareError when some
/// ∂_{n-1} ∂_n is nonzero (mod the complex's modulus).
void validate(const FreeChainComplex& C);

struct HomologyResult {
    size_t degree = 0;
    Integer modulus;  ///< 0 for integral homology
    FinAbGroup group;
    PresentedGroup presentation;
    IntegerMatrix cycle_reps;  ///< dims[n] x generators
    Subquotient quotient;

    /// Coordinates of the class of a cycle, or nullopt if v is not a cycle.
    std::optional<IntVector> classify(std::span<const Integer> v) const { return quotient.classify(v); }
};

HomologyResult homology_int(const FreeChainComplex& C, size_t n);
/// Lattice method: cycles {v : ∂v ∈ qZ}, boundaries im ∂ + qZ. q = 0 falls
/// back to homology_int.
HomologyResult homology_mod(const FreeChainComplex& C, const Integer& q, size_t n);
/// Uses the complex's own modulus.
HomologyResult homology(const FreeChainComplex& C, size_t n);
/// H_n(C; A) for finitely generated A, summand by summand.
FinAbGroup homology_with(const FreeChainComplex& C, const FinAbGroup& A, size_t n);

/// Degreewise direct sum with block-diagonal boundaries.
FreeChainComplex shift_sum(const std::vector<FreeChainComplex>& parts);

}  // namespace moore

#endif  // MOOREHOM_COMPLEX_HPP

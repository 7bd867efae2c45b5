#ifndef MOOREHOM_LATTICE_HPP
#define MOOREHOM_LATTICE_HPP

#include <optional>
#include <span>

#include "moorehom/matrix.hpp"

namespace moore {

/// Row Hermite normal form T * A = H.
///
/// H has its nonzero rows first; each has a positive pivot strictly to the
/// right of the previous one, and entries above a pivot are reduced into
/// [0, pivot). T is unimodular (empty if not requested).
struct HermiteForm {
    IntegerMatrix H;
    IntegerMatrix T;
    size_t rank = 0;
};

HermiteForm row_hermite(const IntegerMatrix& A, bool with_transform);

/// A sublattice of Z^n held by its Hermite basis, so two lattices are equal
/// exactly when their stored bases are equal.
class Lattice {
  public:
    explicit Lattice(size_t ambient = 0) : ambient_(ambient), rows_(0, ambient) {}

    /// Span of the columns of `generators`.
    static Lattice span(const IntegerMatrix& generators);
    static Lattice full(size_t ambient);
    /// Trusts that `rows` is already in row Hermite form with no zero rows.
    static Lattice from_hermite_rows(IntegerMatrix rows);
    /// {x in Z^cols : M x = 0}; always saturated.
    static Lattice kernel(const IntegerMatrix& M);

    size_t ambient() const noexcept { return ambient_; }
    size_t rank() const noexcept { return rows_.rows(); }
    /// ambient x rank; column j is the j-th Hermite basis vector.
    IntegerMatrix basis() const { return rows_.transposed(); }
    const IntegerMatrix& hermite_rows() const noexcept { return rows_; }

    /// Coordinates in the Hermite basis, or nullopt if v is not in the lattice.
    std::optional<IntVector> coordinates(std::span<const Integer> v) const;
    bool contains(std::span<const Integer> v) const { return coordinates(v).has_value(); }
    bool contains(const Lattice& other) const;

    Lattice operator+(const Lattice& other) const;
    friend bool operator==(const Lattice& a, const Lattice& b) = default;

  private:
    size_t ambient_;
    IntegerMatrix rows_;
};

/// Some integer solution of M x = b, or nullopt if none exists.
std::optional<IntVector> solve_integer(const IntegerMatrix& M, std::span<const Integer> b);

/// Column rank over Q.
size_t matrix_rank(const IntegerMatrix& M);

}  // namespace moore

#endif  // MOOREHOM_LATTICE_HPP

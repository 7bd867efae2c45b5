#ifndef MOOREHOM_SMITH_HPP
#define MOOREHOM_SMITH_HPP

#include "moorehom/matrix.hpp"

namespace moore {

/// Which unimodular transforms to accumulate. Skipping V is the big saving
/// for homology: boundary matrices are wide and only the left side is
/// needed to pick generators.
struct SmithOptions {
    bool left = true;
    bool left_inverse = false;
    bool right = true;
};

/// U * M * V = D with U, V unimodular and D diagonal with diag[i] | diag[i+1].
/// Matrices that were not requested are left empty.
struct SmithDecomposition {
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;
    IntegerMatrix U_inverse;
    IntVector diag;  ///< length min(rows, cols), nonnegative, zeros trail

    size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntegerMatrix& M, const SmithOptions& options = {});

/// Diagonal only; no transforms.
IntVector smith_diagonal(const IntegerMatrix& M);

}  // namespace moore

#endif  // MOOREHOM_SMITH_HPP

#include "moorehom/complex.hpp"

namespace moore {

BoundarySquareError::BoundarySquareError(size_t deg, size_t witness)
    : ComplexError("boundary square nonzero at degree " + std::to_string(deg) + " (witness column " +
                   std::to_string(witness) + ")"),
      degree(deg),
      witness_column(witness) {}

IntegerMatrix FreeChainComplex::boundary(size_t n) const {
    if (n == 0) return IntegerMatrix(0, dims.at(0));
    return boundaries.at(n - 1);
}

void validate(const FreeChainComplex& C) {
    if (C.dims.empty()) throw ComplexError("shape mismatch: complex has no degrees");
    if (C.boundaries.size() != C.dims.size() - 1)
        throw ComplexError("shape mismatch: " + std::to_string(C.boundaries.size()) + " boundary maps for " +
                           std::to_string(C.dims.size()) + " degrees");
    for (size_t n = 1; n <= C.max_degree(); ++n) {
        const IntegerMatrix& d = C.boundaries[n - 1];
        if (d.rows() != C.dims[n - 1] || d.cols() != C.dims[n])
            throw ComplexError("shape mismatch at degree " + std::to_string(n) + ": boundary is " +
                               std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                               std::to_string(C.dims[n - 1]) + "x" + std::to_string(C.dims[n]));
    }
    for (size_t n = 2; n <= C.max_degree(); ++n) {
        IntegerMatrix sq = C.boundaries[n - 2] * C.boundaries[n - 1];
        if (!C.modulus.is_zero()) sq = sq.reduced_mod(C.modulus);
        for (size_t j = 0; j < sq.cols(); ++j)
            for (size_t i = 0; i < sq.rows(); ++i)
                if (!sq(i, j).is_zero()) throw BoundarySquareError(n, j);
    }
}

namespace {

void check_trusted(const FreeChainComplex& C, size_t n) {
    if (C.dims.empty() || n + 1 > C.max_degree())
        throw TruncationError("degree exceeds trusted truncation: H_" + std::to_string(n) +
                              " needs a complex built to degree " + std::to_string(n + 1) + ", have " +
                              std::to_string(C.max_degree()));
}

HomologyResult finish(size_t n, const Integer& modulus, Lattice K, const IntegerMatrix& boundary_gens) {
    Subquotient sq(std::move(K), boundary_gens);
    HomologyResult r{n, modulus, sq.group(), sq.presentation(), sq.representatives(), std::move(sq)};
    return r;
}

}  // namespace

HomologyResult homology_int(const FreeChainComplex& C, size_t n) {
    check_trusted(C, n);
    if (!C.modulus.is_zero()) throw ComplexError("homology_int called on a complex with modulus " + C.modulus.to_string());
    Lattice K = n == 0 ? Lattice::full(C.dims[0]) : Lattice::kernel(C.boundaries[n - 1]);
    return finish(n, Integer(0), std::move(K), C.boundaries[n]);
}

HomologyResult homology_mod(const FreeChainComplex& C, const Integer& q, size_t n) {
    if (q.sign() < 0) throw ComplexError("negative modulus");
    if (q.is_zero()) return homology_int(C, n);
    check_trusted(C, n);
    if (!C.modulus.is_zero() && !divides(q, C.modulus))
        throw ComplexError("modulus " + q.to_string() + " is incompatible with complex over Z/" + C.modulus.to_string());
    const size_t d = C.dims[n];
    Lattice K = Lattice::full(d);
    if (n > 0) {
        const IntegerMatrix& dn = C.boundaries[n - 1];
        IntegerMatrix qI = IntegerMatrix::identity(dn.rows());
        for (size_t i = 0; i < dn.rows(); ++i) qI(i, i) = q;
        // v with ∂v ∈ qZ^m  <=>  (v, w) in ker [∂ | qI] for some w.
        IntegerMatrix joint = Lattice::kernel(IntegerMatrix::hconcat(dn, qI)).basis();
        K = Lattice::span(joint.slice(0, d, 0, joint.cols()));
    }
    IntegerMatrix qId = IntegerMatrix::identity(d);
    for (size_t i = 0; i < d; ++i) qId(i, i) = q;
    return finish(n, q, std::move(K), IntegerMatrix::hconcat(C.boundaries[n], qId));
}

HomologyResult homology(const FreeChainComplex& C, size_t n) {
    return C.modulus.is_zero() ? homology_int(C, n) : homology_mod(C, C.modulus, n);
}

FinAbGroup homology_with(const FreeChainComplex& C, const FinAbGroup& A, size_t n) {
    std::vector<FinAbGroup> parts;
    if (A.rank() > 0) {
        FinAbGroup h = homology_int(C, n).group;
        for (size_t i = 0; i < A.rank(); ++i) parts.push_back(h);
    }
    for (const auto& t : A.torsion()) parts.push_back(homology_mod(C, t, n).group);
    return direct_sum(parts);
}

FreeChainComplex shift_sum(const std::vector<FreeChainComplex>& parts) {
    FreeChainComplex out;
    if (parts.empty()) return out;
    const size_t N = parts.front().max_degree();
    out.modulus = parts.front().modulus;
    for (const auto& p : parts) {
        if (p.max_degree() != N || p.dims.size() != parts.front().dims.size())
            throw ComplexError("mixed truncation depth");
        if (p.modulus != out.modulus) throw ComplexError("mixed coefficient moduli");
    }
    out.dims.assign(N + 1, 0);
    for (const auto& p : parts)
        for (size_t n = 0; n <= N; ++n) out.dims[n] += p.dims[n];
    for (size_t n = 1; n <= N; ++n) {
        std::vector<IntegerMatrix> blocks;
        for (const auto& p : parts) blocks.push_back(p.boundaries[n - 1]);
        out.boundaries.push_back(IntegerMatrix::block_diagonal(blocks));
    }
    bool labelled = true;
    for (const auto& p : parts) labelled = labelled && p.basis_labels.size() == N + 1;
    if (labelled) {
        out.basis_labels.assign(N + 1, {});
        for (size_t k = 0; k < parts.size(); ++k)
            for (size_t n = 0; n <= N; ++n)
                for (const auto& l : parts[k].basis_labels[n])
                    out.basis_labels[n].push_back(std::to_string(k) + ":" + l);
    }
    return out;
}

}  // namespace moore

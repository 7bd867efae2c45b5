#include "moorehom/lattice.hpp"

#include <stdexcept>

namespace moore {

HermiteForm row_hermite(const IntegerMatrix& A, bool with_transform) {
    HermiteForm out;
    out.H = A;
    IntegerMatrix& H = out.H;
    const size_t r = H.rows(), n = H.cols();
    if (with_transform) out.T = IntegerMatrix::identity(r);

    auto add_row = [&](size_t dst, size_t src, const Integer& c) {
        H.add_row_multiple(dst, src, c);
        if (with_transform) out.T.add_row_multiple(dst, src, c);
    };
    auto swap_rows = [&](size_t a, size_t b) {
        H.swap_rows(a, b);
        if (with_transform) out.T.swap_rows(a, b);
    };
    auto negate_row = [&](size_t i) {
        H.negate_row(i);
        if (with_transform) out.T.negate_row(i);
    };

    size_t row = 0;
    for (size_t col = 0; col < n && row < r; ++col) {
        while (true) {
            size_t best = r;
            for (size_t i = row; i < r; ++i) {
                if (H(i, col).is_zero()) continue;
                if (best == r || cmp_abs(H(i, col), H(best, col)) < 0) best = i;
            }
            if (best == r) break;
            swap_rows(row, best);
            if (H(row, col).sign() < 0) negate_row(row);
            const Integer pivot = H(row, col);
            bool clean = true;
            for (size_t i = row + 1; i < r; ++i) {
                if (H(i, col).is_zero()) continue;
                add_row(i, row, -floor_div(H(i, col), pivot));
                if (!H(i, col).is_zero()) clean = false;
            }
            if (!clean) continue;
            for (size_t i = 0; i < row; ++i) {
                if (H(i, col).is_zero()) continue;
                add_row(i, row, -floor_div(H(i, col), pivot));
            }
            ++row;
            break;
        }
    }
    out.rank = row;
    return out;
}

Lattice Lattice::span(const IntegerMatrix& generators) {
    HermiteForm hf = row_hermite(generators.transposed(), false);
    return from_hermite_rows(hf.H.slice(0, hf.rank, 0, generators.rows()));
}

Lattice Lattice::from_hermite_rows(IntegerMatrix rows) {
    Lattice L(rows.cols());
    L.rows_ = std::move(rows);
    return L;
}

Lattice Lattice::full(size_t ambient) {
    Lattice L(ambient);
    L.rows_ = IntegerMatrix::identity(ambient);
    return L;
}

Lattice Lattice::kernel(const IntegerMatrix& M) {
    const size_t n = M.cols();
    HermiteForm hf = row_hermite(M.transposed(), true);
    // Rows of T past the rank annihilate M^T, i.e. they are kernel vectors.
    IntegerMatrix gens = hf.T.slice(hf.rank, n, 0, n).transposed();
    return span(gens);
}

std::optional<IntVector> Lattice::coordinates(std::span<const Integer> v) const {
    if (v.size() != ambient_) throw std::invalid_argument("lattice membership: wrong ambient dimension");
    IntVector rest(v.begin(), v.end());
    IntVector coords(rank());
    size_t col = 0;
    for (size_t j = 0; j < rank(); ++j) {
        auto b = rows_.row(j);
        while (b[col].is_zero()) {
            if (!rest[col].is_zero()) return std::nullopt;
            ++col;
        }
        if (!divides(b[col], rest[col])) return std::nullopt;
        Integer c = div_exact(rest[col], b[col]);
        if (!c.is_zero())
            for (size_t k = col; k < ambient_; ++k)
                if (!b[k].is_zero()) rest[k].submul(c, b[k]);
        coords[j] = std::move(c);
        ++col;
    }
    for (size_t k = col; k < ambient_; ++k)
        if (!rest[k].is_zero()) return std::nullopt;
    return coords;
}

bool Lattice::contains(const Lattice& other) const {
    if (other.ambient_ != ambient_) return false;
    for (size_t j = 0; j < other.rank(); ++j)
        if (!contains(other.rows_.row(j))) return false;
    return true;
}

Lattice Lattice::operator+(const Lattice& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("lattice sum: ambient mismatch");
    return span(IntegerMatrix::vconcat(rows_, other.rows_).transposed());
}

std::optional<IntVector> solve_integer(const IntegerMatrix& M, std::span<const Integer> b) {
    if (b.size() != M.rows()) throw std::invalid_argument("solve_integer: right-hand side length mismatch");
    HermiteForm hf = row_hermite(M.transposed(), true);
    // The echelon rows are already the Hermite basis of im(M).
    Lattice L = Lattice::from_hermite_rows(hf.H.slice(0, hf.rank, 0, M.rows()));
    auto c = L.coordinates(b);
    if (!c) return std::nullopt;
    IntVector x(M.cols());
    for (size_t j = 0; j < hf.rank; ++j) {
        if ((*c)[j].is_zero()) continue;
        auto t = hf.T.row(j);
        for (size_t k = 0; k < M.cols(); ++k)
            if (!t[k].is_zero()) x[k].addmul((*c)[j], t[k]);
    }
    return x;
}

size_t matrix_rank(const IntegerMatrix& M) {
    return row_hermite(M.transposed(), false).rank;
}

}  // namespace moore

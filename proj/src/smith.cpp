#include "moorehom/smith.hpp"

#include <algorithm>
#include <optional>

namespace moore {

namespace {

// Working state: D plus whichever transforms were requested. Every row
// operation on D is mirrored on U (same op) and on U^{-1} (inverse op applied
// on the right); every column operation on D is mirrored on V.
class SmithWorker {
  public:
    SmithWorker(const IntegerMatrix& M, const SmithOptions& opt) : D(M), opt_(opt) {
        if (opt.left) U = IntegerMatrix::identity(M.rows());
        if (opt.left_inverse) Uinv = IntegerMatrix::identity(M.rows());
        if (opt.right) V = IntegerMatrix::identity(M.cols());
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        D.swap_rows(a, b);
        if (opt_.left) U.swap_rows(a, b);
        if (opt_.left_inverse) Uinv.swap_cols(a, b);
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        D.swap_cols(a, b);
        if (opt_.right) V.swap_cols(a, b);
    }
    // row[dst] += c * row[src]
    void add_row(size_t dst, size_t src, const Integer& c, size_t from_col) {
        if (c.is_zero()) return;
        auto d = D.row(dst);
        auto s = D.row(src);
        for (size_t j = from_col; j < D.cols(); ++j)
            if (!s[j].is_zero()) d[j].addmul(c, s[j]);
        if (opt_.left) U.add_row_multiple(dst, src, c);
        if (opt_.left_inverse) Uinv.add_col_multiple(src, dst, -c);
    }
    // col[dst] += c * col[src]
    void add_col(size_t dst, size_t src, const Integer& c, size_t from_row) {
        if (c.is_zero()) return;
        for (size_t i = from_row; i < D.rows(); ++i) {
            const Integer& s = D(i, src);
            if (!s.is_zero()) D(i, dst).addmul(c, s);
        }
        if (opt_.right) V.add_col_multiple(dst, src, c);
    }
    void negate_row(size_t i) {
        D.negate_row(i);
        if (opt_.left) U.negate_row(i);
        if (opt_.left_inverse) Uinv.negate_col(i);
    }

    std::optional<std::pair<size_t, size_t>> smallest_in(size_t t) const {
        std::optional<std::pair<size_t, size_t>> best;
        const Integer* best_val = nullptr;
        for (size_t i = t; i < D.rows(); ++i) {
            for (size_t j = t; j < D.cols(); ++j) {
                const Integer& x = D(i, j);
                if (x.is_zero()) continue;
                if (!best_val || cmp_abs(x, *best_val) < 0) {
                    best = {i, j};
                    best_val = &x;
                    if (x.is_small() && (x.to_int64() == 1 || x.to_int64() == -1)) return best;
                }
            }
        }
        return best;
    }

    void run() {
        const size_t m = D.rows(), n = D.cols();
        for (size_t t = 0; t < std::min(m, n); ++t) {
            auto p = smallest_in(t);
            if (!p) break;
            swap_rows(t, p->first);
            swap_cols(t, p->second);
            while (true) {
                if (D(t, t).sign() < 0) negate_row(t);
                const Integer pivot = D(t, t);
                bool dirty = false;
                for (size_t i = t + 1; i < m; ++i) {
                    if (D(i, t).is_zero()) continue;
                    Integer q = floor_div(D(i, t), pivot);
                    add_row(i, t, -q, t);
                    if (!D(i, t).is_zero()) dirty = true;
                }
                for (size_t j = t + 1; j < n; ++j) {
                    if (D(t, j).is_zero()) continue;
                    Integer q = floor_div(D(t, j), pivot);
                    add_col(j, t, -q, t);
                    if (!D(t, j).is_zero()) dirty = true;
                }
                if (dirty) {
                    // Bring the smallest leftover of row/column t into the pivot.
                    size_t bi = t, bj = t;
                    for (size_t i = t + 1; i < m; ++i)
                        if (!D(i, t).is_zero() && cmp_abs(D(i, t), D(bi, bj)) < 0) bi = i, bj = t;
                    for (size_t j = t + 1; j < n; ++j)
                        if (!D(t, j).is_zero() && cmp_abs(D(t, j), D(bi, bj)) < 0) bi = t, bj = j;
                    swap_rows(t, bi);
                    swap_cols(t, bj);
                    continue;
                }
                // Row and column are clear; enforce pivot | every remaining entry.
                bool fixed = true;
                for (size_t i = t + 1; i < m && fixed; ++i) {
                    auto r = D.row(i);
                    for (size_t j = t + 1; j < n; ++j) {
                        if (!r[j].is_zero() && !divides(pivot, r[j])) {
                            add_row(t, i, Integer(1), t);
                            fixed = false;
                            break;
                        }
                    }
                }
                if (fixed) break;
            }
        }
    }

    IntegerMatrix D, U, Uinv, V;

  private:
    SmithOptions opt_;
};

}  // namespace

size_t SmithDecomposition::rank() const {
    size_t r = 0;
    for (const auto& d : diag)
        if (!d.is_zero()) ++r;
    return r;
}

SmithDecomposition smith_normal_form(const IntegerMatrix& M, const SmithOptions& options) {
    SmithWorker w(M, options);
    w.run();
    SmithDecomposition out;
    const size_t k = std::min(M.rows(), M.cols());
    out.diag.resize(k);
    for (size_t i = 0; i < k; ++i) out.diag[i] = w.D(i, i);
    out.D = std::move(w.D);
    out.U = std::move(w.U);
    out.U_inverse = std::move(w.Uinv);
    out.V = std::move(w.V);
    return out;
}

IntVector smith_diagonal(const IntegerMatrix& M) {
    return smith_normal_form(M, SmithOptions{false, false, false}).diag;
}

}  // namespace moore

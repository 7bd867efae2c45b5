#include "moorehom/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace moore {

IntegerMatrix::IntegerMatrix(size_t rows, size_t cols, std::vector<Integer> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows * cols)
        throw std::invalid_argument("matrix data has " + std::to_string(data_.size()) +
                                    " entries, expected " + std::to_string(rows * cols));
}

IntegerMatrix IntegerMatrix::identity(size_t n) {
    IntegerMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<int64_t>> rows) {
    size_t r = rows.size();
    size_t c = r ? rows.begin()->size() : 0;
    IntegerMatrix m(r, c);
    size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
        size_t j = 0;
        for (int64_t v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntVector>& columns, size_t rows) {
    IntegerMatrix m(rows, columns.size());
    for (size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

IntegerMatrix IntegerMatrix::diagonal(const IntVector& entries) {
    IntegerMatrix m(entries.size(), entries.size());
    for (size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

IntVector IntegerMatrix::column(size_t j) const {
    IntVector v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void IntegerMatrix::set_column(size_t j, std::span<const Integer> v) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntegerMatrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

bool IntegerMatrix::is_diagonal() const {
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

IntVector IntegerMatrix::apply(std::span<const Integer> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    IntVector out(rows_);
    for (size_t j = 0; j < cols_; ++j) {
        if (v[j].is_zero()) continue;
        for (size_t i = 0; i < rows_; ++i) {
            const Integer& a = (*this)(i, j);
            if (!a.is_zero()) out[i].addmul(a, v[j]);
        }
    }
    return out;
}

IntegerMatrix IntegerMatrix::reduced_mod(const Integer& q) const {
    IntegerMatrix r(*this);
    for (auto& x : r.data_) x = floor_mod(x, q);
    return r;
}

Integer IntegerMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = rows_;
    if (n == 0) return Integer(1);
    IntegerMatrix a(*this);
    Integer prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            size_t p = k + 1;
            while (p < n && a(p, k).is_zero()) ++p;
            if (p == n) return Integer(0);
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k);
                v.submul(a(i, k), a(k, j));
                a(i, j) = div_exact(v, prev);
            }
        }
        prev = a(k, k);
    }
    Integer d = a(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

void IntegerMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(size_t dst, size_t src, const Integer& c) {
    if (c.is_zero()) return;
    Integer* d = data_.data() + dst * cols_;
    const Integer* s = data_.data() + src * cols_;
    for (size_t j = 0; j < cols_; ++j)
        if (!s[j].is_zero()) d[j].addmul(c, s[j]);
}

void IntegerMatrix::add_col_multiple(size_t dst, size_t src, const Integer& c) {
    if (c.is_zero()) return;
    for (size_t i = 0; i < rows_; ++i) {
        const Integer& s = (*this)(i, src);
        if (!s.is_zero()) (*this)(i, dst).addmul(c, s);
    }
}

void IntegerMatrix::negate_row(size_t i) {
    for (size_t j = 0; j < cols_; ++j) (*this)(i, j).negate();
}

void IntegerMatrix::negate_col(size_t j) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, j).negate();
}

IntegerMatrix IntegerMatrix::hconcat(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hconcat: row count mismatch");
    IntegerMatrix m(a.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
        for (size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
}

IntegerMatrix IntegerMatrix::vconcat(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vconcat: column count mismatch");
    IntegerMatrix m(a.rows_ + b.rows_, a.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows_; ++i)
        for (size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, j) = b(i, j);
    return m;
}

IntegerMatrix IntegerMatrix::block_diagonal(const std::vector<IntegerMatrix>& blocks) {
    size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows_;
        c += b.cols_;
    }
    IntegerMatrix m(r, c);
    size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows_; ++i)
            for (size_t j = 0; j < b.cols_; ++j) m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows_;
        c0 += b.cols_;
    }
    return m;
}

IntegerMatrix IntegerMatrix::slice(size_t r0, size_t r1, size_t c0, size_t c1) const {
    if (r0 > r1 || r1 > rows_ || c0 > c1 || c1 > cols_) throw std::out_of_range("matrix slice");
    IntegerMatrix m(r1 - r0, c1 - c0);
    for (size_t i = r0; i < r1; ++i)
        for (size_t j = c0; j < c1; ++j) m(i - r0, j - c0) = (*this)(i, j);
    return m;
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << '[';
        for (size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << (*this)(i, j);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                                    std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                                    std::to_string(b.cols_));
    IntegerMatrix c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
        Integer* out = c.data_.data() + i * c.cols_;
        for (size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x.is_zero()) continue;
            const Integer* brow = b.data_.data() + k * b.cols_;
            for (size_t j = 0; j < b.cols_; ++j)
                if (!brow[j].is_zero()) out[j].addmul(x, brow[j]);
        }
    }
    return c;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    IntegerMatrix c(a);
    for (size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    IntegerMatrix c(a);
    for (size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
}

bool is_zero_vector(std::span<const Integer> v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

IntVector vector_add(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    IntVector r(a.begin(), a.end());
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

IntVector vector_sub(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    IntVector r(a.begin(), a.end());
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

IntVector to_int_vector(std::initializer_list<int64_t> values) {
    IntVector v;
    v.reserve(values.size());
    for (int64_t x : values) v.emplace_back(x);
    return v;
}

}  // namespace moore

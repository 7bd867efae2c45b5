#ifndef MOOREHOM_MATRIX_HPP
#define MOOREHOM_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "moorehom/integer.hpp"

namespace moore {

/// Dense row-major matrix of unbounded integers.
class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    IntegerMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntegerMatrix(size_t rows, size_t cols, std::vector<Integer> row_major);

    static IntegerMatrix identity(size_t n);
    static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<int64_t>> rows);
    /// Builds a matrix whose columns are the given vectors; `rows` fixes the
    /// height when the list is empty.
    static IntegerMatrix from_columns(const std::vector<IntVector>& columns, size_t rows);
    static IntegerMatrix diagonal(const IntVector& entries);

    size_t rows() const noexcept { return rows_; }
    size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Integer& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    std::span<Integer> row(size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Integer> row(size_t i) const { return {data_.data() + i * cols_, cols_}; }
    IntVector column(size_t j) const;
    void set_column(size_t j, std::span<const Integer> v);
    const std::vector<Integer>& data() const noexcept { return data_; }

    IntegerMatrix transposed() const;
    bool is_zero() const;
    bool is_diagonal() const;
    IntVector apply(std::span<const Integer> v) const;
    /// Entries reduced into [0, q).
    IntegerMatrix reduced_mod(const Integer& q) const;
    /// Fraction-free (Bareiss) determinant of a square matrix.
    Integer determinant() const;

    // Elementary operations.
    void swap_rows(size_t a, size_t b);
    void swap_cols(size_t a, size_t b);
    /// row[dst] += c * row[src]
    void add_row_multiple(size_t dst, size_t src, const Integer& c);
    /// col[dst] += c * col[src]
    void add_col_multiple(size_t dst, size_t src, const Integer& c);
    void negate_row(size_t i);
    void negate_col(size_t j);

    static IntegerMatrix hconcat(const IntegerMatrix& a, const IntegerMatrix& b);
    static IntegerMatrix vconcat(const IntegerMatrix& a, const IntegerMatrix& b);
    static IntegerMatrix block_diagonal(const std::vector<IntegerMatrix>& blocks);
    /// Rows [r0, r1) and columns [c0, c1).
    IntegerMatrix slice(size_t r0, size_t r1, size_t c0, size_t c1) const;

    std::string to_string() const;

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
    friend IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
    friend IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

  private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Integer> data_;
};

bool is_zero_vector(std::span<const Integer> v);
IntVector vector_add(std::span<const Integer> a, std::span<const Integer> b);
IntVector vector_sub(std::span<const Integer> a, std::span<const Integer> b);
IntVector to_int_vector(std::initializer_list<int64_t> values);

}  // namespace moore

#endif  // MOOREHOM_MATRIX_HPP

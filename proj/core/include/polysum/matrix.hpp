#pragma once

#include "polysum/rational.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace polysum {

/// Dense row-major matrix of exact rationals. Desk-scale instances make
/// sparsity machinery pointless, so storage is a flat vector.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);

    /// Columns picked by index, in the given order.
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    /// All columns except the given (sorted or not) index set.
    Matrix drop_cols(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix transposed() const;

    /// Stacks `below` under *this; column counts must match.
    Matrix vstack(const Matrix& below) const;
    /// Puts `right` beside *this; row counts must match.
    Matrix hstack(const Matrix& right) const;

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

Vec mul(const Matrix& m, const Vec& x);
Matrix mul(const Matrix& a, const Matrix& b);

/// Outer product of a column and a row vector.
Matrix outer(const Vec& col, const Vec& row);

struct RrefResult {
    Matrix r;                            ///< reduced row echelon form
    std::size_t rank = 0;                ///< number of pivots
    std::vector<std::size_t> pivot_cols; ///< ascending
};

/// Gauss-Jordan over the rationals; invertible row operations only.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of the null space; size = cols - rank. Each vector satisfies
/// m*v = 0 exactly.
std::vector<Vec> kernel_basis(const Matrix& m);

/// Exact solution of m*x = rhs when m has full column rank and the
/// system is consistent; nullopt otherwise. Dimension mismatch between
/// m and rhs is a contract violation.
std::optional<Vec> solve(const Matrix& m, const Vec& rhs);

} // namespace polysum

#include "polysum/matrix.hpp"

#include "polysum/errors.hpp"

#include <algorithm>

namespace polysum {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ContractError("ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

Vec Matrix::row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Vec Matrix::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw ContractError("set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < idx.size(); ++k) m.at(i, k) = at(i, idx[k]);
    return m;
}

Matrix Matrix::drop_cols(const std::vector<std::size_t>& idx) const {
    std::vector<bool> dropped(cols_, false);
    for (auto j : idx) {
        if (j >= cols_) throw ContractError("drop_cols: index out of range");
        dropped[j] = true;
    }
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < cols_; ++j)
        if (!dropped[j]) keep.push_back(j);
    return select_cols(keep);
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t j = 0; j < cols_; ++j) m.at(k, j) = at(idx[k], j);
    return m;
}

Matrix Matrix::transposed() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (cols_ != below.cols_ && rows_ != 0 && below.rows_ != 0)
        throw ContractError("vstack: column mismatch");
    std::size_t cols = rows_ ? cols_ : below.cols_;
    Matrix m(rows_ + below.rows_, cols);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < below.rows_; ++i)
        for (std::size_t j = 0; j < below.cols_; ++j) m.at(rows_ + i, j) = below.at(i, j);
    return m;
}

Matrix Matrix::hstack(const Matrix& right) const {
    if (rows_ != right.rows_) throw ContractError("hstack: row mismatch");
    Matrix m(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) m.at(i, cols_ + j) = right.at(i, j);
    }
    return m;
}

Vec mul(const Matrix& m, const Vec& x) {
    if (m.cols() != x.size()) throw ContractError("matrix-vector dimension mismatch");
    Vec y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational s;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ContractError("matrix product dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

Matrix outer(const Vec& col, const Vec& row) {
    Matrix m(col.size(), row.size());
    for (std::size_t i = 0; i < col.size(); ++i)
        for (std::size_t j = 0; j < row.size(); ++j) m.at(i, j) = col[i] * row[j];
    return m;
}

RrefResult rref(const Matrix& m) {
    RrefResult res;
    res.r = m;
    Matrix& r = res.r;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
        std::size_t piv = lead;
        while (piv < r.rows() && r.at(piv, col).is_zero()) ++piv;
        if (piv == r.rows()) continue;
        if (piv != lead)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(piv, j), r.at(lead, j));
        Rational inv = Rational(1) / r.at(lead, col);
        for (std::size_t j = col; j < r.cols(); ++j) r.at(lead, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == lead || r.at(i, col).is_zero()) continue;
            Rational f = r.at(i, col);
            for (std::size_t j = col; j < r.cols(); ++j) r.at(i, j) -= f * r.at(lead, j);
        }
        res.pivot_cols.push_back(col);
        ++lead;
    }
    res.rank = res.pivot_cols.size();
    return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Vec> kernel_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = Rational(1);
        for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p)
            v[rr.pivot_cols[p]] = -rr.r.at(p, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& rhs) {
    if (m.rows() != rhs.size())
        throw ContractError("solve: rhs length does not match row count");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[i];
    }
    RrefResult rr = rref(aug);
    // Inconsistent when a pivot lands in the augmented column.
    for (auto c : rr.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    if (rr.rank != m.cols()) return std::nullopt; // rank-deficient columns
    Vec x(m.cols());
    for (std::size_t p = 0; p < rr.pivot_cols.size(); ++p)
        x[rr.pivot_cols[p]] = rr.r.at(p, m.cols());
    return x;
}

} // namespace polysum

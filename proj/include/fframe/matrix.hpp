// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "fframe/errors.hpp"

namespace fframe {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatchError("dot: vector lengths differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline Vector scaled(const Vector& a, double s) {
    Vector r(a);
    for (double& x : r) x *= s;
    return r;
}

inline Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatchError("add: vector lengths differ");
    Vector r(a);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatchError("sub: vector lengths differ");
    Vector r(a);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

inline bool all_finite(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

/// Dense real matrix in row-major order. Entries are validated finite at
/// construction; all operations return new values (nothing is mutated in
/// place by the public API).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        if (rows == 0 || cols == 0)
            throw EmptyInputError("Matrix: zero dimension");
    }

    Matrix(std::size_t rows, std::size_t cols, Vector entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0)
            throw EmptyInputError("Matrix: zero dimension");
        if (data_.size() != rows * cols)
            throw DimensionMismatchError("Matrix: entry count does not match rows*cols");
        if (!all_finite(data_))
            throw NotFiniteError("Matrix: non-finite entry");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Builds a matrix whose rows are the given vectors.
    static Matrix from_rows(const std::vector<Vector>& rows) {
        if (rows.empty()) throw EmptyInputError("from_rows: no vectors");
        const std::size_t c = rows.front().size();
        if (c == 0) throw EmptyInputError("from_rows: zero-length vectors");
        Matrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c)
                throw DimensionMismatchError("from_rows: inconsistent vector lengths");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        m.check_finite();
        return m;
    }

    /// Builds a matrix whose columns are the given vectors.
    static Matrix from_columns(const std::vector<Vector>& cols) {
        if (cols.empty()) throw EmptyInputError("from_columns: no vectors");
        const std::size_t r = cols.front().size();
        if (r == 0) throw EmptyInputError("from_columns: zero-length vectors");
        Matrix m(r, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != r)
                throw DimensionMismatchError("from_columns: inconsistent vector lengths");
            for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
        }
        m.check_finite();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const Vector& entries() const { return data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionMismatchError("Matrix multiply: inner dimensions differ");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Vector operator*(const Vector& v) const {
        if (cols_ != v.size())
            throw DimensionMismatchError("Matrix-vector multiply: dimensions differ");
        Vector r(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o, "Matrix add");
        Matrix r(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o, "Matrix subtract");
        Matrix r(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    Matrix scaled(double s) const {
        Matrix r(*this);
        for (double& x : r.data_) x *= s;
        return r;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double x : data_) s += x * x;
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    double trace() const {
        double s = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    Vector column(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Vector row(std::size_t i) const {
        Vector r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_column(std::size_t j, const Vector& v) {
        if (v.size() != rows_)
            throw DimensionMismatchError("set_column: length differs from row count");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    /// Horizontal concatenation.
    static Matrix hcat(const std::vector<Matrix>& blocks) {
        if (blocks.empty()) throw EmptyInputError("hcat: no blocks");
        const std::size_t r = blocks.front().rows();
        std::size_t c = 0;
        for (const Matrix& b : blocks) {
            if (b.rows() != r) throw DimensionMismatchError("hcat: row counts differ");
            c += b.cols();
        }
        Matrix m(r, c);
        std::size_t off = 0;
        for (const Matrix& b : blocks) {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) m(i, off + j) = b(i, j);
            off += b.cols();
        }
        return m;
    }

    /// Columns [first, first+count).
    Matrix columns(std::size_t first, std::size_t count) const {
        if (first + count > cols_) throw DimensionMismatchError("columns: range out of bounds");
        if (count == 0) throw EmptyInputError("columns: empty selection");
        Matrix m(rows_, count);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
        return m;
    }

private:
    void require_same_shape(const Matrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatchError(std::string(what) + ": shapes differ");
    }

    void check_finite() const {
        if (!all_finite(data_)) throw NotFiniteError("Matrix: non-finite entry");
    }

    std::size_t rows_, cols_;
    Vector data_;
};

/// ‖A − Aᵀ‖_F without forming the transpose.
inline double asymmetry_norm(const Matrix& m) {
    if (!m.square()) throw NotSquareError("asymmetry_norm: matrix not square");
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double d = m(i, j) - m(j, i);
            s += 2.0 * d * d;
        }
    return std::sqrt(s);
}

} // namespace fframe

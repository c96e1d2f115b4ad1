#pragma once

#include "niep/complex.hpp"
#include "niep/error.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace niep {

template <class F>
using Vector = std::vector<F>;

/// Dense row-major matrix. `row_sum` is an optional claim of membership in
/// CS_alpha (every row sums to alpha) and `symmetric` a claim of A = A^T;
/// both are metadata checked by the verifier, never trusted silently.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    Matrix(std::initializer_list<std::initializer_list<F>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw Error(Errc::DimensionMismatch, "ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = F(1);
        return m;
    }

    static Matrix diagonal(std::span<const F> d)
    {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    static Matrix filled(std::size_t rows, std::size_t cols, const F& value)
    {
        Matrix m(rows, cols);
        std::fill(m.data_.begin(), m.data_.end(), value);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t order() const { return rows_; }
    bool is_square() const { return rows_ == cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<F> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const F> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Vector<F> column(std::size_t j) const
    {
        Vector<F> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copy `block` into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Matrix& block)
    {
        if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
            throw Error(Errc::DimensionMismatch, "block out of range");
        for (std::size_t i = 0; i < block.rows_; ++i)
            for (std::size_t j = 0; j < block.cols_; ++j)
                (*this)(r0 + i, c0 + j) = block(i, j);
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const
    {
        Matrix b(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    const std::vector<F>& data() const { return data_; }

    Matrix& operator+=(const Matrix& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const F& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw Error(Errc::DimensionMismatch, "matrix product shape");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (aik == F(0))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector<F> operator*(const Matrix& a, const Vector<F>& x)
    {
        if (a.cols_ != x.size())
            throw Error(Errc::DimensionMismatch, "matrix-vector shape");
        Vector<F> y(a.rows_, F(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                y[i] += a(i, j) * x[j];
        return y;
    }

    /// Entry equality only; metadata tags are not compared.
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::optional<F> row_sum;
    bool symmetric = false;

private:
    void require_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error(Errc::DimensionMismatch, "shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <class F>
Vector<F> ones(std::size_t n)
{
    return Vector<F>(n, F(1));
}

template <class F>
Matrix<F> outer(const Vector<F>& u, const Vector<F>& v)
{
    Matrix<F> m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = u[i] * v[j];
    return m;
}

template <class F>
F dot(const Vector<F>& u, const Vector<F>& v)
{
    F s(0);
    for (std::size_t i = 0; i < u.size(); ++i)
        s += u[i] * v[i];
    return s;
}

/// Block-diagonal direct sum.
template <class F>
Matrix<F> direct_sum(std::span<const Matrix<F>> blocks)
{
    std::size_t n = 0;
    for (const auto& b : blocks)
        n += b.rows();
    Matrix<F> m(n, n);
    std::size_t at = 0;
    for (const auto& b : blocks) {
        m.set_block(at, at, b);
        at += b.rows();
    }
    return m;
}

template <class F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b)
{
    const Matrix<F> parts[] = {a, b};
    return direct_sum<F>(std::span<const Matrix<F>>(parts));
}

/// Infinity norm (max absolute row sum) as a double.
template <class F>
double norm_inf(const Matrix<F>& a)
{
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += magnitude(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

template <class T>
Matrix<Complex<T>> to_complex(const Matrix<T>& a)
{
    Matrix<Complex<T>> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = Complex<T>(a(i, j));
    return c;
}

template <class To, class From>
Matrix<To> convert_matrix(const Matrix<From>& a)
{
    Matrix<To> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = convert<To>(a(i, j));
    if (a.row_sum)
        c.row_sum = convert<To>(*a.row_sum);
    c.symmetric = a.symmetric;
    return c;
}

} // namespace niep

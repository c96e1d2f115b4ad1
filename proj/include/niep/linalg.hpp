#pragma once

// Elimination kernels shared by every module: rank, null spaces, solves and
// inverses over a backend scalar or its complex extension.

#include "niep/matrix.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace niep {

template <class F>
struct field_traits {
    static constexpr bool exact = is_exact_v<F>;
};
template <class T>
struct field_traits<Complex<T>> {
    static constexpr bool exact = is_exact_v<T>;
};

template <class F>
inline constexpr bool field_exact_v = field_traits<F>::exact;

template <class F>
bool is_zero_entry(const F& x, double threshold)
{
    if constexpr (field_exact_v<F>)
        return x == F(0);
    else
        return magnitude(x) <= threshold;
}

template <class F>
double max_magnitude(const Matrix<F>& a)
{
    double m = 0.0;
    for (const auto& x : a.data())
        m = std::max(m, magnitude(x));
    return m;
}

template <class F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form. Floats use partial pivoting and treat entries
/// below tol * max(1, max|a_ij|) as zero; exact fields pivot on the first
/// nonzero entry.
template <class F>
Echelon<F> rref(Matrix<F> a, double tol = 1e-10)
{
    const double threshold = tol * std::max(1.0, max_magnitude(a));
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = a.rows();
        if constexpr (field_exact_v<F>) {
            for (std::size_t i = row; i < a.rows(); ++i)
                if (a(i, col) != F(0)) {
                    piv = i;
                    break;
                }
        } else {
            double best = threshold;
            for (std::size_t i = row; i < a.rows(); ++i)
                if (magnitude(a(i, col)) > best) {
                    best = magnitude(a(i, col));
                    piv = i;
                }
        }
        if (piv == a.rows()) {
            if constexpr (!field_exact_v<F>)
                for (std::size_t i = row; i < a.rows(); ++i)
                    a(i, col) = F(0);
            continue;
        }
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(row, j), a(piv, j));
        const F inv = F(1) / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == F(0))
                continue;
            const F factor = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) -= factor * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

/// Fraction-free (Bareiss) elimination rank; the exact-mode rank kernel.
template <class F>
std::size_t bareiss_rank(Matrix<F> a)
{
    std::size_t rank = 0;
    F prev(1);
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = a.rows();
        for (std::size_t i = rank; i < a.rows(); ++i)
            if (a(i, col) != F(0)) {
                piv = i;
                break;
            }
        if (piv == a.rows())
            continue;
        if (piv != rank)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(rank, j), a(piv, j));
        const F p = a(rank, col);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            for (std::size_t j = col + 1; j < a.cols(); ++j)
                a(i, j) = (a(i, j) * p - a(i, col) * a(rank, j)) / prev;
            a(i, col) = F(0);
        }
        prev = p;
        ++rank;
    }
    return rank;
}

/// Rank: Bareiss in exact mode, pivoted elimination with a relative
/// threshold in float mode.
template <class F>
std::size_t rank(const Matrix<F>& a, double tol = 1e-10)
{
    if constexpr (field_exact_v<F>)
        return bareiss_rank(a);
    else
        return rref(a, tol).pivot_cols.size();
}

/// Basis of {x : A x = 0}; one vector per free column, with that free
/// variable set to one.
template <class F>
std::vector<Vector<F>> null_space(const Matrix<F>& a, double tol = 1e-10)
{
    auto ech = rref(a, tol);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : ech.pivot_cols)
        is_pivot[c] = true;
    std::vector<Vector<F>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vector<F> v(a.cols(), F(0));
        v[free] = F(1);
        for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
            v[ech.pivot_cols[r]] = -ech.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Gauss-Jordan inverse; throws Singular.
template <class F>
Matrix<F> inverse(const Matrix<F>& a, double tol = 1e-14)
{
    if (!a.is_square())
        throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, Matrix<F>::identity(n));
    auto ech = rref(std::move(aug), tol);
    if (ech.pivot_cols.size() < n || ech.pivot_cols[n - 1] != n - 1)
        throw Error(Errc::Singular, "matrix is singular");
    return ech.reduced.block(0, n, n, n);
}

/// Solve A x = b for square nonsingular A.
template <class F>
Vector<F> solve(const Matrix<F>& a, const Vector<F>& b, double tol = 1e-14)
{
    const std::size_t n = a.rows();
    if (!a.is_square() || b.size() != n)
        throw Error(Errc::DimensionMismatch, "solve shape");
    Matrix<F> aug(n, n + 1);
    aug.set_block(0, 0, a);
    for (std::size_t i = 0; i < n; ++i)
        aug(i, n) = b[i];
    auto ech = rref(std::move(aug), tol);
    if (ech.pivot_cols.size() < n || ech.pivot_cols[n - 1] != n - 1)
        throw Error(Errc::Singular, "matrix is singular");
    return ech.reduced.column(n);
}

template <class F>
F determinant(Matrix<F> a)
{
    if (!a.is_square())
        throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = a.rows();
    F det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        double best = -1.0;
        for (std::size_t i = col; i < n; ++i) {
            if constexpr (field_exact_v<F>) {
                if (a(i, col) != F(0)) {
                    piv = i;
                    break;
                }
            } else if (magnitude(a(i, col)) > best) {
                best = magnitude(a(i, col));
                piv = i;
            }
        }
        if (piv == n || a(piv, col) == F(0))
            return F(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(col, j), a(piv, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const F factor = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j)
                a(i, j) -= factor * a(col, j);
        }
    }
    return det;
}

} // namespace niep

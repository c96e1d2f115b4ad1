#pragma once

// Independent oracles for test code: determinants by plain elimination and
// spectrum checks by sampling det(kI - A) at n + 1 integer points.

#include "niep/matrix.hpp"
#include "niep/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using niep::Complex;
using niep::Matrix;
using niep::Rational;

inline Rational q(const std::string& s)
{
    Rational r(s);
    r.canonicalize();
    return r;
}

inline Matrix<Rational> mat(std::initializer_list<std::initializer_list<long>> rows)
{
    Matrix<Rational> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r)
            m(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

inline std::vector<Complex<Rational>> reals(std::initializer_list<long> xs)
{
    std::vector<Complex<Rational>> out;
    for (long x : xs)
        out.emplace_back(Rational(x));
    return out;
}

inline Rational det(Matrix<Rational> a)
{
    const std::size_t n = a.rows();
    Rational d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0)
                continue;
            const Rational f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(r, j) -= f * a(c, j);
        }
    }
    return d;
}

inline double det(Matrix<double> a)
{
    const std::size_t n = a.rows();
    double d = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(a(r, c)) > std::fabs(a(p, c)))
                p = r;
        if (a(p, c) == 0.0)
            return 0.0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(r, j) -= f * a(c, j);
        }
    }
    return d;
}

/// Re prod (x - lambda_j).
template <class T>
T poly_at(const std::vector<Complex<T>>& values, const T& x)
{
    Complex<T> p(T(1));
    for (const auto& z : values)
        p *= Complex<T>(T(x - z.re), T(-z.im));
    return p.re;
}

/// det(kI - A) equals prod (k - lambda) at k = 0..n, exactly.
inline bool spectrum_matches(const Matrix<Rational>& a, const std::vector<Complex<Rational>>& values)
{
    const std::size_t n = a.rows();
    if (values.size() != n)
        return false;
    for (std::size_t k = 0; k <= n; ++k) {
        Matrix<Rational> m = Rational(-1) * a;
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) += Rational(static_cast<long>(k));
        if (det(m) != poly_at(values, Rational(static_cast<long>(k))))
            return false;
    }
    return true;
}

/// Float version, relative to the size of (k + ||A||)^n.
inline bool spectrum_matches(const Matrix<double>& a, const std::vector<Complex<double>>& values, double tol = 1e-8)
{
    const std::size_t n = a.rows();
    if (values.size() != n)
        return false;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            row += std::fabs(a(i, j));
        norm = std::max(norm, row);
    }
    for (std::size_t k = 0; k <= n; ++k) {
        Matrix<double> m = -1.0 * a;
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) += static_cast<double>(k);
        const double got = det(m);
        const double want = poly_at(values, static_cast<double>(k));
        const double scale = std::pow(static_cast<double>(k) + norm + 1.0, static_cast<double>(n));
        if (std::fabs(got - want) > tol * scale)
            return false;
    }
    return true;
}

/// det(kI - A) for each k, by fraction-free elimination on D*(kI - A) with D
/// the common denominator of A.
inline std::vector<Rational> char_values(const Matrix<Rational>& a, const std::vector<long>& ks)
{
    const std::size_t n = a.rows();
    mpz_class d = 1;
    for (const auto& x : a.data())
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> base(n * n);
    for (std::size_t i = 0; i < n * n; ++i)
        base[i] = -(a.data()[i].get_num() * (d / a.data()[i].get_den()));
    mpz_class dn = 1;
    for (std::size_t i = 0; i < n; ++i)
        dn *= d;
    std::vector<Rational> out;
    std::vector<mpz_class> m(n * n);
    for (long k : ks) {
        m = base;
        for (std::size_t i = 0; i < n; ++i)
            m[i * n + i] += d * k;
        mpz_class prev = 1;
        int sgn = 1;
        bool zero = false;
        for (std::size_t c = 0; c + 1 < n && !zero; ++c) {
            std::size_t p = c;
            while (p < n && m[p * n + c] == 0)
                ++p;
            if (p == n) {
                zero = true;
                break;
            }
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(m[p * n + j], m[c * n + j]);
                sgn = -sgn;
            }
            for (std::size_t r = c + 1; r < n; ++r) {
                for (std::size_t j = c + 1; j < n; ++j) {
                    m[r * n + j] = m[c * n + c] * m[r * n + j] - m[r * n + c] * m[c * n + j];
                    mpz_divexact(m[r * n + j].get_mpz_t(), m[r * n + j].get_mpz_t(), prev.get_mpz_t());
                }
            }
            prev = m[c * n + c];
        }
        Rational det = zero ? Rational(0) : Rational(sgn * m[n * n - 1], dn);
        det.canonicalize();
        out.push_back(det);
    }
    return out;
}

inline std::vector<long> sample_points(std::size_t count)
{
    std::vector<long> ks(count);
    for (std::size_t i = 0; i < count; ++i)
        ks[i] = static_cast<long>(i);
    return ks;
}

/// Same contract as spectrum_matches, through char_values.
inline bool spectrum_matches_fast(const Matrix<Rational>& a, const std::vector<Complex<Rational>>& values)
{
    if (values.size() != a.rows())
        return false;
    const auto ks = sample_points(a.rows() + 1);
    const auto got = char_values(a, ks);
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (got[i] != poly_at(values, Rational(ks[i])))
            return false;
    return true;
}

template <class T>
bool nonnegative(const Matrix<T>& a, double tol = 0.0)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (niep::to_double(a(i, j)) < -tol || (tol == 0.0 && a(i, j) < T(0)))
                return false;
    return true;
}

template <class T>
bool row_sums_equal(const Matrix<T>& a, const T& alpha)
{
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T s(0);
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += a(i, j);
        if (s != alpha)
            return false;
    }
    return true;
}

/// Random rational num/den with num uniform in [lo*den, hi*den].
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den)
{
    std::uniform_int_distribution<long> d(lo * den, hi * den);
    Rational r(d(rng), den);
    r.canonicalize();
    return r;
}

/// Rank of a rational matrix by plain row reduction.
inline std::size_t rank(Matrix<Rational> a)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            std::swap(a(p, j), a(r, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            const Rational f = a(i, c) / a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

/// rank((A - lambda I)^k).
inline std::size_t power_rank(const Matrix<Rational>& a, const Rational& lambda, std::size_t k)
{
    Matrix<Rational> b = a;
    for (std::size_t i = 0; i < b.rows(); ++i)
        b(i, i) -= lambda;
    Matrix<Rational> p = Matrix<Rational>::identity(a.rows());
    for (std::size_t i = 0; i < k; ++i)
        p = p * b;
    return rank(p);
}

template <class T>
bool positive(const Matrix<T>& a)
{
    for (const auto& x : a.data())
        if (!(x > T(0)))
            return false;
    return true;
}

} // namespace oracle

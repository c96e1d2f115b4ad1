#include "niep/verify.hpp"

#include "niep/linalg.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace niep {

namespace {

template <class T>
std::vector<T> faddeev_leverrier(const Matrix<T>& a)
{
    const std::size_t n = a.rows();
    std::vector<T> c(n + 1, T(0));
    c[0] = T(1);
    Matrix<T> am(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<T> mk = am;
        for (std::size_t i = 0; i < n; ++i)
            mk(i, i) += c[k - 1];
        am = a * mk;
        T tr(0);
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        c[k] = -tr / T(static_cast<long>(k));
    }
    return c;
}

/// Integer recurrence on D*A with D the common denominator; every
/// intermediate is integral, so the division by k is exact.
std::vector<Rational> faddeev_leverrier_exact(const Matrix<Rational>& a)
{
    const std::size_t n = a.rows();
    mpz_class den = 1;
    for (const auto& x : a.data())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> z(n * n);
    for (std::size_t k = 0; k < n * n; ++k)
        z[k] = a.data()[k].get_num() * (den / a.data()[k].get_den());

    std::vector<mpz_class> c(n + 1, 0);
    c[0] = 1;
    std::vector<mpz_class> am(n * n, 0), mk(n * n), prod(n * n);
    mpz_class tmp;
    for (std::size_t k = 1; k <= n; ++k) {
        mk = am;
        for (std::size_t i = 0; i < n; ++i)
            mk[i * n + i] += c[k - 1];
        for (auto& x : prod)
            x = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                const mpz_class& zil = z[i * n + l];
                if (sgn(zil) == 0)
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    mpz_addmul(prod[i * n + j].get_mpz_t(), zil.get_mpz_t(), mk[l * n + j].get_mpz_t());
            }
        am.swap(prod);
        mpz_class tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += am[i * n + i];
        mpz_divexact_ui(tmp.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[k] = -tmp;
    }
    std::vector<Rational> out(n + 1);
    mpz_class scale = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        out[k] = Rational(c[k], scale);
        out[k].canonicalize();
        scale *= den;
    }
    return out;
}

template <class T>
double entry_scale(const Matrix<T>& m)
{
    return std::max(1.0, max_magnitude(m));
}

} // namespace

template <class T>
std::vector<T> char_poly(const Matrix<T>& m)
{
    if (!m.is_square())
        throw Error(Errc::DimensionMismatch, "char_poly of non-square matrix");
    if constexpr (is_exact_v<T>)
        return faddeev_leverrier_exact(m);
    else
        return faddeev_leverrier(m);
}

bool VerificationReport::passed() const
{
    if (char_poly && !char_poly->match)
        return false;
    if (nonnegative && !nonnegative->pass)
        return false;
    if (positive && !positive->pass)
        return false;
    if (row_sum && !row_sum->pass)
        return false;
    if (symmetric && !*symmetric)
        return false;
    return true;
}

void VerificationReport::absorb(const VerificationReport& other)
{
    if (other.char_poly)
        char_poly = other.char_poly;
    if (other.nonnegative)
        nonnegative = other.nonnegative;
    if (other.positive)
        positive = other.positive;
    if (other.row_sum)
        row_sum = other.row_sum;
    if (other.symmetric)
        symmetric = other.symmetric;
    if (other.jordan)
        jordan = other.jordan;
}

std::string VerificationReport::summary() const
{
    std::ostringstream out;
    auto verdict = [](bool b) { return b ? "PASS" : "FAIL"; };
    if (char_poly)
        out << "char_poly " << verdict(char_poly->match) << " (max deviation " << char_poly->max_deviation << ")\n";
    if (nonnegative)
        out << "nonnegative " << verdict(nonnegative->pass) << " (min entry " << nonnegative->extreme_entry << ")\n";
    if (positive)
        out << "positive " << verdict(positive->pass) << " (min entry " << positive->extreme_entry << ")\n";
    if (row_sum)
        out << "row_sum " << verdict(row_sum->pass) << " (alpha " << row_sum->alpha << ", deviation "
            << row_sum->max_deviation << ")\n";
    if (symmetric)
        out << "symmetric " << verdict(*symmetric) << "\n";
    return out.str();
}

template <class T>
CoefficientCheck compare_coefficients(const Matrix<T>& m, const std::vector<T>& expected)
{
    CoefficientCheck out;
    if (m.rows() + 1 != expected.size() || !m.is_square()) {
        out.max_deviation = INFINITY;
        return out;
    }
    const auto got = char_poly(m);
    const double norm = std::max(1.0, norm_inf(m));
    out.match = true;
    double power = 1.0;
    for (std::size_t k = 0; k < got.size(); ++k) {
        const double diff = to_double(T(got[k] - expected[k]));
        const double dev = std::fabs(diff) / std::max({1.0, magnitude(expected[k]), power});
        if constexpr (is_exact_v<T>) {
            if (got[k] != expected[k])
                out.match = false;
        } else if (dev > kCoefficientTol) {
            out.match = false;
        }
        if (dev > out.max_deviation) {
            out.max_deviation = dev;
            out.worst_index = k;
        }
        power *= norm;
    }
    return out;
}

template <class T>
VerificationReport verify_spectrum(const Matrix<T>& m, const std::vector<Complex<T>>& values)
{
    VerificationReport r;
    r.char_poly = compare_coefficients(m, monic_from_roots(values));
    return r;
}

template <class T>
VerificationReport verify_spectrum(const Matrix<T>& m, const Spectrum<T>& s)
{
    return verify_spectrum(m, s.values);
}

template <class T>
VerificationReport structural_checks(const Matrix<T>& m, const StructuralFlags& want)
{
    VerificationReport r;
    const double tol = is_exact_v<T> ? 0.0 : kEntryTol * entry_scale(m);
    T min_entry = m.data().empty() ? T(0) : m.data()[0];
    for (const auto& x : m.data())
        if (x < min_entry)
            min_entry = x;
    if (want.nonnegative) {
        const bool pass = is_exact_v<T> ? sign(min_entry) >= 0 : to_double(min_entry) >= -tol;
        r.nonnegative = SignCheck{pass, to_double(min_entry)};
    }
    if (want.positive)
        r.positive = SignCheck{sign(min_entry) > 0, to_double(min_entry)};
    if (want.row_sums) {
        RowSumCheck rs;
        rs.pass = m.rows() > 0;
        T alpha(0);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            T s(0);
            for (std::size_t j = 0; j < m.cols(); ++j)
                s += m(i, j);
            if (i == 0)
                alpha = m.row_sum ? *m.row_sum : s;
            const double dev = magnitude(T(s - alpha));
            rs.max_deviation = std::max(rs.max_deviation, dev);
            if (is_exact_v<T> ? s != alpha : dev > kEntryTol * std::max(1.0, magnitude(alpha)))
                rs.pass = false;
        }
        rs.alpha = to_double(alpha);
        r.row_sum = rs;
    }
    if (want.symmetric) {
        bool sym = m.is_square();
        for (std::size_t i = 0; sym && i < m.rows(); ++i)
            for (std::size_t j = i + 1; sym && j < m.cols(); ++j)
                if (is_exact_v<T> ? m(i, j) != m(j, i) : magnitude(T(m(i, j) - m(j, i))) > tol)
                    sym = false;
        r.symmetric = sym;
    }
    return r;
}

template <class T>
VerificationReport full_check(const Matrix<T>& m, const Spectrum<T>& s, StructuralFlags want)
{
    auto r = verify_spectrum(m, s);
    r.absorb(structural_checks(m, want));
    return r;
}

std::vector<double> singular_values(const Matrix<double>& a)
{
    const bool wide = a.cols() > a.rows();
    Matrix<double> u = wide ? a.transpose() : a;
    const std::size_t m = u.rows(), n = u.cols();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0, gamma = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += u(i, p) * u(i, p);
                    beta += u(i, q) * u(i, q);
                    gamma += u(i, p) * u(i, q);
                }
                if (gamma == 0.0 || std::fabs(gamma) <= 1e-15 * std::sqrt(alpha * beta))
                    continue;
                off = std::max(off, std::fabs(gamma) / std::sqrt(alpha * beta));
                const double zeta = (beta - alpha) / (2 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1 + zeta * zeta));
                const double c = 1 / std::sqrt(1 + t * t), s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double up = u(i, p), uq = u(i, q);
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                }
            }
        if (off <= 1e-15)
            break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i)
            s += u(i, j) * u(i, j);
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

std::size_t numerical_rank(const Matrix<double>& a, double rel)
{
    const auto sv = singular_values(a);
    if (sv.empty() || sv[0] == 0.0)
        return 0;
    return static_cast<std::size_t>(
        std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rel * sv[0]; }));
}

std::size_t numerical_rank(const Matrix<Complex<double>>& a, double rel)
{
    const std::size_t m = a.rows(), n = a.cols();
    Matrix<double> real(2 * m, 2 * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            real(i, j) = a(i, j).re;
            real(i, n + j) = -a(i, j).im;
            real(m + i, j) = a(i, j).im;
            real(m + i, n + j) = a(i, j).re;
        }
    return numerical_rank(real, rel) / 2;
}

std::vector<double> symmetric_eigenvalues(const Matrix<double>& a0)
{
    Matrix<double> a = a0;
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (off <= 1e-30 * std::max(1.0, max_magnitude(a0) * max_magnitude(a0)))
            break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
                const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(1 + theta * theta));
                const double c = 1 / std::sqrt(1 + t * t), s = c * t;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i)
        ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template std::vector<T> char_poly(const Matrix<T>&);                                                      \
    template CoefficientCheck compare_coefficients(const Matrix<T>&, const std::vector<T>&);                  \
    template VerificationReport verify_spectrum(const Matrix<T>&, const Spectrum<T>&);                        \
    template VerificationReport verify_spectrum(const Matrix<T>&, const std::vector<Complex<T>>&);            \
    template VerificationReport structural_checks(const Matrix<T>&, const StructuralFlags&);                  \
    template VerificationReport full_check(const Matrix<T>&, const Spectrum<T>&, StructuralFlags);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

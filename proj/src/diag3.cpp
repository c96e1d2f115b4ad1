#include "niep/diag3.hpp"

#include "niep/verify.hpp"

#include <algorithm>
#include <cmath>

namespace niep {

namespace {

constexpr double kDiagTol = 1e-12;

template <class T>
double scale_of(const DiagonalSpec<T>& d)
{
    return std::max(1.0, std::fabs(to_double(d.lambda1)));
}

/// a >= b, with a relative slack in float mode.
template <class T>
bool geq(const T& a, const T& b, double scale)
{
    if constexpr (is_exact_v<T>)
        return a >= b;
    else
        return a >= b - kDiagTol * scale * scale;
}

template <class T>
T sigma2(const std::array<T, 3>& w)
{
    return w[0] * w[1] + w[0] * w[2] + w[1] * w[2];
}

template <class T>
T e2_of(const DiagonalSpec<T>& d)
{
    const Complex<T> s = d.lambda2 + d.lambda3;
    const Complex<T> p = d.lambda2 * d.lambda3;
    return d.lambda1 * s.re + p.re;
}

template <class T>
Matrix<T> assemble(const DiagonalSpec<T>& d, const std::array<T, 3>& x)
{
    std::array<T, 3> r;
    for (int i = 0; i < 3; ++i)
        r[i] = d.lambda1 - d.omega[i];
    Matrix<T> b{
        {d.omega[0], x[0], r[0] - x[0]},
        {x[1], d.omega[1], r[1] - x[1]},
        {x[2], r[2] - x[2], d.omega[2]},
    };
    b.row_sum = d.lambda1;
    return b;
}

/// Sum of the off-diagonal 2x2 products B12 B21 + B13 B31 + B23 B32 for
/// B12 = x0, B21 = x1, B31 = x2 with every row summing to lambda_1.
template <class T>
T cross_sum(const std::array<T, 3>& r, const std::array<T, 3>& x)
{
    return x[0] * x[1] + (r[0] - x[0]) * x[2] + (r[1] - x[1]) * (r[2] - x[2]);
}

} // namespace

template <class T>
bool check_perfect_conditions(const DiagonalSpec<T>& d)
{
    const double sc = scale_of(d);
    const bool real_pair = sign(d.lambda2.im) == 0 && sign(d.lambda3.im) == 0;
    const bool conj_pair = is_exact_v<T> ? d.lambda3 == d.lambda2.conj()
                                         : modulus(Complex<T>(d.lambda3 - d.lambda2.conj())) <= kDiagTol * sc;
    if (!real_pair && !conj_pair)
        return false;
    if (sign(d.lambda1) < 0)
        return false;
    for (const auto* z : {&d.lambda2, &d.lambda3})
        if (!geq(T(d.lambda1 * d.lambda1), z->norm2(), sc))
            return false;
    for (const auto& w : d.omega)
        if (!geq(w, T(0), sc) || !geq(d.lambda1, w, sc))
            return false;
    const T sum_w = d.omega[0] + d.omega[1] + d.omega[2];
    const T sum_l = d.lambda1 + d.lambda2.re + d.lambda3.re;
    if (!geq(sum_w, sum_l, sc) || !geq(sum_l, sum_w, sc))
        return false;
    if (!geq(sigma2(d.omega), e2_of(d), sc))
        return false;
    const T max_w = std::max({d.omega[0], d.omega[1], d.omega[2]});
    const T max_re = std::max(d.lambda2.re, d.lambda3.re);
    return geq(max_w, max_re, sc);
}

template <class T>
Diag3Result<T> construct_3x3_traced(const DiagonalSpec<T>& d)
{
    if (!check_perfect_conditions(d))
        throw Error(Errc::ConditionsNotSatisfied, "diagonal and spectrum are incompatible");
    std::array<T, 3> r;
    for (int i = 0; i < 3; ++i) {
        r[i] = d.lambda1 - d.omega[i];
        if (sign(r[i]) < 0)
            r[i] = T(0);
    }
    T target = sigma2(d.omega) - e2_of(d);
    if (sign(target) < 0)
        target = T(0);

    const double sc = scale_of(d);
    auto finish = [&](const std::array<T, 3>& x, const char* pattern) {
        Diag3Result<T> out{assemble(d, x), pattern};
        const std::vector<Complex<T>> lam{Complex<T>(d.lambda1), d.lambda2, d.lambda3};
        if (!verify_spectrum(out.matrix, lam).passed())
            throw Error(Errc::InternalConstructionError, "3x3 construction failed the oracle");
        return out;
    };

    // Fixed pattern: B12 = 0, B21 = p, B32 = q. Matching e_2 leaves
    // q (p + omega_2 - omega_1) = D.
    const T dd = r[0] * r[2] - target;
    const T g = r[0] - r[1];
    const int ds = is_exact_v<T> ? sign(dd) : sign(dd, kDiagTol * sc * sc);
    std::optional<std::array<T, 3>> x;
    if (ds == 0) {
        x = std::array<T, 3>{T(0), T(0), r[2]};
    } else if (ds > 0 && sign(r[0]) > 0) {
        const T q = dd / r[0];
        if (geq(r[2], q, sc))
            x = std::array<T, 3>{T(0), r[1], T(r[2] - q)};
    } else if (ds < 0 && sign(g) < 0) {
        const T q = dd / g;
        if (geq(r[2], q, sc))
            x = std::array<T, 3>{T(0), T(0), T(r[2] - q)};
    }
    if (x)
        return finish(*x, "pattern");

    // Fallback over the whole box 0 <= x_i <= r_i. The cross sum is
    // multilinear with value 0 at (0, r_1, 0); walk box edges from there to
    // the maximizing vertex and solve on the edge where it crosses target.
    std::array<T, 3> lo{T(0), r[1], T(0)};
    std::array<T, 3> hi = lo;
    T best = cross_sum(r, lo);
    for (int mask = 0; mask < 8; ++mask) {
        std::array<T, 3> v;
        for (int i = 0; i < 3; ++i)
            v[i] = (mask >> i) & 1 ? r[i] : T(0);
        const T s = cross_sum(r, v);
        if (s > best) {
            best = s;
            hi = v;
        }
    }
    if (!geq(best, target, sc))
        throw Error(Errc::NoNonnegativeRoot, "no nonnegative completion exists");
    std::array<T, 3> cur = lo;
    T s_cur = cross_sum(r, cur);
    for (int i = 0; i < 3; ++i) {
        if (cur[i] == hi[i])
            continue;
        std::array<T, 3> next = cur;
        next[i] = hi[i];
        const T s_next = cross_sum(r, next);
        if (s_next >= target || i == 2) {
            if (s_next == s_cur)
                return finish(next, "box-edge");
            T t = (target - s_cur) / (s_next - s_cur);
            if (t > T(1))
                t = T(1);
            if (sign(t) < 0)
                t = T(0);
            cur[i] = cur[i] + t * (hi[i] - cur[i]);
            return finish(cur, "box-edge");
        }
        cur = next;
        s_cur = s_next;
    }
    return finish(cur, "box-edge");
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template bool check_perfect_conditions(const DiagonalSpec<T>&);                                           \
    template Diag3Result<T> construct_3x3_traced(const DiagonalSpec<T>&);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

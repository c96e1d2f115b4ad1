#include "niep/perturb.hpp"

#include "niep/linalg.hpp"
#include "niep/verify.hpp"

#include <cmath>

namespace niep {

namespace {

template <class T>
bool near_zero_matrix(const Matrix<T>& r, double scale)
{
    if constexpr (is_exact_v<T>) {
        for (const auto& x : r.data())
            if (sgn(x) != 0)
                return false;
        return true;
    } else {
        return max_magnitude(r) <= kEigenpairTol * std::max(1.0, scale);
    }
}

template <class T>
bool is_symmetric(const Matrix<T>& a)
{
    if (!a.is_square())
        return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (is_exact_v<T> ? a(i, j) != a(j, i)
                              : magnitude(T(a(i, j) - a(j, i))) > kEntryTol * std::max(1.0, max_magnitude(a)))
                return false;
    return true;
}

template <class T>
void require_eigen_relation(const Matrix<T>& a, const Matrix<T>& x, const std::vector<T>& omega)
{
    if (x.rows() != a.rows() || omega.size() != x.cols())
        throw Error(Errc::DimensionMismatch, "X/Omega shape");
    Matrix<T> xo = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            xo(i, j) *= omega[j];
    if (!near_zero_matrix(Matrix<T>(a * x - xo), std::max(1.0, norm_inf(a)) * std::max(1.0, max_magnitude(x))))
        throw Error(Errc::EigenRelationViolated, "A X != X Omega");
}

/// Copy the upper triangle onto the lower one so float rounding cannot
/// break symmetry.
template <class T>
void mirror_upper(Matrix<T>& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            m(j, i) = m(i, j);
}

} // namespace

template <class T>
std::optional<T> common_row_sum(const Matrix<T>& a)
{
    if (a.rows() == 0)
        return std::nullopt;
    StructuralFlags f;
    f.nonnegative = false;
    f.row_sums = true;
    auto r = structural_checks(a, f);
    if (!r.row_sum->pass)
        return std::nullopt;
    T s(0);
    for (std::size_t j = 0; j < a.cols(); ++j)
        s += a(0, j);
    return s;
}

template <class T>
bool is_eigenpair(const Matrix<T>& a, const Vector<T>& v, const T& lambda)
{
    if (a.cols() != v.size())
        return false;
    const auto av = a * v;
    Matrix<T> r(v.size(), 1);
    double vmax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        r(i, 0) = av[i] - lambda * v[i];
        vmax = std::max(vmax, magnitude(v[i]));
    }
    return near_zero_matrix(r, std::max(1.0, norm_inf(a)) * vmax);
}

template <class T>
Matrix<T> brauer_update(const Matrix<T>& a, const Vector<T>& v, const Vector<T>& q, const T& lambda_k)
{
    if (!a.is_square() || v.size() != a.rows() || q.size() != a.rows())
        throw Error(Errc::DimensionMismatch, "brauer_update shapes");
    if (!is_eigenpair(a, v, lambda_k))
        throw Error(Errc::NotAnEigenpair, "A v != lambda_k v");
    Matrix<T> out = a + outer(v, q);
    out.symmetric = false;
    out.row_sum.reset();
    bool v_is_e = true;
    for (const auto& x : v)
        if (x != T(1))
            v_is_e = false;
    if (v_is_e) {
        std::optional<T> alpha = a.row_sum ? a.row_sum : common_row_sum(a);
        if (alpha) {
            T s = *alpha;
            for (const auto& x : q)
                s += x;
            out.row_sum = s;
        }
    }
    return out;
}

template <class T>
Matrix<T> rado_update(const Matrix<T>& a, const RadoUpdate<T>& u)
{
    if (!a.is_square() || u.X.rows() != a.rows() || u.C.rows() != u.X.cols() || u.C.cols() != a.cols())
        throw Error(Errc::DimensionMismatch, "rado_update shapes");
    if (rank(u.X) < u.X.cols())
        throw Error(Errc::RankDeficientX, "X does not have full column rank");
    require_eigen_relation(a, u.X, u.omega);
    Matrix<T> out = a + u.X * u.C;
    out.symmetric = false;
    out.row_sum = common_row_sum(out);
    return out;
}

template <class T>
Matrix<T> symmetric_rado_update(const Matrix<T>& a, const Matrix<T>& x, const Matrix<T>& c, const std::vector<T>& omega)
{
    if (!is_symmetric(a))
        throw Error(Errc::NotSymmetric, "A is not symmetric");
    if (!is_symmetric(c) || c.rows() != x.cols())
        throw Error(Errc::NotSymmetric, "C is not symmetric");
    if (!near_zero_matrix(Matrix<T>(x.transpose() * x - Matrix<T>::identity(x.cols())), 1.0))
        throw Error(Errc::NotOrthonormal, "X^T X != I");
    require_eigen_relation(a, x, omega);
    Matrix<T> out = a + x * c * x.transpose();
    mirror_upper(out);
    out.symmetric = true;
    out.row_sum = common_row_sum(out);
    return out;
}

template <class T>
Matrix<T> symmetric_rado_update_orthogonal(const Matrix<T>& a, const Matrix<T>& x, const Matrix<T>& c,
                                           const std::vector<T>& omega)
{
    if (!is_symmetric(a))
        throw Error(Errc::NotSymmetric, "A is not symmetric");
    if (!is_symmetric(c) || c.rows() != x.cols())
        throw Error(Errc::NotSymmetric, "C is not symmetric");
    Matrix<T> gram = x.transpose() * x;
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        if (sign(gram(i, i)) <= 0)
            throw Error(Errc::NotOrthonormal, "zero column in X");
        gram(i, i) = T(0);
    }
    if (!near_zero_matrix(gram, 1.0))
        throw Error(Errc::NotOrthonormal, "columns of X are not orthogonal");
    require_eigen_relation(a, x, omega);
    Matrix<T> out = a + x * c * x.transpose();
    mirror_upper(out);
    out.symmetric = true;
    out.row_sum = common_row_sum(out);
    return out;
}

template <class T>
Matrix<T> shift_perron(const Matrix<T>& a, const T& eps)
{
    if (sign(eps) < 0)
        throw Error(Errc::NegativeEps, "eps must be nonnegative");
    const auto alpha = a.row_sum ? a.row_sum : common_row_sum(a);
    if (!alpha)
        throw Error(Errc::InvalidInput, "matrix does not have constant row sums");
    Matrix<T> base = a;
    base.row_sum = alpha;
    Vector<T> q(a.rows(), T(0));
    q[0] = eps;
    return brauer_update(base, ones<T>(a.rows()), q, *alpha);
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template std::optional<T> common_row_sum(const Matrix<T>&);                                               \
    template bool is_eigenpair(const Matrix<T>&, const Vector<T>&, const T&);                                 \
    template Matrix<T> brauer_update(const Matrix<T>&, const Vector<T>&, const Vector<T>&, const T&);         \
    template Matrix<T> rado_update(const Matrix<T>&, const RadoUpdate<T>&);                                   \
    template Matrix<T> symmetric_rado_update(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&,            \
                                             const std::vector<T>&);                                          \
    template Matrix<T> symmetric_rado_update_orthogonal(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&, \
                                                        const std::vector<T>&);                               \
    template Matrix<T> shift_perron(const Matrix<T>&, const T&);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

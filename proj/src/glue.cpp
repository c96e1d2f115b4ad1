#include "niep/glue.hpp"

#include "niep/linalg.hpp"
#include "niep/perturb.hpp"
#include "niep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace niep {

namespace {

constexpr double kUnitTol = 1e-9;
constexpr int kInverseIterations = 50;

template <class T>
T row_sum_of(const Matrix<T>& a, const char* what)
{
    if (auto s = a.row_sum ? a.row_sum : common_row_sum(a))
        return *s;
    throw Error(Errc::InvalidInput, std::string(what) + " must have constant row sums");
}

template <class T>
bool less_than(const T& a, const T& b)
{
    if constexpr (is_exact_v<T>)
        return a < b;
    else
        return a < b - 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

template <class T>
std::vector<T> poly_mul(const std::vector<T>& p, const std::vector<T>& q)
{
    std::vector<T> out(p.size() + q.size() - 1, T(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            out[i + j] += p[i] * q[j];
    return out;
}

template <class T>
std::vector<T> linear(const T& root)
{
    return {T(1), T(-root)};
}

/// char_poly(out) * removed == char_poly-product of the sources, exact mode
/// only; the float path is covered by the property suites.
template <class T>
void certify_product(const Matrix<T>& out, const std::vector<T>& removed, const std::vector<T>& expected,
                     const char* who)
{
    if constexpr (is_exact_v<T>) {
        if (poly_mul(char_poly(out), removed) != expected)
            throw Error(Errc::InternalConstructionError, std::string(who) + " output failed the oracle");
    }
}

template <class T>
bool is_symmetric_matrix(const Matrix<T>& a)
{
    if (!a.is_square())
        return false;
    const double scale = std::max(1.0, max_magnitude(a));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if constexpr (is_exact_v<T>) {
                if (a(i, j) != a(j, i))
                    return false;
            } else if (std::fabs(a(i, j) - a(j, i)) > kEntryTol * scale) {
                return false;
            }
        }
    return true;
}

template <class T>
T squared_norm(const Vector<T>& v)
{
    return dot(v, v);
}

template <class T>
Matrix<T> two_block_x(const Vector<T>& u, const Vector<T>& v)
{
    Matrix<T> x(u.size() + v.size(), 2);
    for (std::size_t i = 0; i < u.size(); ++i)
        x(i, 0) = u[i];
    for (std::size_t i = 0; i < v.size(); ++i)
        x(u.size() + i, 1) = v[i];
    return x;
}

/// Nonnegative Perron vector of a symmetric nonnegative matrix: e for
/// constant row sums, otherwise an eigenvector for the given root.
template <class T>
Vector<T> perron_vector(const Matrix<T>& a, const T& root)
{
    if (auto s = common_row_sum(a); s && *s == root)
        return ones<T>(a.rows());
    Vector<T> u = eigenvector_for(a, root);
    T total(0);
    for (const auto& x : u)
        total += x;
    if (sign(total) < 0)
        for (auto& x : u)
            x = -x;
    if constexpr (!is_exact_v<T>) {
        double big = 0.0;
        for (const auto& x : u)
            big = std::max(big, std::fabs(x));
        for (auto& x : u)
            if (std::fabs(x) <= 1e-13 * big)
                x = 0.0;
    }
    return u;
}

template <class T>
T perron_root(const Matrix<T>& a, const std::optional<T>& given)
{
    if (given)
        return *given;
    if (auto s = common_row_sum(a))
        return *s;
    if constexpr (is_exact_v<T>) {
        throw Error(Errc::InvalidInput, "Perron root must be supplied for matrices without constant row sums");
    } else {
        return symmetric_eigenvalues(a).front();
    }
}

} // namespace

template <class T>
Vector<T> eigenvector_for(const Matrix<T>& a, const T& lambda)
{
    const std::size_t n = a.rows();
    Matrix<T> shifted = a;
    for (std::size_t i = 0; i < n; ++i)
        shifted(i, i) -= lambda;
    if constexpr (is_exact_v<T>) {
        auto basis = null_space(shifted);
        if (basis.empty())
            throw Error(Errc::NotAnEigenvalue, to_string(lambda) + " is not an eigenvalue");
        return basis.front();
    } else {
        const double scale = std::max(1.0, norm_inf(a));
        const double eta = 1e-8 * std::max(1.0, std::fabs(lambda));
        Matrix<double> m = shifted;
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) -= eta;
        std::mt19937_64 rng(0x5eed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Vector<double> x(n);
        for (auto& v : x)
            v = dist(rng);
        auto residual = [&](const Vector<double>& y) {
            const auto r = shifted * y;
            double worst = 0.0, big = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                worst = std::max(worst, std::fabs(r[i]));
                big = std::max(big, std::fabs(y[i]));
            }
            return big == 0.0 ? INFINITY : worst / big;
        };
        for (int it = 0; it < kInverseIterations; ++it) {
            try {
                x = solve(m, x, 1e-300);
            } catch (const Error&) {
                break;
            }
            double big = 0.0;
            for (const auto& v : x)
                big = std::max(big, std::fabs(v));
            if (big == 0.0 || !std::isfinite(big))
                break;
            for (auto& v : x)
                v /= big;
            if (residual(x) <= 1e-12 * scale)
                break;
        }
        if (!(residual(x) <= 1e-7 * scale))
            throw Error(Errc::NotAnEigenvalue, to_string(lambda) + " is not an eigenvalue");
        return x;
    }
}

template <class T>
Matrix<T> guo_eps_perturb(const Matrix<T>& a, const T& lambda2, const T& eps, EpsSign sign_choice, Trace<T>* trace)
{
    if (sign(eps) < 0)
        throw Error(Errc::NegativeEps, "eps must be nonnegative");
    const T alpha = row_sum_of(a, "A");
    if (sign(eps) == 0) {
        record(trace, "eps = 0: A unchanged", {{"A", a}});
        return a;
    }
    const Vector<T> x = eigenvector_for(a, lambda2);
    const std::size_t n = a.rows();
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] > x[imax])
            imax = i;
        if (x[i] < x[imin])
            imin = i;
    }
    const T d = x[imax] - x[imin];
    double big = 0.0;
    for (const auto& v : x)
        big = std::max(big, magnitude(v));
    if (sign(d) == 0 || (!is_exact_v<T> && to_double(d) <= 1e-12 * big))
        throw Error(Errc::DegenerateEigenvector, "eigenvector is parallel to e");

    RadoUpdate<T> u{Matrix<T>(n, 2), Matrix<T>(2, n), {alpha, lambda2}};
    for (std::size_t i = 0; i < n; ++i) {
        u.X(i, 0) = T(1);
        u.X(i, 1) = x[i];
    }
    const T s = eps / d;
    if (sign_choice == EpsSign::Plus) {
        u.C(0, imax) = -s * x[imin];
        u.C(0, imin) = s * x[imax];
        u.C(1, imax) = s;
        u.C(1, imin) = -s;
    } else {
        u.C(0, imax) = s * x[imax];
        u.C(0, imin) = -s * x[imin];
        u.C(1, imax) = -s;
        u.C(1, imin) = s;
    }
    Matrix<T> base = a;
    base.row_sum = alpha;
    Matrix<T> m = rado_update(base, u);
    m.row_sum = alpha + eps;
    const T moved = sign_choice == EpsSign::Plus ? T(lambda2 + eps) : T(lambda2 - eps);
    certify_product(m, poly_mul(linear(alpha), linear(lambda2)),
                    poly_mul(char_poly(a), poly_mul(linear(T(alpha + eps)), linear(moved))), "guo-eps");
    if (trace) {
        trace->theorem = "Guo eps transfer";
        trace->step("eigenvector x for lambda_2; X = [e | x]", {{"X", u.X}});
        trace->step(std::string("C from the extreme entries of x (") + (sign_choice == EpsSign::Plus ? "+" : "-") +
                        " variant)",
                    {{"C", u.C}});
        trace->step("Rado update M = A + X C", {{"M", m}});
    }
    return m;
}

template <class T>
Matrix<T> merge_lists_eps(const Matrix<T>& a1, const Matrix<T>& a2, const T& eps, Trace<T>* trace)
{
    const T alpha = row_sum_of(a1, "A1");
    const T beta = row_sum_of(a2, "A2");
    const T floor = std::max(T(beta - alpha), T(0));
    if (less_than(eps, floor))
        throw Error(Errc::EpsTooSmall, "eps must be at least " + to_string(floor));
    const std::size_t n2 = a2.rows();
    const std::size_t n = n2 + a1.rows();
    Matrix<T> b(n, n);
    b.set_block(0, 0, a2);
    b.set_block(n2, n2, a1);
    for (std::size_t i = 0; i < n2; ++i) {
        b(i, 0) -= eps;
        b(i, n2) += alpha - beta + eps;
    }
    b.row_sum = alpha;
    Matrix<T> m = shift_perron(b, eps);
    m.row_sum = alpha + eps;
    certify_product(m, poly_mul(linear(alpha), linear(beta)),
                    poly_mul(poly_mul(char_poly(a1), char_poly(a2)),
                             poly_mul(linear(T(alpha + eps)), linear(T(beta - eps)))),
                    "merge");
    if (trace) {
        trace->theorem = "two-list merge";
        trace->step("block matrix [[A2 - eps e e1^T, (alpha1 - beta1 + eps) e e1^T], [0, A1]]", {{"B", b}});
        trace->step("Perron shift by eps", {{"M", m}});
    }
    return m;
}

template <class T>
SmigocGlue<T> smigoc_glue(const Matrix<T>& a, const Matrix<T>& b, std::optional<std::size_t> corner,
                          Trace<T>* trace)
{
    if (!a.is_square() || !b.is_square() || a.rows() == 0 || b.rows() == 0)
        throw Error(Errc::DimensionMismatch, "glue operands must be square and nonempty");
    const std::size_t n = a.rows();
    const std::size_t k = corner.value_or(n - 1);
    if (k >= n)
        throw Error(Errc::InvalidInput, "corner index out of range");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    std::swap(perm[k], perm[n - 1]);
    Matrix<T> ap(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            ap(i, j) = a(perm[i], perm[j]);

    const T c = ap(n - 1, n - 1);
    const T lambda1 = row_sum_of(b, "B");
    if (less_than(c, lambda1))
        throw Error(Errc::PerronExceedsCorner, "Perron root of B exceeds the corner entry");
    const std::size_t m = b.rows();
    std::size_t pmax = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (b(i, i) > b(pmax, pmax))
            pmax = i;
    Vector<T> q(m, T(0));
    q[pmax] = c - lambda1;
    Matrix<T> bb = b;
    bb.row_sum = lambda1;
    const Matrix<T> bp = brauer_update(bb, ones<T>(m), q, lambda1);

    const std::size_t order = n - 1 + m;
    Matrix<T> out(order, order);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j)
            out(i, j) = ap(i, j);
        out(i, n - 1) = ap(i, n - 1);
    }
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j + 1 < n; ++j)
            out(n - 1 + r, j) = ap(n - 1, j);
    out.set_block(n - 1, n - 1, bp);
    certify_product(out, linear(c), poly_mul(char_poly(ap), char_poly(bp)), "smigoc-glue");
    if (trace) {
        trace->theorem = "Smigoc glue";
        if (k != n - 1)
            trace->step("permutation similarity moving diagonal entry " + std::to_string(k + 1) + " to the corner",
                        {{"A'", ap}});
        trace->step("B' = B + (c - lambda_1) e e_p^T at the maximal diagonal position", {{"B'", bp}});
        trace->step("glued matrix [[A_1, a e_1^T], [e b^T, B']]", {{"M", out}});
    }
    return {std::move(out), std::move(perm)};
}

template <class T>
Matrix<T> fiedler_couple(const Matrix<T>& a, const Matrix<T>& b, const Vector<T>& u, const Vector<T>& v,
                         const T& rho, Trace<T>* trace)
{
    if (!is_symmetric_matrix(a) || !is_symmetric_matrix(b))
        throw Error(Errc::NotSymmetric, "A and B must be symmetric");
    if (u.size() != a.rows() || v.size() != b.rows())
        throw Error(Errc::DimensionMismatch, "eigenvector length");
    for (const auto* w : {&u, &v}) {
        const T nn = squared_norm(*w);
        const bool unit = is_exact_v<T> ? nn == T(1) : std::fabs(std::sqrt(to_double(nn)) - 1.0) <= kUnitTol;
        if (!unit)
            throw Error(Errc::NotUnit, "eigenvectors must have unit length");
    }
    const T alpha = dot(u, a * u);
    const T beta = dot(v, b * v);
    if (!is_eigenpair(a, u, alpha) || !is_eigenpair(b, v, beta))
        throw Error(Errc::NotAnEigenpair, "u, v must be eigenvectors of A, B");
    const Matrix<T> base = direct_sum(a, b);
    const Matrix<T> x = two_block_x(u, v);
    const Matrix<T> c{{T(0), rho}, {rho, T(0)}};
    Matrix<T> m = symmetric_rado_update(base, x, c, {alpha, beta});
    if (trace) {
        trace->theorem = "Fiedler coupling";
        trace->step("symmetric update diag(A, B) + X C X^T with C = [[0, rho], [rho, 0]]",
                    {{"X", x}, {"C", c}, {"M", m}});
    }
    return m;
}

template <class T>
Matrix<T> fiedler_eps(const Matrix<T>& a, const Matrix<T>& b, const T& eps, std::optional<T> alpha1,
                      std::optional<T> beta1, Trace<T>* trace)
{
    if (!is_symmetric_matrix(a) || !is_symmetric_matrix(b))
        throw Error(Errc::NotSymmetric, "A and B must be symmetric");
    if (sign(eps) < 0)
        throw Error(Errc::NegativeEps, "eps must be nonnegative");
    const T alpha = perron_root(a, alpha1);
    const T beta = perron_root(b, beta1);
    if (less_than(alpha, beta))
        throw Error(Errc::OrderViolated, "alpha_1 must be at least beta_1");
    if (trace)
        trace->theorem = "Fiedler eps coupling";
    if (sign(eps) == 0) {
        Matrix<T> m = direct_sum(a, b);
        m.symmetric = true;
        record(trace, "eps = 0: block diagonal", {{"M", m}});
        return m;
    }
    const Vector<T> u = perron_vector(a, alpha);
    const Vector<T> v = perron_vector(b, beta);
    const T kappa2 = eps * (eps + alpha - beta) / (squared_norm(u) * squared_norm(v));
    T kappa;
    if constexpr (is_exact_v<T>) {
        auto root = exact_sqrt(kappa2);
        if (!root)
            throw Error(Errc::InexactInRationalMode, "coupling constant " + to_string(kappa2) + " is not a square");
        kappa = *root;
    } else {
        kappa = std::sqrt(kappa2);
    }
    const Matrix<T> x = two_block_x(u, v);
    const Matrix<T> c{{T(0), kappa}, {kappa, T(0)}};
    Matrix<T> m = symmetric_rado_update_orthogonal(direct_sum(a, b), x, c, {alpha, beta});
    certify_product(m, poly_mul(linear(alpha), linear(beta)),
                    poly_mul(poly_mul(char_poly(a), char_poly(b)),
                             poly_mul(linear(T(alpha + eps)), linear(T(beta - eps)))),
                    "fiedler");
    record(trace, "rho = sqrt(eps (eps + alpha_1 - beta_1)) on the Perron vectors",
           {{"X", x}, {"C", c}, {"M", m}});
    return m;
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template Vector<T> eigenvector_for(const Matrix<T>&, const T&);                                           \
    template Matrix<T> guo_eps_perturb(const Matrix<T>&, const T&, const T&, EpsSign, Trace<T>*);             \
    template Matrix<T> merge_lists_eps(const Matrix<T>&, const Matrix<T>&, const T&, Trace<T>*);              \
    template SmigocGlue<T> smigoc_glue(const Matrix<T>&, const Matrix<T>&, std::optional<std::size_t>,        \
                                       Trace<T>*);                                                            \
    template Matrix<T> fiedler_couple(const Matrix<T>&, const Matrix<T>&, const Vector<T>&, const Vector<T>&, \
                                      const T&, Trace<T>*);                                                   \
    template Matrix<T> fiedler_eps(const Matrix<T>&, const Matrix<T>&, const T&, std::optional<T>,            \
                                   std::optional<T>, Trace<T>*);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

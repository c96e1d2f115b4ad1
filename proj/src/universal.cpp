#include "niep/universal.hpp"

#include "niep/linalg.hpp"
#include "niep/realize.hpp"
#include "niep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace niep {

namespace {

constexpr double kSameValueTol = 1e-9;
constexpr double kNullTol = 1e-8;
constexpr double kDiagonalTol = 1e-8;
constexpr double kRealTol = 1e-9;
constexpr int kMaxHalvings = 80;

template <class T>
bool same_value(const Complex<T>& a, const Complex<T>& b)
{
    if constexpr (is_exact_v<T>)
        return a == b;
    else
        return std::hypot(a.re - b.re, a.im - b.im) <= kSameValueTol * std::max(1.0, modulus(a));
}

template <class T>
struct Distinct {
    Complex<T> value;
    std::size_t mult;
};

template <class T>
std::vector<Distinct<T>> distinct_values(const Spectrum<T>& s)
{
    std::vector<Distinct<T>> out;
    for (const auto& z : s.values) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& d) { return same_value(d.value, z); });
        if (it == out.end())
            out.push_back({z, 1});
        else
            ++it->mult;
    }
    return out;
}

template <class T>
Matrix<Complex<T>> shifted(const Matrix<T>& a, const Complex<T>& lambda)
{
    auto b = to_complex(a);
    for (std::size_t i = 0; i < b.rows(); ++i)
        b(i, i) -= lambda;
    return b;
}

template <class T>
T exact_norm_inf(const Matrix<T>& a)
{
    T best(0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T row(0);
        for (std::size_t j = 0; j < a.cols(); ++j)
            row += absval(a(i, j));
        if (row > best)
            best = row;
    }
    return best;
}

template <class T>
T min_entry(const Matrix<T>& a)
{
    T m = a(0, 0);
    for (const auto& x : a.data())
        if (x < m)
            m = x;
    return m;
}

template <class T>
bool strictly_positive(const Matrix<T>& a)
{
    return std::all_of(a.data().begin(), a.data().end(), [](const T& x) { return sign(x) > 0; });
}

template <class T>
void normalize_column(Vector<Complex<T>>& v)
{
    if constexpr (!is_exact_v<T>) {
        double n2 = 0.0;
        for (const auto& z : v)
            n2 += z.norm2();
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : v)
            z = {z.re * inv, z.im * inv};
    }
}

/// Solve K A - A K = 1 on the zero pattern of A and shrink t until
/// (I + tK) A (I + tK)^-1 is entrywise positive.
template <class T>
std::optional<std::pair<Matrix<T>, Matrix<T>>> positivize(const Matrix<T>& a)
{
    const std::size_t n = a.rows();
    std::vector<std::pair<std::size_t, std::size_t>> zeros;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sign(a(i, j)) <= 0)
                zeros.emplace_back(i, j);
    if (zeros.empty())
        return std::make_pair(Matrix<T>::identity(n), a);

    const std::size_t vars = n * n;
    Matrix<T> sys(zeros.size(), vars + 1);
    for (std::size_t r = 0; r < zeros.size(); ++r) {
        const auto [i, j] = zeros[r];
        for (std::size_t k = 0; k < n; ++k) {
            sys(r, i * n + k) += a(k, j);
            sys(r, k * n + j) -= a(i, k);
        }
        sys(r, vars) = T(1);
    }
    const auto ech = rref(sys, 1e-12);
    if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == vars)
        return std::nullopt;
    Matrix<T> k(n, n);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
        const std::size_t c = ech.pivot_cols[r];
        k(c / n, c % n) = ech.reduced(r, vars);
    }

    T t(1);
    for (int h = 0; h < kMaxHalvings; ++h, t /= T(2)) {
        Matrix<T> s = Matrix<T>::identity(n) + t * k;
        Matrix<T> s_inv;
        try {
            s_inv = inverse(s);
        } catch (const Error&) {
            continue;
        }
        Matrix<T> m = s * a * s_inv;
        if (strictly_positive(m)) {
            m.row_sum.reset();
            m.symmetric = false;
            return std::make_pair(std::move(s), std::move(m));
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<Partition> integer_partitions(std::size_t n)
{
    std::vector<Partition> out;
    Partition cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t cap) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t part = 1; part <= std::min(left, cap); ++part) {
            cur.push_back(part);
            rec(left - part, part);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    return out;
}

template <class T>
std::string JordanSpec<T>::to_string() const
{
    std::string out;
    for (const auto& e : entries) {
        if (!out.empty())
            out += " ";
        out += niep::to_string(e.value) + ":{";
        for (std::size_t i = 0; i < e.blocks.size(); ++i)
            out += (i ? "," : "") + std::to_string(e.blocks[i]);
        out += "}";
    }
    return out;
}

template <class T>
std::vector<JordanSpec<T>> enumerate_jordan_forms(const Spectrum<T>& s)
{
    const auto distinct = distinct_values(s);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < distinct.size(); ++i)
        if (sign(distinct[i].value.im) >= 0)
            reps.push_back(i);

    std::vector<std::vector<Partition>> choices;
    for (auto i : reps)
        choices.push_back(integer_partitions(distinct[i].mult));

    std::vector<JordanSpec<T>> out;
    std::vector<std::size_t> pick(reps.size(), 0);
    while (true) {
        JordanSpec<T> spec;
        for (std::size_t r = 0; r < reps.size(); ++r) {
            const auto& d = distinct[reps[r]];
            spec.entries.push_back({d.value, d.mult, choices[r][pick[r]]});
            if (sign(d.value.im) > 0)
                spec.entries.push_back({d.value.conj(), d.mult, choices[r][pick[r]]});
        }
        out.push_back(std::move(spec));
        bool done = true;
        for (std::size_t r = reps.size(); r-- > 0;) {
            if (++pick[r] < choices[r].size()) {
                done = false;
                break;
            }
            pick[r] = 0;
        }
        if (done)
            break;
    }
    return out;
}

template <class T>
Diagonalization<T> eigen_basis(const Matrix<T>& a, const Spectrum<T>& s)
{
    const std::size_t n = a.rows();
    if (!a.is_square() || n != s.size())
        throw Error(Errc::DimensionMismatch, "matrix order differs from the list length");
    const auto distinct = distinct_values(s);

    std::vector<std::pair<Complex<T>, std::vector<Vector<Complex<T>>>>> found;
    Diagonalization<T> d;
    std::vector<Vector<Complex<T>>> columns;
    for (const auto& [lambda, mult] : distinct) {
        std::vector<Vector<Complex<T>>> basis;
        if (sign(lambda.im) < 0) {
            auto it = std::find_if(found.begin(), found.end(),
                                   [&](const auto& f) { return same_value(f.first, lambda.conj()); });
            if (it == found.end())
                throw Error(Errc::InvalidInput, "conjugate partner missing");
            for (const auto& v : it->second) {
                Vector<Complex<T>> w;
                for (const auto& z : v)
                    w.push_back(z.conj());
                basis.push_back(std::move(w));
            }
        } else {
            basis = null_space(shifted(a, lambda), kNullTol);
            if (basis.size() < mult)
                throw Error(Errc::NotDiagonalizable, "eigenvalue " + to_string(lambda) + " has " +
                                                         std::to_string(basis.size()) + " eigenvectors for multiplicity " +
                                                         std::to_string(mult));
            if (basis.size() > mult)
                throw Error(Errc::InvalidInput, "matrix does not have the stated spectrum at " + to_string(lambda));
            for (auto& v : basis)
                normalize_column(v);
            found.emplace_back(lambda, basis);
        }
        for (auto& v : basis) {
            columns.push_back(std::move(v));
            d.order.push_back(lambda);
        }
    }

    d.S = Matrix<Complex<T>>(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            d.S(i, j) = columns[j][i];
    try {
        d.S_inv = inverse(d.S, 1e-13);
    } catch (const Error&) {
        throw Error(Errc::NotDiagonalizable, "eigenvector matrix is singular");
    }
    const double cond = norm_inf(d.S) * norm_inf(d.S_inv);
    if (cond > kMaxCondition)
        throw Error(Errc::IllConditioned, "eigenvector condition estimate " + std::to_string(cond));

    const auto diag = d.S_inv * to_complex(a) * d.S;
    const double scale = kDiagonalTol * std::max(1.0, norm_inf(a));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex<T> want = i == j ? d.order[i] : Complex<T>(T(0));
            if constexpr (is_exact_v<T>) {
                if (!(diag(i, j) == want))
                    throw Error(Errc::InternalConstructionError, "S^-1 A S is not the expected diagonal");
            } else if (magnitude(diag(i, j) - want) > scale) {
                throw Error(Errc::IllConditioned, "S^-1 A S deviates from the diagonal");
            }
        }
    return d;
}

template <class T>
MincResult<T> minc_realize(const Matrix<T>& a, const Diagonalization<T>& d, const JordanSpec<T>& target,
                           std::optional<T> eps)
{
    const std::size_t n = a.rows();
    Matrix<Complex<T>> links(n, n);
    std::size_t covered = 0;
    for (const auto& e : target.entries) {
        std::vector<std::size_t> idx;
        for (std::size_t c = 0; c < n; ++c)
            if (same_value(d.order[c], e.value))
                idx.push_back(c);
        std::size_t total = 0;
        for (auto b : e.blocks)
            total += b;
        if (idx.size() != e.multiplicity || total != e.multiplicity)
            throw Error(Errc::InvalidInput, "target is not allowed by the spectrum at " + to_string(e.value));
        std::size_t p = 0;
        for (auto b : e.blocks) {
            for (std::size_t t = 0; t + 1 < b; ++t)
                links(idx[p + t], idx[p + t + 1]) = Complex<T>(T(1));
            p += b;
        }
        covered += total;
    }
    if (covered != n)
        throw Error(Errc::InvalidInput, "target does not cover the spectrum");

    const auto pc = d.S * links * d.S_inv;
    const double scale = std::max(1.0, max_magnitude(pc));
    Matrix<T> p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if constexpr (is_exact_v<T>) {
                if (sign(pc(i, j).im) != 0)
                    throw Error(Errc::ComplexPerturbation, "S N S^-1 is not real");
            } else if (std::fabs(pc(i, j).im) > kRealTol * scale) {
                throw Error(Errc::ComplexPerturbation, "S N S^-1 is not real");
            }
            p(i, j) = pc(i, j).re;
        }

    const T amin = min_entry(a);
    if (sign(amin) <= 0)
        throw Error(Errc::InvalidInput, "A must be entrywise positive");
    T step;
    if (eps) {
        step = *eps;
        if (sign(step) <= 0)
            throw Error(Errc::InvalidInput, "eps must be positive");
    } else {
        step = amin / (T(2) * std::max(T(1), exact_norm_inf(p)));
    }
    Matrix<T> m = a + step * p;
    if (!strictly_positive(m))
        throw Error(Errc::EpsTooLarge, "eps " + to_string(step) + " destroys positivity");
    m.row_sum = a.row_sum;
    m.symmetric = false;
    return {std::move(m), step, std::move(p)};
}

template <class T>
RankChain<T> jordan_structure(const Matrix<T>& m, const Complex<T>& lambda, std::size_t mult)
{
    const std::size_t n = m.rows();
    const auto b = shifted(m, lambda);
    RankChain<T> chain;
    chain.ranks.push_back(n);
    auto power = Matrix<Complex<T>>::identity(n);
    for (std::size_t k = 1; k <= mult; ++k) {
        power = power * b;
        if constexpr (is_exact_v<T>)
            chain.ranks.push_back(bareiss_rank(power));
        else
            chain.ranks.push_back(numerical_rank(power, kJordanRankTol));
    }
    std::vector<std::size_t> at_least(mult + 2, 0);
    for (std::size_t k = 1; k <= mult; ++k) {
        if (chain.ranks[k] > chain.ranks[k - 1])
            throw Error(Errc::RankChainInconsistent, "rank increases along the chain");
        at_least[k] = chain.ranks[k - 1] - chain.ranks[k];
        if (k > 1 && at_least[k] > at_least[k - 1])
            throw Error(Errc::RankChainInconsistent, "block counts are not monotone");
    }
    if (n - chain.ranks[mult] != mult)
        throw Error(Errc::RankChainInconsistent, "generalized eigenspace dimension " +
                                                     std::to_string(n - chain.ranks[mult]) + " differs from " +
                                                     std::to_string(mult));
    for (std::size_t k = mult; k >= 1; --k)
        for (std::size_t c = at_least[k + 1]; c < at_least[k]; ++c)
            chain.blocks.push_back(k);
    return chain;
}

template <class T>
PositiveRealization<T> positive_diagonalizable_realization(const Spectrum<T>& s)
{
    std::string why;
    for (auto& r : realize_every(s)) {
        const std::string name(criterion_name(r.criterion));
        try {
            auto d = eigen_basis(r.matrix, s);
            Trace<T> tr = r.certificate;
            if (strictly_positive(r.matrix))
                return {r.matrix, std::move(d), std::move(tr)};
            auto pos = positivize(r.matrix);
            if (!pos) {
                why += "\n  " + name + ": diagonalizable but no positive similarity found";
                continue;
            }
            tr.step("similarity S A S^-1 with S = I + tK making every entry positive",
                    {{"S", pos->first}, {"A+", pos->second}});
            auto d2 = eigen_basis(pos->second, s);
            return {std::move(pos->second), std::move(d2), std::move(tr)};
        } catch (const Error& e) {
            if (e.code() != Errc::NotDiagonalizable && e.code() != Errc::IllConditioned)
                throw;
            why += "\n  " + name + ": " + e.what();
        }
    }
    if (why.empty())
        why = "\n  no implemented criterion applies";
    throw Error(Errc::PositiveRealizationNotFound, "no positive diagonalizable realization found" + why);
}

template <class T>
UniversalResult<T> realize_universal(const Spectrum<T>& s, PositiveRealization<T> base, std::optional<T> eps)
{
    UniversalResult<T> out{std::move(base), {}};
    StructuralFlags flags;
    flags.positive = true;
    for (auto& target : enumerate_jordan_forms(s)) {
        auto minc = minc_realize(out.base.matrix, out.base.basis, target, eps);
        const auto report = full_check(minc.matrix, s, flags);
        if (!report.passed())
            throw Error(Errc::InternalConstructionError, "form " + target.to_string() + " failed the oracle:\n" +
                                                             report.summary());
        UniversalForm<T> form{target, std::move(minc.matrix), minc.eps, {}};
        for (const auto& e : target.entries) {
            auto chain = jordan_structure(form.matrix, e.value, e.multiplicity);
            if (chain.blocks != e.blocks)
                throw Error(Errc::InternalConstructionError,
                            "rank chain of " + to_string(e.value) + " disagrees with form " + target.to_string());
            form.chains.push_back(std::move(chain));
        }
        out.forms.push_back(std::move(form));
    }
    return out;
}

template <class T>
UniversalResult<T> realize_universal(const Spectrum<T>& s, std::optional<T> eps)
{
    return realize_universal(s, positive_diagonalizable_realization(s), eps);
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template struct JordanSpec<T>;                                                                            \
    template std::vector<JordanSpec<T>> enumerate_jordan_forms(const Spectrum<T>&);                           \
    template Diagonalization<T> eigen_basis(const Matrix<T>&, const Spectrum<T>&);                            \
    template MincResult<T> minc_realize(const Matrix<T>&, const Diagonalization<T>&, const JordanSpec<T>&,    \
                                        std::optional<T>);                                                    \
    template RankChain<T> jordan_structure(const Matrix<T>&, const Complex<T>&, std::size_t);                 \
    template PositiveRealization<T> positive_diagonalizable_realization(const Spectrum<T>&);                  \
    template UniversalResult<T> realize_universal(const Spectrum<T>&, PositiveRealization<T>, std::optional<T>); \
    template UniversalResult<T> realize_universal(const Spectrum<T>&, std::optional<T>);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

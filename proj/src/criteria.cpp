#include "niep/criteria.hpp"

#include "niep/diag3.hpp"
#include "niep/perturb.hpp"
#include "niep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace niep {

namespace {

constexpr double kCompareTol = 1e-12;

template <class T>
bool geq(const T& a, const T& b)
{
    if constexpr (is_exact_v<T>)
        return a >= b;
    else
        return a >= b - kCompareTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

template <class T>
T sum_of(const std::vector<T>& v)
{
    T s(0);
    for (const auto& x : v)
        s += x;
    return s;
}

template <class T>
std::vector<Complex<T>> as_complex(const std::vector<T>& v)
{
    return {v.begin(), v.end()};
}

/// Oracle gate for every constructor output.
template <class T>
void certify(const Matrix<T>& m, const std::vector<Complex<T>>& values, const char* who)
{
    StructuralFlags f;
    auto r = verify_spectrum(m, values);
    r.absorb(structural_checks(m, f));
    if (!r.passed())
        throw Error(Errc::InternalConstructionError, std::string(who) + " output failed the oracle:\n" + r.summary());
}

template <class T>
std::vector<T> real_list(const Spectrum<T>& s)
{
    if (!s.is_real())
        throw Error(Errc::CriterionNotSatisfied, "criterion applies to real lists only");
    return s.reals();
}

/// B in CS_0 with diagonal (0, l_2, ..., l_n) and first column
/// (0, -l_2, ..., -l_n).
template <class T>
Matrix<T> zero_row_sum_base(const std::vector<T>& list)
{
    const std::size_t n = list.size();
    Matrix<T> b(n, n);
    for (std::size_t i = 1; i < n; ++i) {
        b(i, 0) = -list[i];
        b(i, i) = list[i];
    }
    b.row_sum = T(0);
    return b;
}

} // namespace

// ---------------------------------------------------------------- Suleimanova

template <class T>
bool check_suleimanova(const Spectrum<T>& s)
{
    if (!s.is_real())
        return false;
    const auto l = s.reals();
    for (std::size_t k = 1; k < l.size(); ++k)
        if (!(l[k] < T(0)))
            return false;
    return geq(sum_of(l), T(0));
}

template <class T>
Matrix<T> suleimanova_matrix(const std::vector<T>& list, Trace<T>* trace)
{
    const std::size_t n = list.size();
    const Matrix<T> b = zero_row_sum_base(list);
    Vector<T> q(n);
    q[0] = sum_of(list);
    for (std::size_t i = 1; i < n; ++i)
        q[i] = -list[i];
    Matrix<T> a = brauer_update(b, ones<T>(n), q, T(0));
    a.row_sum = list[0];
    if (trace) {
        trace->step("initial matrix B in CS_0 with diagonal (0, lambda_2, ..., lambda_n)", {{"B", b}});
        trace->step("Brauer update A = B + e q^T with q = (sum, -lambda_2, ..., -lambda_n)", {{"A", a}});
    }
    return a;
}

template <class T>
Matrix<T> realize_suleimanova(const Spectrum<T>& s, Trace<T>* trace)
{
    if (!check_suleimanova(s))
        throw Error(Errc::CriterionNotSatisfied, "Suleimanova conditions fail");
    if (trace)
        trace->theorem = "Suleimanova";
    Matrix<T> a = suleimanova_matrix(s.reals(), trace);
    certify(a, s.values, "suleimanova");
    return a;
}

// ---------------------------------------------------------------- Salzmann

template <class T>
bool check_salzmann(const Spectrum<T>& s)
{
    if (!s.is_real())
        return false;
    const auto l = s.reals();
    const std::size_t n = l.size();
    const T total = sum_of(l);
    if (!geq(total, T(0)))
        return false;
    const T bound = T(2) * total / T(static_cast<long>(n));
    for (std::size_t k = 2; k <= (n + 1) / 2; ++k)
        if (!geq(bound, T(l[k - 1] + l[n - k])))
            return false;
    return true;
}

template <class T>
Matrix<T> realize_salzmann(const Spectrum<T>& s, Trace<T>* trace)
{
    if (!check_salzmann(s))
        throw Error(Errc::CriterionNotSatisfied, "Salzmann conditions fail");
    const auto l = s.reals();
    const std::size_t n = l.size();
    if (trace)
        trace->theorem = "Salzmann";
    if (n == 1) {
        Matrix<T> a{{l[0]}};
        a.row_sum = l[0];
        record(trace, "order one", {{"A", a}});
        return a;
    }
    const T shift = sum_of(l) / T(static_cast<long>(n));
    std::vector<T> z(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = l[i] - shift;
    // 1-based lambda_k of the trace-zero list.
    auto lam = [&](std::size_t k) -> const T& { return z[k - 1]; };

    Matrix<T> b(n, n);
    Vector<T> q(n, T(0));
    b(1, 0) = -lam(n);
    b(1, 1) = lam(n);
    q[1] = -lam(n);
    for (std::size_t k = 2; k <= n / 2; ++k) {
        const std::size_t r = 2 * k - 2;
        const T& a = lam(k);
        const T& c = lam(n - k + 1);
        b(r, r + 1) = a;
        b(r + 1, r) = -c;
        b(r + 1, r + 1) = a + c;
        b(r, 1) = -a;
        b(r + 1, 1) = -a;
        q[r + 1] = -(a + c);
    }
    if (n % 2 == 1) {
        const T& mid = lam((n + 1) / 2);
        b(n - 1, 0) = -mid;
        b(n - 1, n - 1) = mid;
        q[n - 1] = -mid;
    }
    b.row_sum = T(0);
    Matrix<T> a = brauer_update(b, ones<T>(n), q, T(0));
    Matrix<T> out = a + shift * Matrix<T>::identity(n);
    out.row_sum = l[0];
    if (trace) {
        trace->step("trace-zero list lambda_k - (sum lambda)/n", {});
        trace->step("block matrix B in CS_0 built from the pairs (lambda_k, lambda_{n-k+1})", {{"B", b}});
        trace->step("Brauer update B + e q^T", {{"A0", a}});
        trace->step("identity shift by (sum lambda)/n", {{"A", out}});
    }
    certify(out, s.values, "salzmann");
    return out;
}

// ---------------------------------------------------------------- Ciarlet

template <class T>
bool check_ciarlet(const Spectrum<T>& s)
{
    if (!s.is_real())
        return false;
    const auto l = s.reals();
    const T bound = l[0] / T(static_cast<long>(l.size()));
    for (std::size_t k = 1; k < l.size(); ++k)
        if (!geq(bound, absval(l[k])))
            return false;
    return true;
}

template <class T>
Matrix<T> realize_ciarlet(const Spectrum<T>& s, Trace<T>* trace)
{
    if (!check_ciarlet(s))
        throw Error(Errc::CriterionNotSatisfied, "Ciarlet conditions fail");
    const auto l = s.reals();
    const std::size_t n = l.size();
    const Matrix<T> b = zero_row_sum_base(l);
    const Vector<T> q(n, l[0] / T(static_cast<long>(n)));
    Matrix<T> a = brauer_update(b, ones<T>(n), q, T(0));
    if (trace) {
        trace->theorem = "Ciarlet";
        trace->step("initial matrix B in CS_0 with diagonal (0, lambda_2, ..., lambda_n)", {{"B", b}});
        trace->step("Brauer update with q = (lambda_1/n, ..., lambda_1/n)", {{"A", a}});
    }
    certify(a, s.values, "ciarlet");
    return a;
}

// ---------------------------------------------------------------- Kellogg

template <class T>
KelloggCheck<T> check_kellogg_list(const std::vector<T>& l)
{
    KelloggCheck<T> out;
    const std::size_t n = l.size();
    if (n == 0 || sign(l[0]) < 0) {
        out.violation = "lambda_1 must be nonnegative";
        return out;
    }
    KelloggData<T> d;
    d.p = static_cast<std::size_t>(std::count_if(l.begin(), l.end(), [](const T& x) { return sign(x) >= 0; }));
    auto lam = [&](std::size_t k) -> const T& { return l[k - 1]; };
    for (std::size_t i = 2; i <= (n + 1) / 2; ++i)
        if (sign(lam(i)) >= 0 && sign(T(lam(i) + lam(n - i + 2))) < 0)
            d.K.push_back(i);

    T running(0);
    for (std::size_t k : d.K) {
        const T need = -running - lam(n - k + 2);
        if (!geq(lam(1), need)) {
            out.violation = "(Kec1) at k=" + std::to_string(k) + " needs lambda_1 >= " + to_string(need);
            return out;
        }
        running += lam(k) + lam(n - k + 2);
    }
    if (n >= 2 * d.p) {
        T need = -running;
        for (std::size_t j = d.p + 1; j <= n - d.p + 1; ++j)
            need -= lam(j);
        if (!geq(lam(1), need)) {
            out.violation = "(Kec2) needs lambda_1 >= " + to_string(need);
            return out;
        }
    }
    d.mu = lam(1) + running;
    std::vector<bool> used(n + 1, false);
    used[1] = true;
    if (n >= 2 * d.p)
        for (std::size_t j = d.p + 1; j <= n - d.p + 1; ++j)
            used[j] = true;
    for (std::size_t k : d.K) {
        d.pair_lists.push_back({lam(k), lam(n - k + 2)});
        used[k] = used[n - k + 2] = true;
    }
    for (std::size_t j = 1; j <= n; ++j)
        if (!used[j])
            d.residual.push_back(lam(j));
    out.data = std::move(d);
    return out;
}

template <class T>
KelloggCheck<T> check_kellogg(const Spectrum<T>& s)
{
    if (!s.is_real()) {
        KelloggCheck<T> out;
        out.violation = "list is not real";
        return out;
    }
    return check_kellogg_list(s.reals());
}

template <class T>
Matrix<T> expand_list(const T& lambda_k, const std::vector<T>& mus)
{
    if (sign(lambda_k) < 0)
        throw Error(Errc::BadSigns, "lambda_k must be nonnegative");
    if (mus.empty())
        throw Error(Errc::BadSigns, "at least one negative value is required");
    std::vector<T> list{T(0)};
    for (const auto& m : mus) {
        if (!(m < T(0)))
            throw Error(Errc::BadSigns, "expanded values must be negative");
        list[0] -= m;
        list.push_back(m);
    }
    const Matrix<T> s = suleimanova_matrix(list);
    const std::size_t r = mus.size();
    Vector<T> q(r + 1, T(0));
    q[r] = lambda_k - list[0];
    Matrix<T> g = brauer_update(s, ones<T>(r + 1), q, list[0]);
    g.row_sum = lambda_k;
    return g;
}

namespace {

/// Kellogg construction on a descending list gamma whose negative entries
/// may stand for merged blocks; members[j] lists the original values that
/// gamma[j] stands for, and each block is expanded back to full order.
template <class T>
Matrix<T> kellogg_scaffold(const std::vector<T>& gamma, const std::vector<std::vector<T>>& members,
                           const KelloggData<T>& d, Trace<T>* trace)
{
    const std::size_t n = gamma.size();
    auto lam = [&](std::size_t k) -> const T& { return gamma[k - 1]; };
    auto mem = [&](std::size_t k) -> const std::vector<T>& { return members[k - 1]; };

    std::vector<T> first{d.mu};
    if (n >= 2 * d.p)
        for (std::size_t j = d.p + 1; j <= n - d.p + 1; ++j)
            first.insert(first.end(), mem(j).begin(), mem(j).end());
    const Matrix<T> g0 = suleimanova_matrix(first);

    const std::size_t t = d.K.size();
    std::vector<Matrix<T>> g(t);
    std::vector<T> sums(t);
    for (std::size_t i = 0; i < t; ++i) {
        const std::size_t k = d.K[i];
        g[i] = expand_list(lam(k), mem(n - k + 2));
        sums[i] = lam(k) + lam(n - k + 2);
    }

    std::size_t order = g0.rows();
    for (const auto& b : g)
        order += b.rows();
    Matrix<T> b(order, order);
    b.set_block(0, 0, g0);
    // Blocks for k_t, ..., k_1 in that order; offsets[i] for K[i].
    std::vector<std::size_t> offsets(t), last_col(t);
    std::size_t at = g0.rows();
    for (std::size_t step = 0; step < t; ++step) {
        const std::size_t i = t - 1 - step;
        offsets[i] = at;
        last_col[i] = at + g[i].rows() - 1;
        b.set_block(at, at, g[i]);
        at += g[i].rows();
    }
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t r = offsets[i]; r < offsets[i] + g[i].rows(); ++r) {
            if (i + 1 == t) {
                b(r, g0.rows() - 1) = d.mu - lam(d.K[i]);
                continue;
            }
            T lead = d.mu - lam(d.K[i]);
            for (std::size_t j = i + 1; j + 1 < t; ++j) {
                lead -= sums[j];
                b(r, last_col[j]) = sums[j];
            }
            b(r, last_col[t - 1]) = lead;
        }
    }
    b.row_sum = d.mu;
    Vector<T> q(order, T(0));
    for (std::size_t i = 0; i < t; ++i)
        q[last_col[i]] = -sums[i];
    Matrix<T> m = brauer_update(b, ones<T>(order), q, d.mu);

    std::vector<Matrix<T>> parts{m};
    for (std::size_t i = 2; i <= d.p; ++i) {
        if (std::find(d.K.begin(), d.K.end(), i) != d.K.end())
            continue;
        const std::size_t j = n - i + 2;
        if (j > d.p) {
            parts.push_back(expand_list(lam(i), mem(j)));
        } else if (i <= j) {
            parts.push_back(Matrix<T>{{lam(i)}});
            if (i < j)
                parts.push_back(Matrix<T>{{lam(j)}});
        }
    }
    Matrix<T> a = direct_sum<T>(std::span<const Matrix<T>>(parts));
    if (trace) {
        trace->step("B1' realizes {mu} with the middle negatives (Suleimanova)", {{"B1'", g0}});
        for (std::size_t i = 0; i < t; ++i)
            trace->step("pair block for k=" + std::to_string(d.K[i]), {{"B_k" + std::to_string(d.K[i]), g[i]}});
        trace->step("block lower-triangular B in CS_mu", {{"B", b}});
        trace->step("Brauer update M = B + e q^T", {{"M", m}});
        std::vector<NamedMatrix<T>> rest;
        for (std::size_t i = 1; i < parts.size(); ++i)
            rest.push_back({"A_R" + std::to_string(i), parts[i]});
        trace->step("residual blocks", rest);
        trace->step("direct sum A = M + A_R", {{"A", a}});
    }
    return a;
}

} // namespace

template <class T>
Matrix<T> realize_kellogg(const Spectrum<T>& s, const KelloggData<T>& d, Trace<T>* trace)
{
    const auto l = real_list(s);
    std::vector<std::vector<T>> members;
    for (const auto& x : l)
        members.push_back({x});
    if (trace)
        trace->theorem = "Kellogg";
    Matrix<T> a = kellogg_scaffold(l, members, d, trace);
    certify(a, s.values, "kellogg");
    return a;
}

// ---------------------------------------------------------------- Borobia

namespace {

template <class T>
struct PartitionSearch {
    const std::vector<T>& head;
    const std::vector<T>& tail;
    std::size_t blocks;
    std::vector<std::size_t> label;
    std::set<std::vector<T>> seen;
    std::optional<BorobiaPartition<T>> hit;

    bool run(std::size_t idx, std::size_t used)
    {
        const std::size_t left = tail.size() - idx;
        if (used + left < blocks)
            return false;
        if (idx == tail.size())
            return used == blocks && evaluate();
        const std::size_t top = std::min(used + 1, blocks);
        for (std::size_t b = 0; b < top; ++b) {
            label[idx] = b;
            if (run(idx + 1, std::max(used, b + 1)))
                return true;
        }
        return false;
    }

    bool evaluate()
    {
        std::vector<std::vector<T>> parts(blocks);
        for (std::size_t i = 0; i < tail.size(); ++i)
            parts[label[i]].push_back(tail[i]);
        std::vector<T> sums;
        for (const auto& p : parts)
            sums.push_back(sum_of(p));
        std::vector<std::size_t> order(blocks);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sums[a] > sums[b]; });
        std::vector<T> key;
        for (auto o : order)
            key.push_back(sums[o]);
        if (!seen.insert(key).second)
            return false;
        std::vector<T> merged = head;
        merged.insert(merged.end(), key.begin(), key.end());
        if (!check_kellogg_list(merged))
            return false;
        BorobiaPartition<T> out;
        for (auto o : order)
            out.blocks.push_back(parts[o]);
        out.merged = std::move(merged);
        hit = std::move(out);
        return true;
    }
};

} // namespace

template <class T>
BorobiaPartition<T> find_borobia_partition(const Spectrum<T>& s)
{
    if (!s.is_real())
        throw Error(Errc::NoPartitionFound, "list is not real");
    const auto l = s.reals();
    if (!geq(sum_of(l), T(0)))
        throw Error(Errc::NoPartitionFound, "negative trace defeats every partition");
    std::vector<T> head, tail;
    for (const auto& x : l)
        (sign(x) >= 0 ? head : tail).push_back(x);
    if (tail.size() > kBorobiaTailCap)
        throw Error(Errc::TailTooLarge, "negative tail has " + std::to_string(tail.size()) + " elements");
    if (tail.empty()) {
        if (check_kellogg_list(head))
            return {{}, head};
        throw Error(Errc::NoPartitionFound, "Kellogg rejects the list");
    }
    for (std::size_t blocks = tail.size(); blocks >= 1; --blocks) {
        PartitionSearch<T> search{head, tail, blocks, std::vector<std::size_t>(tail.size(), 0), {}, {}};
        if (search.run(0, 0))
            return *search.hit;
    }
    throw Error(Errc::NoPartitionFound, "no partition of the negative tail satisfies Kellogg");
}

template <class T>
Matrix<T> realize_borobia(const Spectrum<T>& s, const BorobiaPartition<T>& part, Trace<T>* trace)
{
    real_list(s);
    auto check = check_kellogg_list(part.merged);
    if (!check)
        throw Error(Errc::CriterionNotSatisfied, "merged list fails Kellogg: " + check.violation);
    std::vector<std::vector<T>> members;
    std::size_t block = 0;
    for (const auto& x : part.merged) {
        if (sign(x) >= 0)
            members.push_back({x});
        else
            members.push_back(part.blocks.at(block++));
    }
    if (trace) {
        trace->theorem = "Borobia";
        std::string desc = "partition of the negative tail into block sums:";
        for (const auto& x : part.merged)
            desc += " " + to_string(x);
        trace->step(desc);
    }
    Matrix<T> a = kellogg_scaffold(part.merged, members, *check.data, trace);
    certify(a, s.values, "borobia");
    return a;
}

// ---------------------------------------------------------------- complex region

template <class T>
bool in_region(const Spectrum<T>& s, RegionKind kind)
{
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (j == s.perron_index)
            continue;
        const auto& z = s.values[j];
        if (sign(z.re) > 0)
            return false;
        const T re2 = z.re * z.re;
        const T im2 = z.im * z.im;
        const T bound = kind == RegionKind::Sqrt3Wedge ? T(3 * re2) : re2;
        if (!geq(bound, im2))
            return false;
    }
    return true;
}

template <class T>
bool check_complex_region(const Spectrum<T>& s, RegionKind kind)
{
    return in_region(s, kind) && geq(s.trace(), T(0));
}

namespace {

template <class T>
Matrix<T> smigoc_recursion(const std::vector<Complex<T>>& list, Trace<T>* trace)
{
    const std::size_t n = list.size();
    const T& l1 = list[0].re;
    if (n == 1) {
        Matrix<T> a{{l1}};
        a.row_sum = l1;
        return a;
    }
    if (n == 2) {
        const T& l2 = list[1].re;
        const T half = T(1) / T(2);
        Matrix<T> a{{half * (l1 + l2), half * (l1 - l2)}, {half * (l1 - l2), half * (l1 + l2)}};
        a.row_sum = l1;
        record(trace, "order 2 base case", {{"A", a}});
        return a;
    }
    if (n == 3) {
        DiagonalSpec<T> spec{{T(l1 + list[1].re + list[2].re), T(0), T(0)}, l1, list[1], list[2]};
        Matrix<T> a = construct_3x3(spec);
        record(trace, "order 3 base case from the prescribed diagonal (sum, 0, 0)", {{"A", a}});
        return a;
    }
    // Peel a conjugate pair if there is one, otherwise the first two reals.
    std::size_t i = 1, j = 2;
    for (std::size_t k = 1; k + 1 < n; ++k)
        if (sign(list[k].im) != 0) {
            i = k;
            j = k + 1;
            break;
        }
    const T omega1 = l1 + list[i].re + list[j].re;
    std::vector<Complex<T>> gamma{Complex<T>(omega1)};
    for (std::size_t k = 1; k < n; ++k)
        if (k != i && k != j)
            gamma.push_back(list[k]);
    const Matrix<T> a2 = smigoc_recursion(gamma, trace);
    const std::size_t m = n;
    DiagonalSpec<T> spec{{omega1, T(0), T(0)}, l1, list[i], list[j]};
    const Matrix<T> b = construct_3x3(spec);

    Matrix<T> a(m, m);
    a.set_block(0, 0, a2);
    RadoUpdate<T> u{Matrix<T>(m, 3), Matrix<T>(3, m), {omega1, T(0), T(0)}};
    for (std::size_t r = 0; r + 2 < m; ++r)
        u.X(r, 0) = T(1);
    u.X(m - 2, 1) = T(1);
    u.X(m - 1, 2) = T(1);
    u.C(0, m - 2) = b(0, 1);
    u.C(0, m - 1) = b(0, 2);
    u.C(1, 0) = b(1, 0);
    u.C(1, m - 1) = b(1, 2);
    u.C(2, 0) = b(2, 0);
    u.C(2, m - 2) = b(2, 1);
    Matrix<T> out = rado_update(a, u);
    out.row_sum = l1;
    if (trace)
        trace->step("Rado merge of A_2 + 0 + 0 with the 3x3 B of diagonal (" + to_string(omega1) + ", 0, 0)",
                    {{"A2", a2}, {"B", b}, {"X", u.X}, {"C", u.C}, {"M", out}});
    return out;
}

} // namespace

template <class T>
Matrix<T> realize_complex_smigoc(const Spectrum<T>& s, Trace<T>* trace)
{
    if (!in_region(s, RegionKind::Sqrt3Wedge))
        throw Error(Errc::RegionViolated, "tail leaves the sqrt(3) wedge");
    if (!geq(s.trace(), T(0)))
        throw Error(Errc::CriterionNotSatisfied, "trace is negative");
    if (trace)
        trace->theorem = "complex Smigoc region (recursive Rado)";
    Matrix<T> a = smigoc_recursion(s.values, trace);
    certify(a, s.values, "complex-region");
    return a;
}

// ---------------------------------------------------------------- Guo bound

template <class T>
bool check_guo_bound(const Spectrum<T>& s)
{
    const T l1 = s.perron();
    if (sign(l1) < 0)
        return false;
    const T n1 = T(static_cast<long>(s.size() - 1));
    return geq(T(l1 * l1), T(n1 * n1 * s.tail_max_squared()));
}

template <class T>
GuoBound<T> guo_bound_realize(const std::vector<Complex<T>>& raw_tail, Trace<T>* trace)
{
    auto closed = conjugate_close(raw_tail);
    std::vector<Complex<T>> reals, upper;
    for (const auto& z : closed) {
        if (sign(z.im) == 0)
            reals.push_back(z);
        else if (sign(z.im) > 0)
            upper.push_back(z);
    }
    std::stable_sort(reals.begin(), reals.end(), [](const auto& a, const auto& b) { return a.re > b.re; });
    std::stable_sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
        return a.re != b.re ? a.re > b.re : a.im > b.im;
    });
    std::vector<Complex<T>> tail = reals;
    for (const auto& z : upper) {
        tail.push_back(z);
        tail.push_back(z.conj());
    }
    const std::size_t n = tail.size() + 1;

    T m2(0);
    for (const auto& z : tail)
        if (z.norm2() > m2)
            m2 = z.norm2();
    if (sign(m2) == 0) {
        Matrix<T> zero(n, n);
        zero.row_sum = T(0);
        record(trace, "zero tail: zero matrix", {{"A", zero}});
        return {T(0), zero};
    }
    if (reals.empty())
        throw Error(Errc::NoRealTailElement, "the tail needs at least one real element");
    T m;
    if constexpr (is_exact_v<T>) {
        auto root = exact_sqrt(m2);
        if (!root)
            throw Error(Errc::InexactInRationalMode, "largest tail modulus is irrational");
        m = *root;
    } else {
        m = std::sqrt(m2);
    }
    const T w = m * T(static_cast<long>(n - 1));
    std::vector<Complex<T>> mu;
    for (const auto& z : tail)
        mu.push_back({z.re / w, z.im / w});

    // Case selection on the real parts of the scaled tail (row r = j + 1).
    std::optional<std::size_t> positive_col;
    for (std::size_t j = 1; j < mu.size(); ++j)
        if (sign(mu[j].re) > 0) {
            positive_col = j + 1;
            break;
        }
    const bool all_nonpositive = std::all_of(mu.begin(), mu.end(), [](const auto& z) { return sign(z.re) <= 0; });
    const bool third_case = !all_nonpositive && !positive_col;

    Matrix<T> b(n, n);
    for (std::size_t j = 0; j < mu.size();) {
        const std::size_t r = j + 1;
        if (sign(mu[j].im) == 0) {
            const std::size_t col = third_case && r >= 2 ? 1 : 0;
            b(r, col) = -mu[j].re;
            b(r, r) = mu[j].re;
            ++j;
            continue;
        }
        const T& x = mu[j].re;
        const T& y = mu[j].im;
        b(r, r) = x;
        b(r, r + 1) = -y;
        b(r + 1, r) = y;
        b(r + 1, r + 1) = x;
        if (third_case) {
            b(r, 0) = y;
            b(r, 1) = -x;
            b(r + 1, 0) = -y;
            b(r + 1, 1) = -x;
        } else {
            b(r, 0) = -x;
            b(r, 1) = y;
            b(r + 1, 0) = -x;
            b(r + 1, 1) = -y;
        }
        j += 2;
    }
    b.row_sum = T(0);
    const T share = T(1) / T(static_cast<long>(n - 1));
    Vector<T> q(n, share);
    std::string which;
    if (all_nonpositive) {
        q[0] = T(0);
        which = "all real parts nonpositive: q = (0, 1/(n-1), ...)";
    } else if (positive_col) {
        q[*positive_col] = T(0);
        which = "positive real part at column " + std::to_string(*positive_col + 1) + ": zero q entry there";
    } else {
        q[1] = T(0);
        which = "only mu_2 positive: second-column layout, q_2 = 0";
    }
    const Matrix<T> a1 = brauer_update(b, ones<T>(n), q, T(0));
    Matrix<T> a = w * a1;
    a.row_sum = w;
    if (trace) {
        trace->theorem = "Guo bound (n-1) m";
        trace->step("tail scaled by 1/(m(n-1)); initial matrix B in CS_0", {{"B", b}});
        trace->step(which, {{"A'", a1}});
        trace->step("A = m(n-1) A'", {{"A", a}});
    }
    std::vector<Complex<T>> full{Complex<T>(w)};
    full.insert(full.end(), tail.begin(), tail.end());
    certify(a, full, "guo-bound");
    return {w, a};
}

// ---------------------------------------------------------------- Rado partition

namespace {

template <class T>
bool head_feasible(const std::vector<T>& head, const std::vector<T>& omega)
{
    if (head.size() == 3) {
        DiagonalSpec<T> d{{omega[0], omega[1], omega[2]}, head[0], Complex<T>(head[1]), Complex<T>(head[2])};
        return check_perfect_conditions(d);
    }
    for (const auto& w : omega)
        if (sign(w) < 0 || !geq(head[0], w))
            return false;
    return true;
}

template <class T>
Matrix<T> head_matrix(const std::vector<T>& head, const std::vector<T>& omega)
{
    if (head.size() == 3) {
        DiagonalSpec<T> d{{omega[0], omega[1], omega[2]}, head[0], Complex<T>(head[1]), Complex<T>(head[2])};
        return construct_3x3(d);
    }
    Matrix<T> b{{omega[0], T(head[0] - omega[0])}, {T(head[0] - omega[1]), omega[1]}};
    b.row_sum = head[0];
    return b;
}

} // namespace

template <class T>
std::optional<RadoPartition<T>> find_rado_partition(const Spectrum<T>& s)
{
    if (!s.is_real() || s.size() < 2)
        return std::nullopt;
    const auto l = s.reals();
    const std::size_t n = l.size();
    const std::size_t p = *s.p_index;
    for (std::size_t h : {std::size_t(3), std::size_t(2)}) {
        if (n < h || p > h)
            continue;
        const std::size_t extra = h - p;
        std::vector<std::size_t> negs;
        for (std::size_t i = p; i < n; ++i)
            negs.push_back(i);
        // Choose `extra` negatives for the head, distinct by value.
        std::set<std::vector<T>> tried;
        std::vector<std::size_t> pick(extra);
        std::vector<std::vector<std::size_t>> choices;
        if (extra == 0) {
            choices.push_back({});
        } else if (extra == 1) {
            for (auto i : negs)
                choices.push_back({i});
        } else {
            for (std::size_t a = 0; a < negs.size(); ++a)
                for (std::size_t b = a + 1; b < negs.size(); ++b)
                    choices.push_back({negs[a], negs[b]});
        }
        for (const auto& choice : choices) {
            std::vector<T> head;
            std::vector<bool> in_head(n, false);
            for (std::size_t i = 0; i < p; ++i) {
                head.push_back(l[i]);
                in_head[i] = true;
            }
            for (auto i : choice) {
                head.push_back(l[i]);
                in_head[i] = true;
            }
            if (!tried.insert(head).second)
                continue;
            std::vector<T> rest;
            for (std::size_t i = 0; i < n; ++i)
                if (!in_head[i])
                    rest.push_back(l[i]);
            if (rest.size() > kRadoTailCap)
                continue;
            const T head_sum = sum_of(head);
            std::vector<std::size_t> assign(rest.size(), 0);
            while (true) {
                std::vector<T> omega(h, T(0));
                for (std::size_t i = 0; i < rest.size(); ++i)
                    omega[assign[i]] -= rest[i];
                const T slack = head_sum - sum_of(omega);
                if (sign(slack) >= 0) {
                    for (std::size_t k = 0; k < h; ++k) {
                        auto w = omega;
                        w[k] += slack;
                        if (head_feasible(head, w)) {
                            RadoPartition<T> out;
                            out.head = head;
                            out.groups.resize(h);
                            for (std::size_t i = 0; i < rest.size(); ++i)
                                out.groups[assign[i]].push_back(rest[i]);
                            out.omega = w;
                            return out;
                        }
                    }
                }
                std::size_t pos = rest.size();
                while (pos > 0 && ++assign[pos - 1] == h)
                    assign[--pos] = 0;
                if (pos == 0)
                    break;
            }
        }
    }
    return std::nullopt;
}

template <class T>
Matrix<T> realize_rado(const Spectrum<T>& s, const RadoPartition<T>& part, Trace<T>* trace)
{
    real_list(s);
    const std::size_t h = part.head.size();
    if (!head_feasible(part.head, part.omega))
        throw Error(Errc::CriterionNotSatisfied, "head list and diagonal are incompatible");
    std::vector<Matrix<T>> blocks;
    for (std::size_t k = 0; k < h; ++k) {
        if (part.groups[k].empty()) {
            Matrix<T> one{{part.omega[k]}};
            one.row_sum = part.omega[k];
            blocks.push_back(one);
            continue;
        }
        std::vector<T> list{part.omega[k]};
        list.insert(list.end(), part.groups[k].begin(), part.groups[k].end());
        if (!geq(sum_of(list), T(0)))
            throw Error(Errc::CriterionNotSatisfied, "group sum exceeds its diagonal entry");
        blocks.push_back(suleimanova_matrix(list));
    }
    const Matrix<T> a = direct_sum<T>(std::span<const Matrix<T>>(blocks));
    const Matrix<T> b = head_matrix(part.head, part.omega);
    const std::size_t n = a.rows();
    RadoUpdate<T> u{Matrix<T>(n, h), Matrix<T>(h, n), part.omega};
    std::vector<std::size_t> first(h);
    std::size_t at = 0;
    for (std::size_t k = 0; k < h; ++k) {
        first[k] = at;
        for (std::size_t r = 0; r < blocks[k].rows(); ++r)
            u.X(at + r, k) = T(1);
        at += blocks[k].rows();
    }
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
            if (i != j)
                u.C(i, first[j]) = b(i, j);
    Matrix<T> m = rado_update(a, u);
    if (trace) {
        trace->theorem = "Rado (Perfect partition)";
        std::vector<NamedMatrix<T>> parts;
        for (std::size_t k = 0; k < h; ++k)
            parts.push_back({"A" + std::to_string(k + 1), blocks[k]});
        trace->step("realize each Gamma_k = {omega_k} + Lambda_k (Suleimanova)", parts);
        trace->step("direct sum A", {{"A", a}});
        trace->step("B with diagonal omega and spectrum Lambda_0", {{"B", b}});
        trace->step("Rado update M = A + X C", {{"X", u.X}, {"C", u.C}, {"M", m}});
    }
    certify(m, s.values, "rado");
    return m;
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template bool check_suleimanova(const Spectrum<T>&);                                                      \
    template Matrix<T> suleimanova_matrix(const std::vector<T>&, Trace<T>*);                                  \
    template Matrix<T> realize_suleimanova(const Spectrum<T>&, Trace<T>*);                                    \
    template bool check_salzmann(const Spectrum<T>&);                                                         \
    template Matrix<T> realize_salzmann(const Spectrum<T>&, Trace<T>*);                                       \
    template bool check_ciarlet(const Spectrum<T>&);                                                          \
    template Matrix<T> realize_ciarlet(const Spectrum<T>&, Trace<T>*);                                        \
    template KelloggCheck<T> check_kellogg(const Spectrum<T>&);                                               \
    template KelloggCheck<T> check_kellogg_list(const std::vector<T>&);                                       \
    template Matrix<T> realize_kellogg(const Spectrum<T>&, const KelloggData<T>&, Trace<T>*);                 \
    template BorobiaPartition<T> find_borobia_partition(const Spectrum<T>&);                                  \
    template Matrix<T> realize_borobia(const Spectrum<T>&, const BorobiaPartition<T>&, Trace<T>*);            \
    template Matrix<T> expand_list(const T&, const std::vector<T>&);                                          \
    template bool in_region(const Spectrum<T>&, RegionKind);                                                  \
    template bool check_complex_region(const Spectrum<T>&, RegionKind);                                       \
    template Matrix<T> realize_complex_smigoc(const Spectrum<T>&, Trace<T>*);                                 \
    template bool check_guo_bound(const Spectrum<T>&);                                                        \
    template GuoBound<T> guo_bound_realize(const std::vector<Complex<T>>&, Trace<T>*);                        \
    template std::optional<RadoPartition<T>> find_rado_partition(const Spectrum<T>&);                         \
    template Matrix<T> realize_rado(const Spectrum<T>&, const RadoPartition<T>&, Trace<T>*);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

#include "niep/realize.hpp"

#include "niep/criteria.hpp"
#include "niep/perturb.hpp"

#include <algorithm>
#include <cmath>

namespace niep {

namespace {

struct CriterionName {
    Criterion criterion;
    std::string_view name;
};

constexpr CriterionName kNames[] = {
    {Criterion::Suleimanova, "suleimanova"},   {Criterion::Ciarlet, "ciarlet"},
    {Criterion::Salzmann, "salzmann"},         {Criterion::Kellogg, "kellogg"},
    {Criterion::Borobia, "borobia"},           {Criterion::Rado, "rado"},
    {Criterion::ComplexRegion, "complex"},     {Criterion::GuoBound, "guo"},
    {Criterion::Rado, "rado-example"},         {Criterion::ComplexRegion, "complex-region"},
    {Criterion::ComplexRegion, "smigoc"},      {Criterion::GuoBound, "guo-bound"},
};

template <class T>
std::vector<Complex<T>> tail_of(const Spectrum<T>& s)
{
    std::vector<Complex<T>> tail;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != s.perron_index)
            tail.push_back(s.values[j]);
    return tail;
}

template <class T>
Realization<T> guo_realization(const Spectrum<T>& s, bool allow_shift)
{
    Realization<T> r{Criterion::GuoBound, {}, {}, s, false, {}};
    auto g = guo_bound_realize(tail_of(s), &r.certificate);
    T delta = s.perron() - g.lambda1;
    if (sign(delta) < 0) {
        if constexpr (!is_exact_v<T>) {
            if (std::fabs(delta) <= 1e-12 * std::max(1.0, std::fabs(g.lambda1)))
                delta = T(0);
        }
    }
    if (sign(delta) >= 0) {
        r.matrix = sign(delta) > 0 ? shift_perron(g.matrix, delta) : g.matrix;
        if (sign(delta) > 0)
            r.certificate.step("Perron shift by lambda_1 - (n-1) m = " + to_string(delta), {{"M", r.matrix}});
        return r;
    }
    if (!allow_shift)
        throw Error(Errc::CriterionNotSatisfied, "lambda_1 < (n-1) m");
    r.matrix = std::move(g.matrix);
    r.realized = shift_perron_value(s, T(-delta));
    r.perron_shifted = true;
    r.certificate.step("realizes a Perron-shifted list: lambda_1 raised to (n-1) m = " + to_string(g.lambda1));
    return r;
}

template <class T>
Realization<T> build(const Spectrum<T>& s, Criterion c, bool allow_shift)
{
    if (c == Criterion::GuoBound)
        return guo_realization(s, allow_shift);
    const Verdict v = check_criterion(s, c);
    if (!v.pass)
        throw Error(Errc::CriterionNotSatisfied, std::string(criterion_name(c)) + ": " + v.detail);
    Realization<T> r{c, {}, {}, s, false, {}};
    Trace<T>* tr = &r.certificate;
    switch (c) {
    case Criterion::Suleimanova: r.matrix = realize_suleimanova(s, tr); break;
    case Criterion::Ciarlet: r.matrix = realize_ciarlet(s, tr); break;
    case Criterion::Salzmann: r.matrix = realize_salzmann(s, tr); break;
    case Criterion::Kellogg: r.matrix = realize_kellogg(s, *check_kellogg(s).data, tr); break;
    case Criterion::Borobia: r.matrix = realize_borobia(s, find_borobia_partition(s), tr); break;
    case Criterion::Rado: r.matrix = realize_rado(s, *find_rado_partition(s), tr); break;
    case Criterion::ComplexRegion: r.matrix = realize_complex_smigoc(s, tr); break;
    case Criterion::GuoBound: break;
    }
    return r;
}

template <class T>
Realization<T> finish(Realization<T> r)
{
    StructuralFlags f;
    f.row_sums = r.matrix.row_sum.has_value();
    r.report = full_check(r.matrix, r.realized, f);
    if (!r.report.passed())
        throw Error(Errc::InternalConstructionError,
                    std::string(criterion_name(r.criterion)) + " output failed the oracle:\n" + r.report.summary());
    return r;
}

} // namespace

std::string_view criterion_name(Criterion c)
{
    for (const auto& n : kNames)
        if (n.criterion == c)
            return n.name;
    return "unknown";
}

std::optional<Criterion> parse_criterion(std::string_view name)
{
    for (const auto& n : kNames)
        if (n.name == name)
            return n.criterion;
    return std::nullopt;
}

const std::vector<Criterion>& auto_order()
{
    static const std::vector<Criterion> order{Criterion::Suleimanova, Criterion::Ciarlet, Criterion::Salzmann,
                                              Criterion::Kellogg,     Criterion::Borobia, Criterion::Rado,
                                              Criterion::ComplexRegion, Criterion::GuoBound};
    return order;
}

template <class T>
Verdict check_criterion(const Spectrum<T>& s, Criterion c)
{
    Verdict v{c, false, {}};
    const bool real = s.is_real();
    switch (c) {
    case Criterion::Suleimanova:
        v.pass = check_suleimanova(s);
        v.detail = v.pass ? "negative tail with nonnegative trace" : "needs lambda_k < 0 for k >= 2 and trace >= 0";
        break;
    case Criterion::Ciarlet:
        v.pass = check_ciarlet(s);
        v.detail = v.pass ? "|lambda_k| <= lambda_1 / n" : "some |lambda_k| > lambda_1 / n";
        break;
    case Criterion::Salzmann:
        v.pass = check_salzmann(s);
        v.detail = v.pass ? "pair sums within the trace bound" : "pair sum condition fails";
        break;
    case Criterion::Kellogg: {
        if (!real) {
            v.detail = "real lists only";
            break;
        }
        auto k = check_kellogg(s);
        v.pass = k.data.has_value();
        v.detail = v.pass ? "Kellogg inequalities hold" : k.violation;
        break;
    }
    case Criterion::Borobia:
        if (!real) {
            v.detail = "real lists only";
            break;
        }
        try {
            auto part = find_borobia_partition(s);
            v.pass = true;
            v.detail = "partition into " + std::to_string(part.blocks.size()) + " blocks";
        } catch (const Error& e) {
            v.detail = e.what();
        }
        break;
    case Criterion::Rado:
        if (!real) {
            v.detail = "real lists only";
            break;
        }
        if (auto part = find_rado_partition(s)) {
            v.pass = true;
            v.detail = "head of size " + std::to_string(part->head.size());
        } else {
            v.detail = "no head/group partition with a feasible 3x3 diagonal";
        }
        break;
    case Criterion::ComplexRegion:
        v.pass = check_complex_region(s, RegionKind::Sqrt3Wedge);
        v.detail = v.pass ? "tail inside the sqrt(3) wedge, trace >= 0" : "tail outside the wedge or negative trace";
        break;
    case Criterion::GuoBound:
        v.pass = check_guo_bound(s);
        v.detail = v.pass ? "lambda_1 >= (n-1) m" : "lambda_1 < (n-1) m";
        break;
    }
    return v;
}

template <class T>
std::vector<Verdict> check_all(const Spectrum<T>& s)
{
    std::vector<Verdict> out;
    for (auto c : auto_order())
        out.push_back(check_criterion(s, c));
    return out;
}

template <class T>
Realization<T> realize_with(const Spectrum<T>& s, Criterion c)
{
    return finish(build(s, c, false));
}

template <class T>
Realization<T> realize_auto(const Spectrum<T>& s, bool allow_shift)
{
    std::string why;
    for (auto c : auto_order()) {
        try {
            return finish(build(s, c, allow_shift && c == Criterion::GuoBound));
        } catch (const Error& e) {
            if (e.code() == Errc::InternalConstructionError)
                throw;
            why += "\n  " + std::string(criterion_name(c)) + ": " + e.what();
        }
    }
    throw Error(Errc::CriterionNotSatisfied, "no implemented criterion applies" + why);
}

template <class T>
std::vector<Realization<T>> realize_every(const Spectrum<T>& s)
{
    std::vector<Realization<T>> out;
    for (auto c : auto_order()) {
        try {
            out.push_back(realize_with(s, c));
        } catch (const Error& e) {
            if (e.code() == Errc::InternalConstructionError)
                throw;
        }
    }
    return out;
}

template <class T>
Negativity<T> negativity_upper_bound(const Spectrum<T>& s, std::optional<T> step)
{
    const T h = step ? *step : T(std::max(T(1), absval(s.perron())) / T(1024));
    if (sign(h) <= 0)
        throw Error(Errc::InvalidInput, "grid step must be positive");
    auto certified = [&](long k) -> std::optional<std::string> {
        const auto shifted = k == 0 ? s : shift_perron_value(s, T(h * T(k)));
        for (auto c : auto_order())
            if (check_criterion(shifted, c).pass)
                return std::string(criterion_name(c));
        return std::nullopt;
    };
    if (auto w = certified(0))
        return {T(0), *w};

    const double limit = static_cast<double>(s.size() - 1) * s.tail_max();
    long lo = 0, hi = 1;
    std::optional<std::string> witness;
    while (!(witness = certified(hi))) {
        lo = hi;
        hi *= 2;
        if (to_double(h) * static_cast<double>(lo) > limit + to_double(h))
            throw Error(Errc::BoundNotFound, "no criterion certifies the list below (n-1) m");
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (auto w = certified(mid)) {
            hi = mid;
            witness = w;
        } else {
            lo = mid;
        }
    }
    return {T(h * T(hi)), *witness};
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template Verdict check_criterion(const Spectrum<T>&, Criterion);                                          \
    template std::vector<Verdict> check_all(const Spectrum<T>&);                                              \
    template Realization<T> realize_with(const Spectrum<T>&, Criterion);                                      \
    template Realization<T> realize_auto(const Spectrum<T>&, bool);                                           \
    template std::vector<Realization<T>> realize_every(const Spectrum<T>&);                                   \
    template Negativity<T> negativity_upper_bound(const Spectrum<T>&, std::optional<T>);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

#include "niep/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace niep {

template <class T>
bool Spectrum<T>::is_real() const
{
    return std::all_of(values.begin(), values.end(), [](const Complex<T>& z) { return sign(z.im) == 0; });
}

template <class T>
std::vector<T> Spectrum<T>::reals() const
{
    if (!is_real())
        throw Error(Errc::InvalidInput, "spectrum is not real");
    std::vector<T> r;
    r.reserve(values.size());
    for (const auto& z : values)
        r.push_back(z.re);
    return r;
}

template <class T>
T Spectrum<T>::tail_max_squared() const
{
    T best(0);
    for (std::size_t j = 0; j < values.size(); ++j)
        if (j != perron_index && values[j].norm2() > best)
            best = values[j].norm2();
    return best;
}

template <class T>
double Spectrum<T>::tail_max() const
{
    double best = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j)
        if (j != perron_index)
            best = std::max(best, modulus(values[j]));
    return best;
}

template <class T>
T Spectrum<T>::trace() const
{
    T s(0);
    for (const auto& z : values)
        s += z.re;
    return s;
}

template <class T>
std::vector<Complex<T>> conjugate_close(const std::vector<Complex<T>>& raw, double tol)
{
    std::vector<Complex<T>> out = raw;
    std::vector<bool> matched(out.size(), false);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (matched[i])
            continue;
        if (out[i].is_real(tol)) {
            out[i].im = T(0);
            matched[i] = true;
            continue;
        }
        std::size_t partner = out.size();
        double best = 0.0;
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (matched[j] || out[j].is_real(tol))
                continue;
            const Complex<T> diff = out[j] - out[i].conj();
            if constexpr (is_exact_v<T>) {
                if (diff == Complex<T>()) {
                    partner = j;
                    break;
                }
            } else {
                const double d = modulus(diff);
                if (d <= tol && (partner == out.size() || d < best)) {
                    partner = j;
                    best = d;
                }
            }
        }
        if (partner == out.size())
            throw Error(Errc::NotConjugateClosed, "no conjugate partner for " + to_string(out[i]));
        if constexpr (!is_exact_v<T>) {
            const T re = (out[i].re + out[partner].re) / 2;
            const T im = (out[i].im - out[partner].im) / 2;
            out[i] = {re, im};
            out[partner] = {re, -im};
        }
        matched[i] = matched[partner] = true;
    }
    return out;
}

template <class T>
Spectrum<T> normalize(const std::vector<Complex<T>>& raw, double tol)
{
    if (raw.empty())
        throw Error(Errc::InvalidInput, "empty list");
    auto closed = conjugate_close(raw, tol);

    std::size_t perron = closed.size();
    for (std::size_t i = 0; i < closed.size(); ++i)
        if (sign(closed[i].im) == 0 && (perron == closed.size() || closed[i].re > closed[perron].re))
            perron = i;
    if (perron == closed.size())
        throw Error(Errc::NoPerronCandidate, "no real element");
    const T& l1 = closed[perron].re;
    for (const auto& z : closed) {
        bool dominated;
        if constexpr (is_exact_v<T>)
            dominated = sgn(l1) >= 0 && l1 * l1 >= z.norm2();
        else
            dominated = l1 >= modulus(z) - tol * std::max(1.0, std::fabs(l1));
        if (!dominated)
            throw Error(Errc::NoPerronCandidate, "no real element dominates " + to_string(z));
    }

    std::vector<Complex<T>> reals;
    std::vector<Complex<T>> upper;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        if (i == perron)
            continue;
        if (sign(closed[i].im) == 0)
            reals.push_back(closed[i]);
        else if (sign(closed[i].im) > 0)
            upper.push_back(closed[i]);
    }
    std::stable_sort(reals.begin(), reals.end(), [](const auto& a, const auto& b) { return a.re > b.re; });
    std::stable_sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
        if (a.re != b.re)
            return a.re > b.re;
        return a.im > b.im;
    });

    Spectrum<T> s;
    s.values.push_back(closed[perron]);
    s.values.insert(s.values.end(), reals.begin(), reals.end());
    for (const auto& z : upper) {
        s.values.push_back(z);
        s.values.push_back(z.conj());
    }
    s.perron_index = 0;
    if (upper.empty())
        s.p_index = static_cast<std::size_t>(std::count_if(
            s.values.begin(), s.values.end(), [](const auto& z) { return sign(z.re) >= 0; }));
    return s;
}

template <class T>
Spectrum<T> normalize_real(const std::vector<T>& raw)
{
    std::vector<Complex<T>> z(raw.begin(), raw.end());
    return normalize(z);
}

template <class T>
SymmetricFunctions<T> elementary_symmetric(const std::vector<Complex<T>>& values)
{
    std::vector<Complex<T>> e(values.size() + 1, Complex<T>(T(0)));
    e[0] = Complex<T>(T(1));
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k)
            e[k] += values[i] * e[k - 1];
    SymmetricFunctions<T> out;
    out.e.reserve(e.size());
    for (auto& c : e)
        out.e.push_back(c.re);
    return out;
}

template <class T>
std::vector<T> monic_from_roots(const std::vector<Complex<T>>& values)
{
    auto e = elementary_symmetric(values).e;
    for (std::size_t k = 1; k < e.size(); k += 2)
        e[k] = -e[k];
    return e;
}

template <class T>
Spectrum<T> shift_perron_value(const Spectrum<T>& s, const T& delta)
{
    auto values = s.values;
    values[s.perron_index].re += delta;
    return normalize(values);
}

template <class T>
std::string to_string(const Complex<T>& z)
{
    if (sign(z.im) == 0)
        return to_string(z.re);
    const bool neg = sign(z.im) < 0;
    const T mag = neg ? T(-z.im) : z.im;
    std::string out = sign(z.re) == 0 ? std::string() : to_string(z.re);
    if (!out.empty() || neg)
        out += neg ? "-" : "+";
    if (mag != T(1))
        out += to_string(mag);
    return out + "i";
}

template <class T>
std::string to_string(const Spectrum<T>& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(s.values[i]);
    }
    return out + "}";
}

#define NIEP_INSTANTIATE(T)                                                                                   \
    template struct Spectrum<T>;                                                                              \
    template std::vector<Complex<T>> conjugate_close(const std::vector<Complex<T>>&, double);                 \
    template Spectrum<T> normalize(const std::vector<Complex<T>>&, double);                                   \
    template Spectrum<T> normalize_real(const std::vector<T>&);                                               \
    template SymmetricFunctions<T> elementary_symmetric(const std::vector<Complex<T>>&);                      \
    template std::vector<T> monic_from_roots(const std::vector<Complex<T>>&);                                 \
    template Spectrum<T> shift_perron_value(const Spectrum<T>&, const T&);                                    \
    template std::string to_string(const Complex<T>&);                                                        \
    template std::string to_string(const Spectrum<T>&);

NIEP_INSTANTIATE(double)
NIEP_INSTANTIATE(Rational)

} // namespace niep

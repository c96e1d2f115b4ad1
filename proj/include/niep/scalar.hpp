#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace niep {

/// Exact backend. Every algorithm in the library is generic over
/// `double` and `Rational`.
using Rational = mpq_class;

template <class T>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

template <class T>
constexpr std::string_view backend_name()
{
    return is_exact_v<T> ? "rational" : "float";
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

inline double absval(double x) { return std::fabs(x); }
inline Rational absval(const Rational& x) { return Rational(abs(x)); }

template <class T>
T from_int(long v)
{
    return T(v);
}

template <class T>
T from_ratio(long num, long den)
{
    if constexpr (is_exact_v<T>) {
        Rational r(num, den);
        r.canonicalize();
        return r;
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

/// Zero test: exact for rationals, |x| <= tol for doubles.
inline bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
inline bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }

inline int sign(double x, double tol = 0.0) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
inline int sign(const Rational& x, double /*tol*/ = 0.0) { return sgn(x); }

/// Square root when it stays inside the backend. For rationals this is the
/// perfect-square case only; everything else returns nullopt.
std::optional<double> exact_sqrt(double x);
std::optional<Rational> exact_sqrt(const Rational& x);

/// "p/q" (or "p") for rationals, shortest round-trip decimal for doubles.
std::string to_string(double x);
std::string to_string(const Rational& x);

/// Accepts integers, "p/q", and decimal/scientific literals. A decimal
/// parsed into a Rational is converted exactly (0.1 -> 1/10).
template <class T>
T parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);

/// Convert between backends. double -> Rational is exact in binary.
template <class To>
To convert(double x);
template <class To>
To convert(const Rational& x);

template <>
inline double convert<double>(double x) { return x; }
template <>
inline double convert<double>(const Rational& x) { return x.get_d(); }
template <>
inline Rational convert<Rational>(double x) { return Rational(x); }
template <>
inline Rational convert<Rational>(const Rational& x) { return x; }

} // namespace niep

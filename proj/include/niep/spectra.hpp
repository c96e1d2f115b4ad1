#pragma once

#include "niep/complex.hpp"
#include "niep/error.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace niep {

/// Default closure tolerance for the float backend.
inline constexpr double kClosureTol = 1e-9;

/// A conjugate-closed list in canonical order: the Perron element first,
/// then the remaining reals in descending order, then conjugate pairs with
/// the positive imaginary part first. Real lists are therefore sorted
/// descending.
template <class T>
struct Spectrum {
    std::vector<Complex<T>> values;
    std::size_t perron_index = 0;
    /// Kellogg's p: number of nonnegative entries of a real list.
    std::optional<std::size_t> p_index;

    std::size_t size() const { return values.size(); }
    bool is_real() const;
    /// Real parts; throws InvalidInput when the list is not real.
    std::vector<T> reals() const;
    const T& perron() const { return values[perron_index].re; }
    /// m = max_{j>=2} |lambda_j|, rounded through double.
    double tail_max() const;
    /// m^2, exact in the backend.
    T tail_max_squared() const;
    T trace() const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

template <class T>
struct SymmetricFunctions {
    /// e[0] = 1, e[k] = k-th elementary symmetric function.
    std::vector<T> e;
};

template <class T>
struct Negativity {
    T value;
    std::string witness;
};

/// Check conjugate closure and return the list with partners snapped to
/// exact conjugates (real elements get a zero imaginary part). The order is
/// the input order.
template <class T>
std::vector<Complex<T>> conjugate_close(const std::vector<Complex<T>>& raw, double tol = kClosureTol);

/// Canonical form of a list; throws NotConjugateClosed or NoPerronCandidate.
template <class T>
Spectrum<T> normalize(const std::vector<Complex<T>>& raw, double tol = kClosureTol);

template <class T>
Spectrum<T> normalize_real(const std::vector<T>& raw);

template <class T>
SymmetricFunctions<T> elementary_symmetric(const std::vector<Complex<T>>& values);

template <class T>
SymmetricFunctions<T> elementary_symmetric(const Spectrum<T>& s)
{
    return elementary_symmetric(s.values);
}

/// Coefficients of prod (x - lambda_i), leading coefficient first.
template <class T>
std::vector<T> monic_from_roots(const std::vector<Complex<T>>& values);

/// The list with lambda_1 replaced by lambda_1 + delta.
template <class T>
Spectrum<T> shift_perron_value(const Spectrum<T>& s, const T& delta);

template <class T>
std::string to_string(const Complex<T>& z);

template <class T>
std::string to_string(const Spectrum<T>& s);

} // namespace niep

#pragma once

#include "niep/matrix.hpp"
#include "niep/spectra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace niep {

/// Coefficients of det(xI - M), leading coefficient first, by the
/// Faddeev-LeVerrier trace recurrence.
template <class T>
std::vector<T> char_poly(const Matrix<T>& m);

struct CoefficientCheck {
    bool match = false;
    double max_deviation = 0.0;
    /// Index k of the worst coefficient (the e_k slot).
    std::size_t worst_index = 0;
};

struct SignCheck {
    bool pass = false;
    double extreme_entry = 0.0;
};

struct RowSumCheck {
    bool pass = false;
    double alpha = 0.0;
    double max_deviation = 0.0;
};

struct StructuralFlags {
    bool nonnegative = true;
    bool positive = false;
    bool row_sums = false;
    bool symmetric = false;
};

struct VerificationReport {
    std::optional<CoefficientCheck> char_poly;
    std::optional<SignCheck> nonnegative;
    std::optional<SignCheck> positive;
    std::optional<RowSumCheck> row_sum;
    std::optional<bool> symmetric;
    std::optional<std::map<std::string, std::vector<std::size_t>>> jordan;

    bool passed() const;
    /// Merge the predicates of another report into this one.
    void absorb(const VerificationReport& other);
    std::string summary() const;
};

/// Float tolerance for coefficient comparison, relative to
/// max(1, |c_k|, ||M||_inf^k).
inline constexpr double kCoefficientTol = 1e-9;
/// Float tolerance for entry signs and row sums.
inline constexpr double kEntryTol = 1e-9;

template <class T>
CoefficientCheck compare_coefficients(const Matrix<T>& m, const std::vector<T>& expected);

template <class T>
VerificationReport verify_spectrum(const Matrix<T>& m, const Spectrum<T>& s);

template <class T>
VerificationReport verify_spectrum(const Matrix<T>& m, const std::vector<Complex<T>>& values);

template <class T>
VerificationReport structural_checks(const Matrix<T>& m, const StructuralFlags& want);

/// Both checks at once: spectrum plus nonnegativity (and whatever else is
/// requested).
template <class T>
VerificationReport full_check(const Matrix<T>& m, const Spectrum<T>& s, StructuralFlags want = {});

/// Singular values by one-sided Jacobi, descending.
std::vector<double> singular_values(const Matrix<double>& a);

/// Rank by singular-value thresholding at rel * sigma_max.
std::size_t numerical_rank(const Matrix<double>& a, double rel = 1e-7);
std::size_t numerical_rank(const Matrix<Complex<double>>& a, double rel = 1e-7);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi, descending.
std::vector<double> symmetric_eigenvalues(const Matrix<double>& a);

} // namespace niep

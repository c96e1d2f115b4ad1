#pragma once

#include "niep/matrix.hpp"

#include <array>
#include <string>

namespace niep {

/// Prescribed diagonal omega and spectrum lambda of a 3x3 nonnegative
/// matrix in CS_{lambda_1}. lambda_2, lambda_3 are real or a conjugate pair.
template <class T>
struct DiagonalSpec {
    std::array<T, 3> omega;
    T lambda1;
    Complex<T> lambda2;
    Complex<T> lambda3;
};

template <class T>
struct Diag3Result {
    Matrix<T> matrix;
    /// "pattern" for the fixed zero pattern, "box-edge" for the fallback.
    std::string pattern;
};

/// Conditions (i)-(iv): 0 <= omega_k <= lambda_1, sum omega = sum lambda,
/// sigma_2(omega) >= e_2(lambda), max omega_k >= Re lambda_2.
template <class T>
bool check_perfect_conditions(const DiagonalSpec<T>& d);

/// Nonnegative B in CS_{lambda_1} with diagonal omega and spectrum lambda.
/// Throws ConditionsNotSatisfied, NoNonnegativeRoot.
template <class T>
Diag3Result<T> construct_3x3_traced(const DiagonalSpec<T>& d);

template <class T>
Matrix<T> construct_3x3(const DiagonalSpec<T>& d)
{
    return construct_3x3_traced(d).matrix;
}

} // namespace niep

#pragma once

#include "niep/matrix.hpp"
#include "niep/trace.hpp"

#include <optional>
#include <vector>

namespace niep {

enum class EpsSign { Plus, Minus };

/// Moves lambda_1 -> lambda_1 + eps and lambda_2 -> lambda_2 +/- eps on a
/// nonnegative A in CS_{lambda_1} through a rank-two update with X = [e | x].
/// Throws NotAnEigenvalue, DegenerateEigenvector, NegativeEps, InvalidInput.
template <class T>
Matrix<T> guo_eps_perturb(const Matrix<T>& a, const T& lambda2, const T& eps, EpsSign sign,
                          Trace<T>* trace = nullptr);

/// An eigenvector of A for a known real eigenvalue: exact null space in
/// rational mode, shifted inverse iteration in float mode.
template <class T>
Vector<T> eigenvector_for(const Matrix<T>& a, const T& lambda);

/// Two constant-row-sum matrices A1 in CS_{alpha_1}, A2 in CS_{beta_1} merged
/// into one nonnegative matrix with spectrum {alpha_1 + eps, beta_1 - eps}
/// and both tails. Throws EpsTooSmall.
template <class T>
Matrix<T> merge_lists_eps(const Matrix<T>& a1, const Matrix<T>& a2, const T& eps, Trace<T>* trace = nullptr);

template <class T>
struct SmigocGlue {
    Matrix<T> matrix;
    /// Permutation applied to A to move the chosen diagonal entry to the
    /// last position: row i of the permuted A is row perm[i] of A.
    std::vector<std::size_t> permutation;
};

/// Glue A (corner c = A(k,k), k defaulting to the last index) with B in
/// CS_{lambda_1}, lambda_1 <= c. Spectrum: sigma(A) with sigma(B) minus
/// lambda_1. Throws PerronExceedsCorner.
template <class T>
SmigocGlue<T> smigoc_glue(const Matrix<T>& a, const Matrix<T>& b, std::optional<std::size_t> corner = {},
                          Trace<T>* trace = nullptr);

/// [[A, rho u v^T], [rho v u^T, B]] for symmetric A, B with unit eigenvectors
/// u, v. Throws NotSymmetric, NotUnit, NotAnEigenpair.
template <class T>
Matrix<T> fiedler_couple(const Matrix<T>& a, const Matrix<T>& b, const Vector<T>& u, const Vector<T>& v,
                         const T& rho, Trace<T>* trace = nullptr);

/// Fiedler coupling of symmetric nonnegative A, B with Perron roots
/// alpha_1 >= beta_1 moving them to alpha_1 + eps, beta_1 - eps. Perron roots
/// default to the common row sums (float mode falls back to the largest
/// eigenvalue). Throws OrderViolated, NegativeEps, InexactInRationalMode when
/// the coupling constant is irrational.
template <class T>
Matrix<T> fiedler_eps(const Matrix<T>& a, const Matrix<T>& b, const T& eps, std::optional<T> alpha1 = {},
                      std::optional<T> beta1 = {}, Trace<T>* trace = nullptr);

} // namespace niep

#pragma once

#include "niep/matrix.hpp"

#include <vector>

namespace niep {

/// Eigenpair residual tolerance for the float backend, relative to
/// max(1, ||A||_inf) * ||v||_inf.
inline constexpr double kEigenpairTol = 1e-8;

/// The (X, C, Omega) triple of a rank-r update: columns of X are
/// eigenvectors of the base matrix for the diagonal entries of Omega.
template <class T>
struct RadoUpdate {
    Matrix<T> X;
    Matrix<T> C;
    std::vector<T> omega;
};

/// A + v q^T, moving lambda_k to lambda_k + v^T q. Throws NotAnEigenpair.
template <class T>
Matrix<T> brauer_update(const Matrix<T>& a, const Vector<T>& v, const Vector<T>& q, const T& lambda_k);

/// A + X C. Throws RankDeficientX or EigenRelationViolated.
template <class T>
Matrix<T> rado_update(const Matrix<T>& a, const RadoUpdate<T>& u);

/// A + X C X^T for symmetric A and C and orthonormal X.
template <class T>
Matrix<T> symmetric_rado_update(const Matrix<T>& a, const Matrix<T>& x, const Matrix<T>& c, const std::vector<T>& omega);

/// Variant for mutually orthogonal but unnormalized columns: X^T X must be
/// a positive diagonal D, and the update is A + X C X^T with C chosen for
/// the unnormalized basis (C = D^{-1/2} C_hat D^{-1/2}).
template <class T>
Matrix<T> symmetric_rado_update_orthogonal(const Matrix<T>& a, const Matrix<T>& x, const Matrix<T>& c,
                                           const std::vector<T>& omega);

/// A + eps e e_1^T for nonnegative A in CS_alpha.
template <class T>
Matrix<T> shift_perron(const Matrix<T>& a, const T& eps);

/// Common row sum if every row sums to the same value (exact, or within
/// kEntryTol in float mode).
template <class T>
std::optional<T> common_row_sum(const Matrix<T>& a);

/// ||A v - lambda v||_inf within tolerance (exact in rational mode).
template <class T>
bool is_eigenpair(const Matrix<T>& a, const Vector<T>& v, const T& lambda);

} // namespace niep

#pragma once

#include "niep/matrix.hpp"
#include "niep/spectra.hpp"
#include "niep/trace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace niep {

using Partition = std::vector<std::size_t>;

/// Integer partitions of n as nonincreasing part lists, in ascending
/// lexicographic order: {1,1,1}, {2,1}, {3}.
std::vector<Partition> integer_partitions(std::size_t n);

template <class T>
struct JordanEntry {
    Complex<T> value;
    std::size_t multiplicity = 0;
    /// Block sizes, nonincreasing.
    Partition blocks;
};

/// One Jordan canonical form: every distinct eigenvalue with its block
/// sizes. Both members of a conjugate pair appear, with equal partitions.
template <class T>
struct JordanSpec {
    std::vector<JordanEntry<T>> entries;

    std::string to_string() const;
};

/// Cartesian product of the partitions of each distinct eigenvalue's
/// multiplicity, conjugate pairs locked together; the first eigenvalue in
/// canonical order varies slowest.
template <class T>
std::vector<JordanSpec<T>> enumerate_jordan_forms(const Spectrum<T>& s);

template <class T>
struct Diagonalization {
    /// Eigenvector columns; conjugate pairs hold conjugate columns.
    Matrix<Complex<T>> S;
    Matrix<Complex<T>> S_inv;
    /// Eigenvalue of each column.
    std::vector<Complex<T>> order;
};

/// Condition bound above which eigen_basis gives up.
inline constexpr double kMaxCondition = 1e12;

/// Eigenvectors of A for the known spectrum: exact null spaces in rational
/// mode, thresholded elimination in float mode. Throws NotDiagonalizable or
/// IllConditioned.
template <class T>
Diagonalization<T> eigen_basis(const Matrix<T>& a, const Spectrum<T>& s);

template <class T>
struct MincResult {
    Matrix<T> matrix;
    T eps;
    /// S N S^-1 with N the within-block superdiagonal links.
    Matrix<T> perturbation;
};

/// M = A + eps S N S^-1 with Jordan form target. Without eps the step is
/// 1/2 min(A) / max(1, ||P||_inf). Throws InvalidInput (A not positive or
/// target not allowed), ComplexPerturbation, EpsTooLarge.
template <class T>
MincResult<T> minc_realize(const Matrix<T>& a, const Diagonalization<T>& d, const JordanSpec<T>& target,
                           std::optional<T> eps = {});

/// Rank threshold relative to the largest singular value in float mode.
inline constexpr double kJordanRankTol = 1e-7;

template <class T>
struct RankChain {
    /// ranks[k] = rank((M - lambda I)^k), k = 0..mult.
    std::vector<std::size_t> ranks;
    Partition blocks;
};

/// Block sizes of lambda read off the rank chain. Throws
/// RankChainInconsistent.
template <class T>
RankChain<T> jordan_structure(const Matrix<T>& m, const Complex<T>& lambda, std::size_t mult);

template <class T>
struct PositiveRealization {
    Matrix<T> matrix;
    Diagonalization<T> basis;
    Trace<T> certificate;
};

/// Searches the implemented criteria for a diagonalizable realization and
/// makes it entrywise positive by a spectrum-preserving similarity. Throws
/// PositiveRealizationNotFound.
template <class T>
PositiveRealization<T> positive_diagonalizable_realization(const Spectrum<T>& s);

template <class T>
struct UniversalForm {
    JordanSpec<T> target;
    Matrix<T> matrix;
    T eps;
    /// Rank chain per entry of target.
    std::vector<RankChain<T>> chains;
};

template <class T>
struct UniversalResult {
    PositiveRealization<T> base;
    std::vector<UniversalForm<T>> forms;
};

/// One positive matrix per Jordan form allowed by s, each checked by the
/// oracle and by its rank chains; eps goes to every minc_realize call.
/// Throws PositiveRealizationNotFound or InternalConstructionError.
template <class T>
UniversalResult<T> realize_universal(const Spectrum<T>& s, std::optional<T> eps = {});

/// Same, from a supplied positive diagonalizable realization.
template <class T>
UniversalResult<T> realize_universal(const Spectrum<T>& s, PositiveRealization<T> base, std::optional<T> eps = {});

} // namespace niep

#pragma once

#include "niep/matrix.hpp"
#include "niep/spectra.hpp"
#include "niep/trace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace niep {

// ---------------------------------------------------------------- Suleimanova

/// Real list with lambda_k < 0 for k >= 2 and nonnegative trace.
template <class T>
bool check_suleimanova(const Spectrum<T>& s);

template <class T>
Matrix<T> realize_suleimanova(const Spectrum<T>& s, Trace<T>* trace = nullptr);

/// The Suleimanova constructor on a raw list whose first entry is the
/// Perron value and whose remaining entries are negative.
template <class T>
Matrix<T> suleimanova_matrix(const std::vector<T>& list, Trace<T>* trace = nullptr);

// ---------------------------------------------------------------- Salzmann

template <class T>
bool check_salzmann(const Spectrum<T>& s);

template <class T>
Matrix<T> realize_salzmann(const Spectrum<T>& s, Trace<T>* trace = nullptr);

// ---------------------------------------------------------------- Ciarlet

/// |lambda_k| <= lambda_1 / n for k >= 2.
template <class T>
bool check_ciarlet(const Spectrum<T>& s);

template <class T>
Matrix<T> realize_ciarlet(const Spectrum<T>& s, Trace<T>* trace = nullptr);

// ---------------------------------------------------------------- Kellogg

template <class T>
struct KelloggData {
    /// Number of nonnegative entries.
    std::size_t p = 0;
    /// Kellogg index set, 1-based and ascending.
    std::vector<std::size_t> K;
    /// {lambda_k, lambda_{n-k+2}} for each k in K.
    std::vector<std::vector<T>> pair_lists;
    /// Lambda_R: elements outside Lambda_1 and the K pairs.
    std::vector<T> residual;
    /// lambda_1 + sum over K of (lambda_k + lambda_{n-k+2}).
    T mu;
};

template <class T>
struct KelloggCheck {
    std::optional<KelloggData<T>> data;
    /// First violated inequality when rejected.
    std::string violation;

    explicit operator bool() const { return data.has_value(); }
};

template <class T>
KelloggCheck<T> check_kellogg(const Spectrum<T>& s);

/// Kellogg check on a raw descending real list.
template <class T>
KelloggCheck<T> check_kellogg_list(const std::vector<T>& list);

template <class T>
Matrix<T> realize_kellogg(const Spectrum<T>& s, const KelloggData<T>& d, Trace<T>* trace = nullptr);

// ---------------------------------------------------------------- Borobia

template <class T>
struct BorobiaPartition {
    /// Blocks J_1, ..., J_t ordered by decreasing sum.
    std::vector<std::vector<T>> blocks;
    /// Nonnegative head followed by the block sums.
    std::vector<T> merged;
};

/// Largest negative tail the partition search accepts.
inline constexpr std::size_t kBorobiaTailCap = 12;

/// Throws NoPartitionFound or TailTooLarge.
template <class T>
BorobiaPartition<T> find_borobia_partition(const Spectrum<T>& s);

template <class T>
Matrix<T> realize_borobia(const Spectrum<T>& s, const BorobiaPartition<T>& part, Trace<T>* trace = nullptr);

/// (r+1)x(r+1) matrix in CS_{lambda_k} with spectrum {lambda_k, mus}; every
/// negative entry sits in the last column and is >= lambda_k + sum(mus).
/// Throws BadSigns.
template <class T>
Matrix<T> expand_list(const T& lambda_k, const std::vector<T>& mus);

// ---------------------------------------------------------------- complex region

enum class RegionKind { ReDominant, Sqrt3Wedge };

/// Tail membership in the region only.
template <class T>
bool in_region(const Spectrum<T>& s, RegionKind kind);

/// Region membership and nonnegative trace.
template <class T>
bool check_complex_region(const Spectrum<T>& s, RegionKind kind);

/// Throws RegionViolated or CriterionNotSatisfied.
template <class T>
Matrix<T> realize_complex_smigoc(const Spectrum<T>& s, Trace<T>* trace = nullptr);

// ---------------------------------------------------------------- Guo bound

template <class T>
struct GuoBound {
    T lambda1;
    Matrix<T> matrix;
};

/// Realizes {(n-1) m, tail} with m the largest tail modulus. The tail must
/// be conjugate-closed and contain at least one real element. Throws
/// NoRealTailElement, InexactInRationalMode (m irrational), NotConjugateClosed.
template <class T>
GuoBound<T> guo_bound_realize(const std::vector<Complex<T>>& tail, Trace<T>* trace = nullptr);

/// lambda_1 >= (n-1) m, decided exactly.
template <class T>
bool check_guo_bound(const Spectrum<T>& s);

// ---------------------------------------------------------------- Rado partition

/// Partition of a real list into a head Lambda_0 = {lambda_1, ...} of size
/// 2 or 3 and negative groups Lambda_k, one per head element, with diagonal
/// omega_k >= -sum(Lambda_k) such that a nonnegative B in CS_{lambda_1} has
/// diagonal omega and spectrum Lambda_0.
template <class T>
struct RadoPartition {
    std::vector<T> head;
    std::vector<std::vector<T>> groups;
    std::vector<T> omega;
};

/// Largest number of non-head elements the group search accepts.
inline constexpr std::size_t kRadoTailCap = 10;

template <class T>
std::optional<RadoPartition<T>> find_rado_partition(const Spectrum<T>& s);

/// Records A_k, A, B, X, C and M in the trace.
template <class T>
Matrix<T> realize_rado(const Spectrum<T>& s, const RadoPartition<T>& part, Trace<T>* trace = nullptr);

} // namespace niep

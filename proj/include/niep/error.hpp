#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace niep {

enum class Errc {
    NotConjugateClosed,
    NoPerronCandidate,
    BoundNotFound,
    NotAnEigenpair,
    RankDeficientX,
    EigenRelationViolated,
    NotOrthonormal,
    NotSymmetric,
    NegativeEps,
    CriterionNotSatisfied,
    InternalConstructionError,
    NoPartitionFound,
    TailTooLarge,
    BadSigns,
    RegionViolated,
    NoRealTailElement,
    Lambda2NotReal,
    NotAnEigenvalue,
    DegenerateEigenvector,
    EpsTooSmall,
    PerronExceedsCorner,
    NotUnit,
    OrderViolated,
    ConditionsNotSatisfied,
    NoNonnegativeRoot,
    NotDiagonalizable,
    IllConditioned,
    ComplexPerturbation,
    EpsTooLarge,
    RankChainInconsistent,
    PositiveRealizationNotFound,
    InexactInRationalMode,
    DimensionMismatch,
    Singular,
    InvalidInput,
};

std::string_view to_string(Errc code);

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace niep

#include "niep/error.hpp"

namespace niep {

std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::NotConjugateClosed: return "NotConjugateClosed";
    case Errc::NoPerronCandidate: return "NoPerronCandidate";
    case Errc::BoundNotFound: return "BoundNotFound";
    case Errc::NotAnEigenpair: return "NotAnEigenpair";
    case Errc::RankDeficientX: return "RankDeficientX";
    case Errc::EigenRelationViolated: return "EigenRelationViolated";
    case Errc::NotOrthonormal: return "NotOrthonormal";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NegativeEps: return "NegativeEps";
    case Errc::CriterionNotSatisfied: return "CriterionNotSatisfied";
    case Errc::InternalConstructionError: return "InternalConstructionError";
    case Errc::NoPartitionFound: return "NoPartitionFound";
    case Errc::TailTooLarge: return "TailTooLarge";
    case Errc::BadSigns: return "BadSigns";
    case Errc::RegionViolated: return "RegionViolated";
    case Errc::NoRealTailElement: return "NoRealTailElement";
    case Errc::Lambda2NotReal: return "Lambda2NotReal";
    case Errc::NotAnEigenvalue: return "NotAnEigenvalue";
    case Errc::DegenerateEigenvector: return "DegenerateEigenvector";
    case Errc::EpsTooSmall: return "EpsTooSmall";
    case Errc::PerronExceedsCorner: return "PerronExceedsCorner";
    case Errc::NotUnit: return "NotUnit";
    case Errc::OrderViolated: return "OrderViolated";
    case Errc::ConditionsNotSatisfied: return "ConditionsNotSatisfied";
    case Errc::NoNonnegativeRoot: return "NoNonnegativeRoot";
    case Errc::NotDiagonalizable: return "NotDiagonalizable";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::ComplexPerturbation: return "ComplexPerturbation";
    case Errc::EpsTooLarge: return "EpsTooLarge";
    case Errc::RankChainInconsistent: return "RankChainInconsistent";
    case Errc::PositiveRealizationNotFound: return "PositiveRealizationNotFound";
    case Errc::InexactInRationalMode: return "InexactInRationalMode";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::Singular: return "Singular";
    case Errc::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

} // namespace niep

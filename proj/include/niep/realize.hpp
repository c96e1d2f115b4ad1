#pragma once

#include "niep/matrix.hpp"
#include "niep/spectra.hpp"
#include "niep/trace.hpp"
#include "niep/verify.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace niep {

enum class Criterion { Suleimanova, Ciarlet, Salzmann, Kellogg, Borobia, Rado, ComplexRegion, GuoBound };

std::string_view criterion_name(Criterion c);

/// Accepts the canonical names plus the aliases "rado-example",
/// "complex-region", "smigoc" and "guo-bound".
std::optional<Criterion> parse_criterion(std::string_view name);

/// Order tried by the automatic dispatcher, cheapest and strictest first.
const std::vector<Criterion>& auto_order();

struct Verdict {
    Criterion criterion;
    bool pass = false;
    std::string detail;
};

template <class T>
Verdict check_criterion(const Spectrum<T>& s, Criterion c);

template <class T>
std::vector<Verdict> check_all(const Spectrum<T>& s);

template <class T>
struct Realization {
    Criterion criterion;
    Matrix<T> matrix;
    Trace<T> certificate;
    /// The list the matrix realizes; differs from the request only in the
    /// Perron element when perron_shifted is set.
    Spectrum<T> realized;
    bool perron_shifted = false;
    VerificationReport report;
};

/// Run one criterion's construction. Throws CriterionNotSatisfied when the
/// check fails, or the constructor's own error.
template <class T>
Realization<T> realize_with(const Spectrum<T>& s, Criterion c);

/// First criterion in auto_order() that succeeds. With allow_shift the Guo
/// bound is used as a last resort even when lambda_1 < (n-1) m, realizing
/// the Perron-shifted list. Throws CriterionNotSatisfied when nothing applies.
template <class T>
Realization<T> realize_auto(const Spectrum<T>& s, bool allow_shift = true);

/// Every criterion whose construction succeeds, in auto order.
template <class T>
std::vector<Realization<T>> realize_every(const Spectrum<T>& s);

/// Least grid delta for which some criterion certifies the list with
/// lambda_1 + delta. Default step 2^-10 max(1, |lambda_1|). Throws
/// BoundNotFound.
template <class T>
Negativity<T> negativity_upper_bound(const Spectrum<T>& s, std::optional<T> step = {});

} // namespace niep

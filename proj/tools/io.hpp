#pragma once

// JSON encoding of spectra, matrices and certificates.

#include "niep/matrix.hpp"
#include "niep/realize.hpp"
#include "niep/spectra.hpp"
#include "niep/trace.hpp"
#include "niep/universal.hpp"
#include "niep/verify.hpp"

#include <json.hpp>

namespace niep::io {

using Json = nlohmann::ordered_json;

/// Numbers may be JSON numbers or strings ("p/q", decimals). JSON decimals
/// read into a Rational are taken digit for digit (0.1 -> 1/10).
template <class T>
T scalar_from_json(const Json& j);

/// "p/q" for rationals, shortest round-trip decimal string for doubles.
template <class T>
Json scalar_to_json(const T& x);

/// {"lambda": [[re, im], ...]} or a plain list of reals.
template <class T>
Spectrum<T> spectrum_from_json(const Json& j, double tol = kClosureTol);

template <class T>
Json spectrum_to_json(const Spectrum<T>& s);

template <class T>
Json entries_to_json(const Matrix<T>& m);

/// Accepts a bare array of rows or an object with "entries".
template <class T>
Matrix<T> matrix_from_json(const Json& j);

template <class T>
Json trace_to_json(const Trace<T>& t);

/// Matrix document: order, entries, backend, row_sum and certificate.
template <class T>
Json matrix_document(const Matrix<T>& m, const Trace<T>& certificate);

template <class T>
Json realization_to_json(const Realization<T>& r);

Json report_to_json(const VerificationReport& r);

/// Indented JSON with arrays of scalars kept on one line.
std::string pretty(const Json& j);

template <class T>
Json universal_to_json(const UniversalResult<T>& r, const Spectrum<T>& s);

} // namespace niep::io

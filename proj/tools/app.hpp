#pragma once

#include "io.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace niep::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotApplicable = 2;

struct Job {
    /// check, realize, universal, verify or guo.
    std::string command;
    io::Json payload;
    std::string backend = "rational";
    std::string criterion = "auto";
    std::optional<std::string> eps;
    double tol = kClosureTol;
};

struct Outcome {
    int code = kExitOk;
    io::Json result;
    /// Human-facing rendering: verdict lines for check, JSON otherwise.
    std::string text;
};

Outcome run(const Job& job);

/// A batch entry is an object with "command", "spectrum" (or the verify
/// payload itself) and optional "backend", "criterion", "eps"; missing
/// fields come from defaults.
Job job_from_json(const io::Json& entry, const Job& defaults);

/// Runs the entries on at most `workers` threads; results keep input order.
Outcome run_batch(const io::Json& entries, const Job& defaults, std::size_t workers);

} // namespace niep::app

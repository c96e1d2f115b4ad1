#pragma once

#include "niep/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace niep {

template <class T>
struct NamedMatrix {
    std::string name;
    Matrix<T> matrix;
};

template <class T>
struct TraceStep {
    std::string description;
    std::vector<NamedMatrix<T>> matrices;
};

/// Construction trace: the theorem executed and each perturbation step
/// with the matrices it produced.
template <class T>
struct Trace {
    std::string theorem;
    std::vector<TraceStep<T>> steps;

    void step(std::string description, std::vector<NamedMatrix<T>> matrices = {})
    {
        steps.push_back({std::move(description), std::move(matrices)});
    }

    const Matrix<T>* find(const std::string& name) const
    {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            for (const auto& m : it->matrices)
                if (m.name == name)
                    return &m.matrix;
        return nullptr;
    }
};

/// Record a step when a trace is being collected.
template <class T>
void record(Trace<T>* trace, std::string description, std::vector<NamedMatrix<T>> matrices = {})
{
    if (trace)
        trace->step(std::move(description), std::move(matrices));
}

} // namespace niep

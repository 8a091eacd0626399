#pragma once

#include "hydrostat/field.hpp"

namespace hydrostat {

/// Prognostic (v, T) plus the diagnostic w and surface pressure.
struct State {
    VectorField v;
    ScalarField T;
    WField w;
    ScalarField ps;  ///< single layer
    double t = 0.0;

    State() = default;
    explicit State(const GridSpec& grid) : v(grid), T(grid), w(grid), ps(grid.surface()) {}

    const GridSpec& grid() const { return T.grid(); }
    bool all_finite() const;
};

}  // namespace hydrostat

#pragma once

#include "hydrostat/field.hpp"

namespace hydrostat {

/// Barotropic (depth-averaged, single layer) and baroclinic parts.
struct ModeSplit {
    VectorField vbar;
    VectorField vtilde;
};

ModeSplit decompose(const VectorField& v);

/// Both sides of the anisotropic trilinear inequality
///   int_M (int|phi| dz)(int|varphi psi| dz) dxdy
///     <= C ||phi|| ||varphi||^{1/2}(||varphi||/L + ||grad_H varphi||)^{1/2}
///              ||psi||^{1/2}(||psi||/L + ||grad_H psi||)^{1/2}
/// with L the diameter of the rectangle. Gradients use unconstrained
/// (zero-flux ghost) face differences.
struct ProductBound {
    double lhs = 0.0;
    double rhs_factor = 0.0;
    /// lhs > 0 with rhs_factor == 0: analytically impossible.
    bool violation = false;

    /// lhs / rhs_factor; 0 when both vanish.
    double ratio() const;
};

ProductBound anisotropic_product_bound(const ScalarField& phi, const ScalarField& varphi, const ScalarField& psi);

}  // namespace hydrostat

#pragma once

#include <stdexcept>
#include <string>

#include "hydrostat/field.hpp"

namespace hydrostat {

/// Outcome of one surface-pressure solve.
struct PoissonSolve {
    double tolerance = 1e-10;     ///< relative residual target
    int max_iterations = 5000;
    double achieved_residual = 0.0;
    int iteration_count = 0;
    bool converged = true;
    /// |mean(rhs)| / ||rhs||_inf before the compatibility correction.
    double compatibility_defect = 0.0;
    bool compatibility_warning = false;
};

/// Thrown when the Poisson iteration does not converge.
struct ProjectionFailure : std::runtime_error {
    PoissonSolve report;
    ProjectionFailure(const std::string& what, PoissonSolve r) : std::runtime_error(what), report(r) {}
};

/// Enforces div_H (int v dz) = 0 through a single-layer surface pressure.
///
/// The discrete Laplacian is the composition of the centered divergence
/// (zero-Dirichlet velocity ghosts) with the centered gradient (zero-flux
/// pressure ghosts). The divergence is minus the adjoint of the gradient, so
/// the operator is symmetric semidefinite with only constants in its kernel
/// and the corrected velocity is divergence-free to solver tolerance.
class PressureProjector {
public:
    explicit PressureProjector(const GridSpec& grid, double tolerance = 1e-10, int max_iterations = 5000);

    struct Result {
        ScalarField phi;  ///< single layer, zero mean
        PoissonSolve report;
    };

    /// Solves lap phi = div(depth_average(v))/dt and sets v -= dt grad phi
    /// uniformly in z. Throws ProjectionFailure on non-convergence.
    Result project(VectorField& v, double dt);

    /// lap phi for a single-layer phi (the operator used by project).
    ScalarField apply_laplacian(const ScalarField& phi) const;
    /// Centered gradient with zero-flux ghosts of a single-layer field.
    VectorField gradient(const ScalarField& phi) const;
    /// Centered divergence with zero-Dirichlet ghosts of a single-layer field.
    ScalarField divergence(const VectorField& vbar) const;

    double tolerance() const { return tol_; }

private:
    GridSpec surface_;
    double tol_;
    int max_iter_;
};

/// || div_H depth_average(v) ||_2 over M.
double depth_mean_divergence_norm(const VectorField& v);

/// p = -int_{-h}^z T (interface-averaged to centers) + p_s.
ScalarField reconstruct_p(const ScalarField& T, const ScalarField& ps);

}  // namespace hydrostat

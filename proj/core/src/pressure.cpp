#include "hydrostat/pressure.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hydrostat/dynamics.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"

namespace hydrostat {

namespace {

double dot(const ScalarField& a, const ScalarField& b) {
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
    return s;
}

void remove_mean(ScalarField& f) {
    double m = 0.0;
    for (double x : f.values()) m += x;
    m /= static_cast<double>(f.size());
    for (double& x : f.values()) x -= m;
}

}  // namespace

PressureProjector::PressureProjector(const GridSpec& grid, double tolerance, int max_iterations)
    : surface_(grid.surface()), tol_(tolerance), max_iter_(max_iterations) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("projection tolerance must be positive");
}

VectorField PressureProjector::gradient(const ScalarField& phi) const {
    const FieldBoundary free = FieldBoundary::uniform(BoundaryCondition::neumann0());
    return VectorField(ddx(phi, free), ddy(phi, free));
}

ScalarField PressureProjector::divergence(const VectorField& vbar) const {
    return divergence_h(vbar, FieldBoundary::velocity());
}

ScalarField PressureProjector::apply_laplacian(const ScalarField& phi) const { return divergence(gradient(phi)); }

PressureProjector::Result PressureProjector::project(VectorField& v, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("project: dt must be positive");
    const GridSpec& g = v.grid();

    Result res{ScalarField(surface_), {}};
    PoissonSolve& rep = res.report;
    rep.tolerance = tol_;
    rep.max_iterations = max_iter_;

    const VectorField vbar = depth_average(v);
    // Solve A phi = b with A = -lap (positive semidefinite), b = -div/dt.
    ScalarField b = divergence(vbar);
    b *= -1.0 / dt;
    double mean = 0.0, bmax = 0.0;
    for (double x : b.values()) {
        mean += x;
        bmax = std::max(bmax, std::abs(x));
    }
    mean /= static_cast<double>(b.size());
    rep.compatibility_defect = bmax > 0.0 ? std::abs(mean) / bmax : 0.0;
    rep.compatibility_warning = rep.compatibility_defect > 1e-8;
    remove_mean(b);

    const double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) return res;

    // Conjugate gradients; the Jacobi diagonal of this operator is constant,
    // so plain CG is the preconditioned iteration.
    ScalarField& x = res.phi;
    ScalarField r = b;
    ScalarField p = r;
    double rr = dot(r, r);
    int it = 0;
    while (it < max_iter_ && std::sqrt(rr) > tol_ * bnorm) {
        ScalarField Ap = apply_laplacian(p);
        Ap *= -1.0;
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) break;
        const double alpha = rr / pAp;
        x.axpy(alpha, p);
        r.axpy(-alpha, Ap);
        remove_mean(r);
        const double rr_new = dot(r, r);
        p *= rr_new / rr;
        p += r;
        rr = rr_new;
        ++it;
    }
    remove_mean(x);
    // true residual
    ScalarField Ax = apply_laplacian(x);
    Ax *= -1.0;
    ScalarField tr = b - Ax;
    rep.achieved_residual = std::sqrt(dot(tr, tr)) / bnorm;
    rep.iteration_count = it;
    rep.converged = rep.achieved_residual <= 10.0 * tol_;
    if (!rep.converged) {
        std::ostringstream msg;
        msg << "surface pressure solve did not converge: relative residual " << rep.achieved_residual << " after "
            << it << " iterations";
        throw ProjectionFailure(msg.str(), rep);
    }

    const VectorField grad = gradient(x);
    const std::size_t cols = g.columns();
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t c = 0; c < cols; ++c) {
            v.u[c + cols * k] -= dt * grad.u[c];
            v.v[c + cols * k] -= dt * grad.v[c];
        }
    return res;
}

double depth_mean_divergence_norm(const VectorField& v) {
    const ScalarField d = divergence_h(depth_average(v), FieldBoundary::velocity());
    return norm_l2_surface(d);
}

ScalarField reconstruct_p(const ScalarField& T, const ScalarField& ps) {
    ScalarField p = hydrostatic_integral(T);
    p *= -1.0;
    p += broadcast(ps, T.grid());
    return p;
}

}  // namespace hydrostat

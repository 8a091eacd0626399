#include "hydrostat/decomposition.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"

namespace hydrostat {

ModeSplit decompose(const VectorField& v) {
    ModeSplit out;
    out.vbar = depth_average(v);
    out.vtilde = v - broadcast(out.vbar, v.grid());
    return out;
}

double ProductBound::ratio() const {
    if (rhs_factor > 0.0) return lhs / rhs_factor;
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

ProductBound anisotropic_product_bound(const ScalarField& phi, const ScalarField& varphi, const ScalarField& psi) {
    const GridSpec& g = phi.grid();
    if (!g.same_shape(varphi.grid()) || !g.same_shape(psi.grid()))
        throw std::invalid_argument("anisotropic_product_bound: grid mismatch");

    const double dz = g.dz();
    double lhs = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double a = 0.0, b = 0.0;
            for (int k = 0; k < g.nz; ++k) {
                a += std::abs(phi(i, j, k));
                b += std::abs(varphi(i, j, k) * psi(i, j, k));
            }
            lhs += (a * dz) * (b * dz);
        }
    lhs *= g.dx() * g.dy();

    const double L = g.diameter();
    const FieldBoundary free = FieldBoundary::uniform(BoundaryCondition::neumann0());
    const double n_phi = norm_l2(phi);
    const double n_var = norm_l2(varphi);
    const double n_psi = norm_l2(psi);
    const double g_var = seminorm_h1_parts(varphi, free).grad_h;
    const double g_psi = seminorm_h1_parts(psi, free).grad_h;

    ProductBound out;
    out.lhs = lhs;
    out.rhs_factor = n_phi * std::sqrt(n_var) * std::sqrt(n_var / L + g_var) * std::sqrt(n_psi) *
                     std::sqrt(n_psi / L + g_psi);
    out.violation = out.rhs_factor == 0.0 && lhs > 0.0;
    return out;
}

}  // namespace hydrostat

#include "hydrostat/dynamics.hpp"

#include <stdexcept>

#include "hydrostat/operators.hpp"

namespace hydrostat {

WField reconstruct_w(const VectorField& v) {
    const ScalarField div = divergence_h(v, FieldBoundary::velocity());
    WField w = vertical_cumint(div);
    for (double& x : w.values()) x = -x;
    return w;
}

ScalarField advect(const ScalarField& q, const FieldBoundary& q_bc, const VectorField& v, const WField& w) {
    const GridSpec& g = q.grid();
    if (!g.same_shape(v.grid()) || !g.same_shape(w.grid())) throw std::invalid_argument("advect: grid mismatch");

    const Ghosted Q(q, q_bc);
    const Ghosted U(v.u, FieldBoundary::velocity());
    const Ghosted V(v.v, FieldBoundary::velocity());
    const double hx = 0.25 / g.dx();
    const double hy = 0.25 / g.dy();
    const double idz = 1.0 / g.dz();
    const int nz = g.nz;

    ScalarField out(g);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double horiz =
                    hx * (U(i + 1, j, k) * Q(i + 1, j, k) - U(i - 1, j, k) * Q(i - 1, j, k) +
                          U(i, j, k) * (Q(i + 1, j, k) - Q(i - 1, j, k))) +
                    hy * (V(i, j + 1, k) * Q(i, j + 1, k) - V(i, j - 1, k) * Q(i, j - 1, k) +
                          V(i, j, k) * (Q(i, j + 1, k) - Q(i, j - 1, k)));

                // interface fluxes; surface and bottom carry none
                double flux_up = 0.0, adv_up = 0.0, flux_dn = 0.0, adv_dn = 0.0;
                const double qc = Q(i, j, k);
                if (k + 1 < nz) {
                    const double wu = w(i, j, k + 1);
                    flux_up = wu * 0.5 * (qc + Q(i, j, k + 1));
                    adv_up = wu * (Q(i, j, k + 1) - qc) * idz;
                }
                if (k > 0) {
                    const double wd = w(i, j, k);
                    flux_dn = wd * 0.5 * (Q(i, j, k - 1) + qc);
                    adv_dn = wd * (qc - Q(i, j, k - 1)) * idz;
                }
                const double vert = 0.5 * ((flux_up - flux_dn) * idz + 0.5 * (adv_up + adv_dn));
                out(i, j, k) = horiz + vert;
            }
    return out;
}

VectorField coriolis(const VectorField& v, double f) {
    VectorField out(v.grid());
    for (std::size_t n = 0; n < v.u.size(); ++n) {
        out.u[n] = -f * v.v[n];
        out.v[n] = f * v.u[n];
    }
    return out;
}

ScalarField hydrostatic_integral(const ScalarField& T) { return interfaces_to_centers(vertical_cumint(T)); }

VectorField baroclinic_grad(const ScalarField& T, const FieldBoundary& T_bc) {
    ScalarField ph = hydrostatic_integral(T);
    ph *= -1.0;
    FieldBoundary bc{T_bc.side, BoundaryCondition::neumann0(), {}};
    if (!T_bc.offsets.lateral_empty()) {
        bc.offsets = integrate_lateral_offsets(T_bc.offsets, T.grid());
        for (auto* side : {&bc.offsets.west, &bc.offsets.east, &bc.offsets.south, &bc.offsets.north})
            for (double& x : *side) x = -x;
    }
    return VectorField(ddx(ph, bc), ddy(ph, bc));
}

VectorField momentum_rhs(const State& s, const PhysParams& p, const Boundaries& bc) {
    const GridSpec& g = s.grid();
    const WField w = reconstruct_w(s.v);
    VectorField dv(g);
    dv.u = advect(s.v.u, bc.velocity, s.v, w);
    dv.v = advect(s.v.v, bc.velocity, s.v, w);
    dv *= -1.0;
    dv -= coriolis(s.v, p.f);
    dv -= baroclinic_grad(s.T, bc.temperature);
    dv.u.axpy(1.0 / p.Re1, laplacian_h(s.v.u, bc.velocity));
    dv.v.axpy(1.0 / p.Re1, laplacian_h(s.v.v, bc.velocity));
    return dv;
}

ScalarField temperature_rhs(const State& s, const PhysParams& p, const Boundaries& bc) {
    const WField w = reconstruct_w(s.v);
    ScalarField dT = advect(s.T, bc.temperature, s.v, w);
    dT *= -1.0;
    dT.axpy(1.0 / p.R_T, laplacian_h(s.T, bc.temperature));
    return dT;
}

Tendency explicit_tendency(const State& s, const PhysParams& p, const Boundaries& bc) {
    return {momentum_rhs(s, p, bc), temperature_rhs(s, p, bc)};
}

}  // namespace hydrostat

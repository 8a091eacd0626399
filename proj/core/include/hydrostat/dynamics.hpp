#pragma once

#include "hydrostat/field.hpp"
#include "hydrostat/params.hpp"
#include "hydrostat/state.hpp"

namespace hydrostat {

/// Explicit right-hand sides of the momentum and temperature equations.
struct Tendency {
    VectorField dv;
    ScalarField dT;
};

/// Ghost rules in force for one right-hand-side evaluation.
struct Boundaries {
    FieldBoundary velocity = FieldBoundary::velocity();
    FieldBoundary temperature = FieldBoundary::temperature(0.0);

    static Boundaries homogeneous(const PhysParams& p) {
        return {FieldBoundary::velocity(), FieldBoundary::temperature(p.alpha_T)};
    }
};

/// w = -int_{-h}^z div_H v. Bottom interface is exactly zero.
WField reconstruct_w(const VectorField& v);

/// Split (skew-symmetric) advection
///   1/2 [div_H(v q) + v.grad_H q] + 1/2 [d_z(w avg_z q) + avg_z(w d_z q)].
/// Advecting velocity uses zero-Dirichlet lateral ghosts; the vertical flux
/// through the surface and bottom is zero (w = 0 there). <advect(q), q> = 0
/// for every q.
ScalarField advect(const ScalarField& q, const FieldBoundary& q_bc, const VectorField& v, const WField& w);

/// f k x v = f (-v2, v1)
VectorField coriolis(const VectorField& v, double f);

/// Center values of int_{-h}^z T, interface-averaged.
ScalarField hydrostatic_integral(const ScalarField& T);

/// Horizontal gradient of the hydrostatic pressure -int_{-h}^z T at cell
/// centers; the lateral ghosts follow the temperature rule integrated in z.
VectorField baroclinic_grad(const ScalarField& T, const FieldBoundary& T_bc);

/// -advect(v) - f k x v - baroclinic_grad(T) + (1/Re1) lap_h v.
/// Vertical diffusion and the surface pressure are handled elsewhere.
VectorField momentum_rhs(const State& s, const PhysParams& p, const Boundaries& bc);

/// -advect(T) + (1/R_T) lap_h T.
ScalarField temperature_rhs(const State& s, const PhysParams& p, const Boundaries& bc);

Tendency explicit_tendency(const State& s, const PhysParams& p, const Boundaries& bc);

}  // namespace hydrostat

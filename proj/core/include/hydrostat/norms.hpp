#pragma once

#include "hydrostat/field.hpp"
#include "hydrostat/grid.hpp"

namespace hydrostat {

/// Volume-weighted inner product sum f g dx dy dz.
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& a, const VectorField& b);

double norm_l2(const ScalarField& f);
double norm_l2(const VectorField& v);
/// L2 over the horizontal rectangle of a single-layer field (weights dx dy).
double norm_l2_surface(const ScalarField& f);
double norm_linf(const ScalarField& f);

/// Discrete L^p, p >= 1. Vector fields use the pointwise Euclidean magnitude.
double norm_lp(const ScalarField& f, double p);
double norm_lp(const VectorField& v, double p);

/// Lateral-wall values (interior + ghost) / 2, weighted by face area.
double norm_l2_gamma_s(const ScalarField& f, const FieldBoundary& bc);

struct H1Parts {
    double grad_h = 0.0;  ///< ||grad_H f||
    double dz = 0.0;      ///< ||d_z f||
};

/// Face-difference seminorms. Interior faces carry full cell weight; wall
/// faces use the half-cell gradient between the wall value and the adjacent
/// center. With these weights <f, lap_h f> = -||grad_H f||^2 - a ||f||^2_{Gamma_s}
/// holds exactly for a homogeneous Robin(a) rule.
H1Parts seminorm_h1_parts(const ScalarField& f, const FieldBoundary& bc);
H1Parts seminorm_h1_parts(const VectorField& v, const FieldBoundary& bc);

/// ||grad_H d_z f|| with d_z taken at interior interfaces (ghost-consistent
/// surface and bottom interfaces vanish for Neumann rules).
double norm_grad_h_dz(const ScalarField& f, const FieldBoundary& bc);
double norm_grad_h_dz(const VectorField& v, const FieldBoundary& bc);

}  // namespace hydrostat

#pragma once

#include "hydrostat/field.hpp"
#include "hydrostat/grid.hpp"

namespace hydrostat {

/// Copy of a field with one ghost layer on every face (corners unused).
///
/// Lateral ghosts follow `bc.side`, surface/bottom ghosts `bc.vertical`,
/// each plus the matching inhomogeneous offset when one is supplied.
class Ghosted {
public:
    Ghosted(const ScalarField& f, const FieldBoundary& bc);

    double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
    const GridSpec& grid() const { return grid_; }

private:
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i + 1) +
               static_cast<std::size_t>(grid_.nx + 2) *
                   (static_cast<std::size_t>(j + 1) + static_cast<std::size_t>(grid_.ny + 2) * (k + 1));
    }
    GridSpec grid_;
    std::vector<double> data_;
};

// Horizontal derivatives. Second-order central differences; one ghost layer
// from the boundary rule. Non-finite input throws std::domain_error.
ScalarField ddx(const ScalarField& f, const FieldBoundary& bc);
ScalarField ddy(const ScalarField& f, const FieldBoundary& bc);
ScalarField ddx(const ScalarField& f, BoundaryCondition bc);
ScalarField ddy(const ScalarField& f, BoundaryCondition bc);

/// 5-point horizontal Laplacian.
ScalarField laplacian_h(const ScalarField& f, const FieldBoundary& bc);
ScalarField laplacian_h(const ScalarField& f, BoundaryCondition bc);

/// Horizontal divergence of a vector field with its own ghost rule.
ScalarField divergence_h(const VectorField& v, const FieldBoundary& bc);

/// Cumulative midpoint integral from the bottom: interface k holds
/// sum_{j<k} f_j dz, interface 0 is zero.
WField vertical_cumint(const ScalarField& f);

/// Interface average to cell centers.
ScalarField interfaces_to_centers(const WField& w);

/// (w_{k+1} - w_k) / dz at every cell center.
ScalarField interface_difference(const WField& w);

/// Midpoint quadrature over the column; single-layer results.
ScalarField depth_integral(const ScalarField& f);
ScalarField depth_average(const ScalarField& f);
VectorField depth_average(const VectorField& v);

/// d/dz at interfaces; the surface and bottom entries use the ghost rule.
WField ddz_interfaces(const ScalarField& f, const FieldBoundary& bc);
/// Centered d/dz at cell centers.
ScalarField ddz(const ScalarField& f, const FieldBoundary& bc);
/// Second difference in z at cell centers.
ScalarField d2z(const ScalarField& f, const FieldBoundary& bc);

/// Ghost offsets of the center-valued cumulative integral of a field whose
/// lateral offsets are `lateral` (used for the hydrostatic pressure).
GhostOffsets integrate_lateral_offsets(const GhostOffsets& lateral, const GridSpec& grid);

}  // namespace hydrostat

#pragma once

#include <cstddef>
#include <vector>

namespace hydrostat {

/// Discretization of the cylinder [0,Lx]x[0,Ly]x(-h,0).
///
/// Cell-centered collocated layout. Horizontal index i runs along x, j along
/// y, k along z with k = 0 the bottom layer. Linear storage is x fastest,
/// then y, then z.
struct GridSpec {
    double Lx = 1.0;
    double Ly = 1.0;
    double h = 1.0;
    int nx = 16;
    int ny = 16;
    int nz = 8;

    static GridSpec make(double Lx, double Ly, double h, int nx, int ny, int nz);

    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }
    double dz() const { return h / nz; }
    double cell_volume() const { return dx() * dy() * dz(); }
    double area() const { return Lx * Ly; }
    /// Diameter of the horizontal rectangle.
    double diameter() const;

    double xc(int i) const { return (i + 0.5) * dx(); }
    double yc(int j) const { return (j + 0.5) * dy(); }
    /// Height of the center of layer k, in (-h, 0).
    double zc(int k) const { return -h + (k + 0.5) * dz(); }
    /// Height of interface k (k = 0 bottom, k = nz top).
    double zf(int k) const { return -h + k * dz(); }

    std::size_t columns() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t cells() const { return columns() * nz; }

    /// Same extents and vertical depth, single layer (for depth-averaged data).
    GridSpec surface() const;
    /// Extents unchanged, resolution doubled in every direction.
    GridSpec refined() const;

    /// Throws std::invalid_argument when a structural invariant fails.
    void validate() const;

    bool same_shape(const GridSpec& o) const {
        return nx == o.nx && ny == o.ny && nz == o.nz && Lx == o.Lx && Ly == o.Ly && h == o.h;
    }
};

enum class BoundaryKind { dirichlet0, neumann0, robin };

/// Homogeneous ghost rule for one family of faces.
///
/// ghost = coefficient(dn) * interior, with
///   dirichlet0: -1, neumann0: +1, robin(a): (2 - a dn) / (2 + a dn).
struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::neumann0;
    double alpha = 0.0;

    static BoundaryCondition dirichlet0() { return {BoundaryKind::dirichlet0, 0.0}; }
    static BoundaryCondition neumann0() { return {BoundaryKind::neumann0, 0.0}; }
    static BoundaryCondition robin(double a) { return {BoundaryKind::robin, a}; }

    double coefficient(double dn) const;
};

/// Additive ghost offsets for inhomogeneous data. Empty vectors mean zero.
/// west/east are indexed j + ny*k, south/north i + nx*k, top/bottom i + nx*j.
struct GhostOffsets {
    std::vector<double> west, east, south, north, bottom, top;

    bool lateral_empty() const {
        return west.empty() && east.empty() && south.empty() && north.empty();
    }
    bool vertical_empty() const { return bottom.empty() && top.empty(); }
};

/// Ghost rules for a 3D field: one rule on the lateral wall, one on the
/// surface and bottom, plus optional inhomogeneous offsets.
struct FieldBoundary {
    BoundaryCondition side = BoundaryCondition::neumann0();
    BoundaryCondition vertical = BoundaryCondition::neumann0();
    GhostOffsets offsets;

    static FieldBoundary velocity() {
        return {BoundaryCondition::dirichlet0(), BoundaryCondition::neumann0(), {}};
    }
    static FieldBoundary temperature(double alpha_T) {
        return {alpha_T > 0.0 ? BoundaryCondition::robin(alpha_T) : BoundaryCondition::neumann0(),
                BoundaryCondition::neumann0(),
                {}};
    }
    static FieldBoundary uniform(BoundaryCondition bc) { return {bc, BoundaryCondition::neumann0(), {}}; }
};

}  // namespace hydrostat

#include "hydrostat/operators.hpp"

#include <stdexcept>

namespace hydrostat {

namespace {

double offset_at(const std::vector<double>& v, std::size_t n) { return v.empty() ? 0.0 : v[n]; }

void check_offset_size(const std::vector<double>& v, std::size_t expected, const char* name) {
    if (!v.empty() && v.size() != expected)
        throw std::invalid_argument(std::string("ghost offset '") + name + "' has the wrong size");
}

}  // namespace

Ghosted::Ghosted(const ScalarField& f, const FieldBoundary& bc) : grid_(f.grid()) {
    f.require_finite("stencil input");
    const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
    const auto& off = bc.offsets;
    check_offset_size(off.west, static_cast<std::size_t>(ny) * nz, "west");
    check_offset_size(off.east, static_cast<std::size_t>(ny) * nz, "east");
    check_offset_size(off.south, static_cast<std::size_t>(nx) * nz, "south");
    check_offset_size(off.north, static_cast<std::size_t>(nx) * nz, "north");
    check_offset_size(off.bottom, grid_.columns(), "bottom");
    check_offset_size(off.top, grid_.columns(), "top");

    data_.assign(static_cast<std::size_t>(nx + 2) * (ny + 2) * (nz + 2), 0.0);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) data_[index(i, j, k)] = f(i, j, k);

    const double cx = bc.side.coefficient(grid_.dx());
    const double cy = bc.side.coefficient(grid_.dy());
    const double cz = bc.vertical.coefficient(grid_.dz());
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            const std::size_t n = static_cast<std::size_t>(j) + static_cast<std::size_t>(ny) * k;
            data_[index(-1, j, k)] = cx * f(0, j, k) + offset_at(off.west, n);
            data_[index(nx, j, k)] = cx * f(nx - 1, j, k) + offset_at(off.east, n);
        }
        for (int i = 0; i < nx; ++i) {
            const std::size_t n = static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * k;
            data_[index(i, -1, k)] = cy * f(i, 0, k) + offset_at(off.south, n);
            data_[index(i, ny, k)] = cy * f(i, ny - 1, k) + offset_at(off.north, n);
        }
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t n = static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * j;
            data_[index(i, j, -1)] = cz * f(i, j, 0) + offset_at(off.bottom, n);
            data_[index(i, j, nz)] = cz * f(i, j, nz - 1) + offset_at(off.top, n);
        }
}

ScalarField ddx(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    const double inv = 0.5 / grid.dx();
    ScalarField out(grid);
    for (int k = 0; k < grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) out(i, j, k) = (g(i + 1, j, k) - g(i - 1, j, k)) * inv;
    return out;
}

ScalarField ddy(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    const double inv = 0.5 / grid.dy();
    ScalarField out(grid);
    for (int k = 0; k < grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) out(i, j, k) = (g(i, j + 1, k) - g(i, j - 1, k)) * inv;
    return out;
}

ScalarField ddx(const ScalarField& f, BoundaryCondition bc) { return ddx(f, FieldBoundary::uniform(bc)); }
ScalarField ddy(const ScalarField& f, BoundaryCondition bc) { return ddy(f, FieldBoundary::uniform(bc)); }

ScalarField laplacian_h(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    const double ix2 = 1.0 / (grid.dx() * grid.dx());
    const double iy2 = 1.0 / (grid.dy() * grid.dy());
    ScalarField out(grid);
    for (int k = 0; k < grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const double c = g(i, j, k);
                out(i, j, k) = (g(i + 1, j, k) - 2.0 * c + g(i - 1, j, k)) * ix2 +
                               (g(i, j + 1, k) - 2.0 * c + g(i, j - 1, k)) * iy2;
            }
    return out;
}

ScalarField laplacian_h(const ScalarField& f, BoundaryCondition bc) {
    return laplacian_h(f, FieldBoundary::uniform(bc));
}

ScalarField divergence_h(const VectorField& v, const FieldBoundary& bc) {
    ScalarField d = ddx(v.u, bc);
    d += ddy(v.v, bc);
    return d;
}

WField vertical_cumint(const ScalarField& f) {
    f.require_finite("vertical_cumint input");
    const GridSpec& g = f.grid();
    const double dz = g.dz();
    WField w(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double acc = 0.0;
            w(i, j, 0) = 0.0;
            for (int k = 0; k < g.nz; ++k) {
                acc += f(i, j, k) * dz;
                w(i, j, k + 1) = acc;
            }
        }
    return w;
}

ScalarField interfaces_to_centers(const WField& w) {
    const GridSpec& g = w.grid();
    ScalarField out(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) out(i, j, k) = 0.5 * (w(i, j, k) + w(i, j, k + 1));
    return out;
}

ScalarField interface_difference(const WField& w) {
    const GridSpec& g = w.grid();
    const double inv = 1.0 / g.dz();
    ScalarField out(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) out(i, j, k) = (w(i, j, k + 1) - w(i, j, k)) * inv;
    return out;
}

ScalarField depth_integral(const ScalarField& f) {
    const GridSpec& g = f.grid();
    const double dz = g.dz();
    ScalarField out(g.surface());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double acc = 0.0;
            for (int k = 0; k < g.nz; ++k) acc += f(i, j, k);
            out(i, j, 0) = acc * dz;
        }
    return out;
}

ScalarField depth_average(const ScalarField& f) {
    const GridSpec& g = f.grid();
    ScalarField out(g.surface());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double acc = 0.0;
            for (int k = 0; k < g.nz; ++k) acc += f(i, j, k);
            out(i, j, 0) = acc / g.nz;
        }
    return out;
}

VectorField depth_average(const VectorField& v) { return VectorField(depth_average(v.u), depth_average(v.v)); }

WField ddz_interfaces(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    const double inv = 1.0 / grid.dz();
    WField out(grid);
    for (int k = 0; k <= grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                // Surface and bottom interfaces sit half a cell from the
                // adjacent center; the ghost puts the wall value midway.
                out(i, j, k) = (g(i, j, k) - g(i, j, k - 1)) * inv;
            }
    return out;
}

ScalarField ddz(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    const double inv = 0.5 / grid.dz();
    ScalarField out(grid);
    for (int k = 0; k < grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) out(i, j, k) = (g(i, j, k + 1) - g(i, j, k - 1)) * inv;
    return out;
}

ScalarField d2z(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    const double inv = 1.0 / (grid.dz() * grid.dz());
    ScalarField out(grid);
    for (int k = 0; k < grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                out(i, j, k) = (g(i, j, k + 1) - 2.0 * g(i, j, k) + g(i, j, k - 1)) * inv;
    return out;
}

GhostOffsets integrate_lateral_offsets(const GhostOffsets& lateral, const GridSpec& grid) {
    const double dz = grid.dz();
    auto integrate = [&](const std::vector<double>& src, int width) {
        std::vector<double> out;
        if (src.empty()) return out;
        out.assign(src.size(), 0.0);
        for (int a = 0; a < width; ++a) {
            double below = 0.0;
            for (int k = 0; k < grid.nz; ++k) {
                const std::size_t n = static_cast<std::size_t>(a) + static_cast<std::size_t>(width) * k;
                out[n] = below + 0.5 * src[n] * dz;
                below += src[n] * dz;
            }
        }
        return out;
    };
    GhostOffsets out;
    out.west = integrate(lateral.west, grid.ny);
    out.east = integrate(lateral.east, grid.ny);
    out.south = integrate(lateral.south, grid.nx);
    out.north = integrate(lateral.north, grid.nx);
    return out;
}

}  // namespace hydrostat

#include "hydrostat/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hydrostat/operators.hpp"

namespace hydrostat {

namespace {

void require_same(const GridSpec& a, const GridSpec& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("norm: grid mismatch");
}

/// Sum of squared horizontal face gradients times cell volume, on layers
/// [k0, k1) of a ghosted field.
double grad_h_squared(const Ghosted& g, int k0, int k1, double layer_dz) {
    const GridSpec& grid = g.grid();
    const int nx = grid.nx, ny = grid.ny;
    const double dx = grid.dx(), dy = grid.dy();
    double sx = 0.0, sy = 0.0;
    for (int k = k0; k < k1; ++k)
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i + 1 < nx; ++i) {
                const double d = g(i + 1, j, k) - g(i, j, k);
                sx += d * d;
            }
            const double w0 = 0.5 * (g(-1, j, k) + g(0, j, k));
            const double w1 = 0.5 * (g(nx, j, k) + g(nx - 1, j, k));
            // half-cell gradient (wall - center)/(dx/2) over volume dx/2
            sx += 2.0 * ((w0 - g(0, j, k)) * (w0 - g(0, j, k)) + (w1 - g(nx - 1, j, k)) * (w1 - g(nx - 1, j, k)));
        }
    for (int k = k0; k < k1; ++k)
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j + 1 < ny; ++j) {
                const double d = g(i, j + 1, k) - g(i, j, k);
                sy += d * d;
            }
            const double w0 = 0.5 * (g(i, -1, k) + g(i, 0, k));
            const double w1 = 0.5 * (g(i, ny, k) + g(i, ny - 1, k));
            sy += 2.0 * ((w0 - g(i, 0, k)) * (w0 - g(i, 0, k)) + (w1 - g(i, ny - 1, k)) * (w1 - g(i, ny - 1, k)));
        }
    return (sx * dy / dx + sy * dx / dy) * layer_dz;
}

}  // namespace

double inner(const ScalarField& f, const ScalarField& g) {
    require_same(f.grid(), g.grid());
    double s = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) s += f[n] * g[n];
    return s * f.grid().cell_volume();
}

double inner(const VectorField& a, const VectorField& b) { return inner(a.u, b.u) + inner(a.v, b.v); }

double norm_l2(const ScalarField& f) { return std::sqrt(inner(f, f)); }

double norm_l2(const VectorField& v) { return std::sqrt(inner(v, v)); }

double norm_l2_surface(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.values()) s += x * x;
    return std::sqrt(s * f.grid().dx() * f.grid().dy());
}

double norm_linf(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

double norm_lp(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm_lp: p must be >= 1");
    double s = 0.0;
    for (double x : f.values()) s += std::pow(std::abs(x), p);
    return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double norm_lp(const VectorField& v, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm_lp: p must be >= 1");
    require_same(v.u.grid(), v.v.grid());
    double s = 0.0;
    for (std::size_t n = 0; n < v.u.size(); ++n) s += std::pow(std::hypot(v.u[n], v.v[n]), p);
    return std::pow(s * v.grid().cell_volume(), 1.0 / p);
}

double norm_l2_gamma_s(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
    double sx = 0.0, sy = 0.0;
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            const double w0 = 0.5 * (g(-1, j, k) + g(0, j, k));
            const double w1 = 0.5 * (g(nx, j, k) + g(nx - 1, j, k));
            sx += w0 * w0 + w1 * w1;
        }
        for (int i = 0; i < nx; ++i) {
            const double w0 = 0.5 * (g(i, -1, k) + g(i, 0, k));
            const double w1 = 0.5 * (g(i, ny, k) + g(i, ny - 1, k));
            sy += w0 * w0 + w1 * w1;
        }
    }
    return std::sqrt((sx * grid.dy() + sy * grid.dx()) * grid.dz());
}

H1Parts seminorm_h1_parts(const ScalarField& f, const FieldBoundary& bc) {
    const Ghosted g(f, bc);
    const GridSpec& grid = f.grid();
    H1Parts out;
    out.grad_h = std::sqrt(grad_h_squared(g, 0, grid.nz, grid.dz()));

    const double dz = grid.dz();
    double sz = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            for (int k = 0; k + 1 < grid.nz; ++k) {
                const double d = g(i, j, k + 1) - g(i, j, k);
                sz += d * d;
            }
            const double b = 0.5 * (g(i, j, -1) + g(i, j, 0)) - g(i, j, 0);
            const double t = 0.5 * (g(i, j, grid.nz) + g(i, j, grid.nz - 1)) - g(i, j, grid.nz - 1);
            sz += 2.0 * (b * b + t * t);
        }
    out.dz = std::sqrt(sz * grid.dx() * grid.dy() / dz);
    return out;
}

H1Parts seminorm_h1_parts(const VectorField& v, const FieldBoundary& bc) {
    const H1Parts a = seminorm_h1_parts(v.u, bc);
    const H1Parts b = seminorm_h1_parts(v.v, bc);
    return {std::hypot(a.grad_h, b.grad_h), std::hypot(a.dz, b.dz)};
}

double norm_grad_h_dz(const ScalarField& f, const FieldBoundary& bc) {
    const GridSpec& grid = f.grid();
    const WField dzf = ddz_interfaces(f, bc);
    // Interior interfaces 1..nz-1 form an (nz-1)-layer field; boundary
    // interfaces are weighted by half a cell.
    GridSpec inner_grid = grid;
    inner_grid.nz = grid.nz + 1;
    ScalarField layers(inner_grid);
    for (int k = 0; k <= grid.nz; ++k)
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) layers(i, j, k) = dzf(i, j, k);
    const Ghosted g(layers, FieldBoundary{bc.side, BoundaryCondition::neumann0(), {}});
    const double dz = grid.dz();
    double s = grad_h_squared(g, 1, grid.nz, dz);
    s += grad_h_squared(g, 0, 1, 0.5 * dz);
    s += grad_h_squared(g, grid.nz, grid.nz + 1, 0.5 * dz);
    return std::sqrt(s);
}

double norm_grad_h_dz(const VectorField& v, const FieldBoundary& bc) {
    return std::hypot(norm_grad_h_dz(v.u, bc), norm_grad_h_dz(v.v, bc));
}

}  // namespace hydrostat

#include "hydrostat/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hydrostat {

GridSpec GridSpec::make(double Lx, double Ly, double h, int nx, int ny, int nz) {
    GridSpec g{Lx, Ly, h, nx, ny, nz};
    g.validate();
    return g;
}

double GridSpec::diameter() const { return std::hypot(Lx, Ly); }

GridSpec GridSpec::surface() const {
    GridSpec s = *this;
    s.nz = 1;
    return s;
}

GridSpec GridSpec::refined() const {
    GridSpec r = *this;
    r.nx *= 2;
    r.ny *= 2;
    r.nz *= 2;
    return r;
}

void GridSpec::validate() const {
    std::ostringstream msg;
    if (!(Lx > 0.0) || !(Ly > 0.0) || !(h > 0.0) || !std::isfinite(Lx) || !std::isfinite(Ly) ||
        !std::isfinite(h)) {
        msg << "grid extents must be positive and finite (Lx=" << Lx << ", Ly=" << Ly << ", h=" << h << ")";
        throw std::invalid_argument(msg.str());
    }
    if (nx < 4 || ny < 4 || nz < 2) {
        msg << "grid resolution too small for the stencils (nx=" << nx << ", ny=" << ny << ", nz=" << nz
            << "; need nx,ny >= 4 and nz >= 2)";
        throw std::invalid_argument(msg.str());
    }
}

double BoundaryCondition::coefficient(double dn) const {
    switch (kind) {
        case BoundaryKind::dirichlet0:
            return -1.0;
        case BoundaryKind::neumann0:
            return 1.0;
        case BoundaryKind::robin:
            return (2.0 - alpha * dn) / (2.0 + alpha * dn);
    }
    return 1.0;
}

}  // namespace hydrostat

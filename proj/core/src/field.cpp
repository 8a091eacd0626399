#include "hydrostat/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hydrostat {

namespace {

void require_same(const GridSpec& a, const GridSpec& b, const char* op) {
    if (!a.same_shape(b)) throw std::invalid_argument(std::string("grid mismatch in ") + op);
}

}  // namespace

ScalarField::ScalarField(const GridSpec& grid, double value) : grid_(grid), data_(grid.cells(), value) {}

void ScalarField::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    require_same(grid_, o.grid_, "ScalarField +=");
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    require_same(grid_, o.grid_, "ScalarField -=");
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
    return *this;
}

ScalarField& ScalarField::operator*=(double a) {
    for (double& x : data_) x *= a;
    return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& o) {
    require_same(grid_, o.grid_, "ScalarField axpy");
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += a * o.data_[n];
    return *this;
}

bool ScalarField::all_finite() const {
    for (double x : data_)
        if (!std::isfinite(x)) return false;
    return true;
}

void ScalarField::require_finite(const char* what) const {
    for (std::size_t n = 0; n < data_.size(); ++n) {
        if (!std::isfinite(data_[n])) {
            const std::size_t plane = static_cast<std::size_t>(grid_.nx) * grid_.ny;
            std::ostringstream msg;
            msg << what << ": non-finite value " << data_[n] << " at (i=" << n % grid_.nx
                << ", j=" << (n % plane) / grid_.nx << ", k=" << n / plane << ")";
            throw std::domain_error(msg.str());
        }
    }
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(ScalarField a, ScalarField b) : u(std::move(a)), v(std::move(b)) {
    require_same(u.grid(), v.grid(), "VectorField");
}

VectorField& VectorField::operator+=(const VectorField& o) {
    u += o.u;
    v += o.v;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    u -= o.u;
    v -= o.v;
    return *this;
}

VectorField& VectorField::operator*=(double a) {
    u *= a;
    v *= a;
    return *this;
}

VectorField& VectorField::axpy(double a, const VectorField& o) {
    u.axpy(a, o.u);
    v.axpy(a, o.v);
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

WField::WField(const GridSpec& grid, double value)
    : grid_(grid), data_(grid.columns() * static_cast<std::size_t>(grid.nz + 1), value) {}

ScalarField broadcast(const ScalarField& surface, const GridSpec& grid) {
    if (surface.nz() != 1 || surface.nx() != grid.nx || surface.ny() != grid.ny)
        throw std::invalid_argument("broadcast: expected a single-layer field matching the grid columns");
    ScalarField out(grid);
    const std::size_t cols = grid.columns();
    for (int k = 0; k < grid.nz; ++k)
        for (std::size_t c = 0; c < cols; ++c) out[c + cols * k] = surface[c];
    return out;
}

VectorField broadcast(const VectorField& surface, const GridSpec& grid) {
    return VectorField(broadcast(surface.u, grid), broadcast(surface.v, grid));
}

ScalarField restrict_to(const ScalarField& fine, const GridSpec& coarse) {
    const GridSpec& g = fine.grid();
    if (g.nx != 2 * coarse.nx || g.ny != 2 * coarse.ny || g.nz != 2 * coarse.nz)
        throw std::invalid_argument("restrict_to: fine grid must be exactly twice the coarse resolution");
    ScalarField out(coarse);
    for (int k = 0; k < coarse.nz; ++k)
        for (int j = 0; j < coarse.ny; ++j)
            for (int i = 0; i < coarse.nx; ++i) {
                double s = 0.0;
                for (int c = 0; c < 8; ++c) s += fine(2 * i + (c & 1), 2 * j + ((c >> 1) & 1), 2 * k + (c >> 2));
                out(i, j, k) = 0.125 * s;
            }
    return out;
}

}  // namespace hydrostat

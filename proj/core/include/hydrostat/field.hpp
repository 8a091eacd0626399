#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hydrostat/grid.hpp"

namespace hydrostat {

/// Cell-centered scalar values, layout (nx, ny, nz), x fastest.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& grid, double value = 0.0);

    const GridSpec& grid() const { return grid_; }
    int nx() const { return grid_.nx; }
    int ny() const { return grid_.ny; }
    int nz() const { return grid_.nz; }
    std::size_t size() const { return data_.size(); }

    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(grid_.nx) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(grid_.ny) * k);
    }
    double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
    double& operator[](std::size_t n) { return data_[n]; }
    double operator[](std::size_t n) const { return data_[n]; }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    void fill(double value);
    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double a);
    /// this += a * o
    ScalarField& axpy(double a, const ScalarField& o);

    bool all_finite() const;
    /// Throws std::domain_error naming the first non-finite entry.
    void require_finite(const char* what) const;

    template <class F>
    static ScalarField sample(const GridSpec& g, F&& fn) {
        ScalarField out(g);
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) out(i, j, k) = fn(g.xc(i), g.yc(j), g.zc(k));
        return out;
    }

private:
    GridSpec grid_{};
    std::vector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Horizontal velocity (or any horizontal vector) at cell centers.
struct VectorField {
    ScalarField u;
    ScalarField v;

    VectorField() = default;
    explicit VectorField(const GridSpec& grid, double value = 0.0) : u(grid, value), v(grid, value) {}
    VectorField(ScalarField a, ScalarField b);

    const GridSpec& grid() const { return u.grid(); }
    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double a);
    VectorField& axpy(double a, const VectorField& o);
    bool all_finite() const { return u.all_finite() && v.all_finite(); }
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Values at vertical interfaces, layout (nx, ny, nz+1). Layer 0 is the
/// bottom interface, layer nz the surface.
class WField {
public:
    WField() = default;
    explicit WField(const GridSpec& grid, double value = 0.0);

    const GridSpec& grid() const { return grid_; }
    int layers() const { return grid_.nz + 1; }
    std::size_t size() const { return data_.size(); }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(grid_.nx) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(grid_.ny) * k);
    }
    double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

private:
    GridSpec grid_{};
    std::vector<double> data_;
};

/// Broadcast a single-layer field over all nz layers of `grid`.
ScalarField broadcast(const ScalarField& surface, const GridSpec& grid);
VectorField broadcast(const VectorField& surface, const GridSpec& grid);

/// Average of each 2x2x2 block of a field on the refined grid.
ScalarField restrict_to(const ScalarField& fine, const GridSpec& coarse);

}  // namespace hydrostat

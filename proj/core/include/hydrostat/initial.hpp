#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hydrostat/field.hpp"
#include "hydrostat/params.hpp"
#include "hydrostat/state.hpp"
#include "hydrostat/stepper.hpp"

namespace hydrostat {

/// mt19937_64 with a bit-exact mapping to [0, 1), identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double symmetric() { return 2.0 * uniform() - 1.0; }

private:
    std::mt19937_64 engine_;
};

enum class ModeBasis {
    sine,    ///< sin(p kx x) sin(q ky y) cos(r m (z+h)); vanishes on the lateral wall
    cosine,  ///< cos(p kx x) cos(q ky y) cos(r m (z+h)); zero normal derivative
};

/// Finite sum of separable modes with kx = pi/Lx, ky = pi/Ly, m = pi/h.
/// Evaluated pointwise, so the same series can be sampled on any grid.
struct ModalSeries {
    struct Mode {
        int p, q, r;
        double coef;
    };
    ModeBasis basis = ModeBasis::cosine;
    double Lx = 1.0, Ly = 1.0, h = 1.0;
    std::vector<Mode> modes;

    double operator()(double x, double y, double z) const;
    ScalarField sample(const GridSpec& g) const;

    /// Coefficients uniform in (-1, 1) scaled by 1/(1 + p^2 + q^2 + r^2) on
    /// the lowest 4 x 4 x 2 modes (p, q >= 1 for sine, >= 0 for cosine).
    static ModalSeries random(const GridSpec& g, ModeBasis basis, Rng& rng);
};

struct InitOptions {
    double amplitude = 1.0;    ///< RMS of v after projection
    double T_amplitude = 1.0;  ///< RMS of T
    bool rough = false;        ///< add grid-scale horizontal noise, smooth in z
    double noise = 0.5;        ///< amplitude of the noise (uniform in (-noise, noise))
};

/// Band-limited random data: v on the sine modes, T on the cosine modes,
/// v projected onto depth-mean divergence-free fields, w rebuilt.
State random_state(const GridSpec& g, std::uint64_t seed, const InitOptions& opt = {});

/// Projects v onto depth-mean divergence-free fields and rebuilds w.
void make_consistent(State& s, double tolerance = 1e-12);

/// Manufactured steady solution on [0,Lx]x[0,Ly]x(-h,0):
///   u = A ky sx^2 sin(2 ky y) + B sx sy cos(m(z+h))
///   v = -A kx sin(2 kx x) sy^2 - B sx sy cos(m(z+h))
///   T = D cx cy cos(m(z+h)) + E cx
/// with sx = sin(kx x), cx = cos(kx x) and likewise in y. The barotropic
/// part comes from a streamfunction, the baroclinic part has zero depth
/// mean, v vanishes on the lateral wall and d_z v on the top and bottom.
struct MmsSolution {
    double A = 0.5, B = 0.3, D = 0.5, E = 0.2;
    double Lx = 1.0, Ly = 1.0, h = 1.0;

    static MmsSolution on(const GridSpec& g);

    struct Point {
        double u, v, T, w;
        double u_x, u_y, u_z, u_lap, u_zz;
        double v_x, v_y, v_z, v_lap, v_zz;
        double T_x, T_y, T_z, T_lap, T_zz;
        double IT, IT_x, IT_y;  ///< int_{-h}^z T and its gradient
    };
    Point at(double x, double y, double z) const;

    /// Residual of the exact fields in the momentum and temperature
    /// equations (so that adding it makes them an exact steady solution).
    double source_u(const Point& s, const PhysParams& p) const;
    double source_v(const Point& s, const PhysParams& p) const;
    double source_T(const Point& s, const PhysParams& p) const;

    State sample(const GridSpec& g) const;
};

/// Source fields of the manufactured solution sampled at cell centers.
Tendency mms_source(const MmsSolution& m, const GridSpec& g, const PhysParams& p);

/// Throws std::invalid_argument if the exact fields violate the lateral,
/// top/bottom or depth-mean conditions by more than `tol` at wall points.
void check_mms_boundary(const MmsSolution& m, const GridSpec& g, const PhysParams& p, double tol = 1e-12);

/// Adds the cached, time-independent manufactured source.
class MmsForcing : public Forcing {
public:
    MmsForcing(const MmsSolution& m, const GridSpec& g, const PhysParams& p);
    void add_tendency(double t, const State& s, const PhysParams& p, Tendency& out) const override;
    const Tendency& source() const { return source_; }

private:
    Tendency source_;
};

}  // namespace hydrostat

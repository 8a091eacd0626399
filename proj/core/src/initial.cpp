#include "hydrostat/initial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <sstream>

#include "hydrostat/dynamics.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/pressure.hpp"

namespace hydrostat {

using std::numbers::pi;

double ModalSeries::operator()(double x, double y, double z) const {
    const double kx = pi / Lx, ky = pi / Ly, m = pi / h;
    double s = 0.0;
    for (const Mode& md : modes) {
        const double zf = std::cos(md.r * m * (z + h));
        if (basis == ModeBasis::sine)
            s += md.coef * std::sin(md.p * kx * x) * std::sin(md.q * ky * y) * zf;
        else
            s += md.coef * std::cos(md.p * kx * x) * std::cos(md.q * ky * y) * zf;
    }
    return s;
}

ScalarField ModalSeries::sample(const GridSpec& g) const {
    return ScalarField::sample(g, [this](double x, double y, double z) { return (*this)(x, y, z); });
}

ModalSeries ModalSeries::random(const GridSpec& g, ModeBasis basis, Rng& rng) {
    ModalSeries s;
    s.basis = basis;
    s.Lx = g.Lx;
    s.Ly = g.Ly;
    s.h = g.h;
    const int first = basis == ModeBasis::sine ? 1 : 0;
    for (int r = 0; r < 2; ++r)
        for (int q = first; q < first + 4; ++q)
            for (int p = first; p < first + 4; ++p) {
                const double c = rng.symmetric() / (1.0 + p * p + q * q + r * r);
                s.modes.push_back({p, q, r, c});
            }
    return s;
}

void make_consistent(State& s, double tolerance) {
    PressureProjector proj(s.grid(), tolerance, 20000);
    proj.project(s.v, 1.0);
    s.w = reconstruct_w(s.v);
    s.ps = ScalarField(s.grid().surface());
}

namespace {

double rms(const ScalarField& f) {
    double sum = 0.0;
    for (double x : f.values()) sum += x * x;
    return std::sqrt(sum / static_cast<double>(f.size()));
}

void add_column_noise(ScalarField& f, Rng& rng, double noise) {
    const GridSpec& g = f.grid();
    const std::size_t cols = g.columns();
    std::vector<double> col(cols);
    for (double& c : col) c = noise * rng.symmetric();
    for (int k = 0; k < g.nz; ++k) {
        const double profile = 1.0 + 0.5 * std::cos(pi * (g.zc(k) + g.h) / g.h);
        for (std::size_t c = 0; c < cols; ++c) f[c + cols * k] += col[c] * profile;
    }
}

}  // namespace

State random_state(const GridSpec& g, std::uint64_t seed, const InitOptions& opt) {
    g.validate();
    Rng rng(seed);
    State s(g);
    s.v.u = ModalSeries::random(g, ModeBasis::sine, rng).sample(g);
    s.v.v = ModalSeries::random(g, ModeBasis::sine, rng).sample(g);
    s.T = ModalSeries::random(g, ModeBasis::cosine, rng).sample(g);

    make_consistent(s);
    const double vr = std::sqrt(0.5 * (rms(s.v.u) * rms(s.v.u) + rms(s.v.v) * rms(s.v.v)));
    if (vr > 0.0) s.v *= opt.amplitude / vr;
    const double tr = rms(s.T);
    if (tr > 0.0) s.T *= opt.T_amplitude / tr;

    if (opt.rough) {
        add_column_noise(s.v.u, rng, opt.noise);
        add_column_noise(s.v.v, rng, opt.noise);
        add_column_noise(s.T, rng, opt.noise);
        make_consistent(s);
    }
    s.w = reconstruct_w(s.v);
    return s;
}

MmsSolution MmsSolution::on(const GridSpec& g) {
    MmsSolution m;
    m.Lx = g.Lx;
    m.Ly = g.Ly;
    m.h = g.h;
    return m;
}

MmsSolution::Point MmsSolution::at(double x, double y, double z) const {
    const double kx = pi / Lx, ky = pi / Ly, m = pi / h;
    const double zeta = z + h;
    const double sx = std::sin(kx * x), cx = std::cos(kx * x);
    const double sy = std::sin(ky * y), cy = std::cos(ky * y);
    const double s2x = std::sin(2 * kx * x), c2x = std::cos(2 * kx * x);
    const double s2y = std::sin(2 * ky * y), c2y = std::cos(2 * ky * y);
    const double Cz = std::cos(m * zeta), Sz = std::sin(m * zeta);
    const double k2 = kx * kx + ky * ky;

    Point p{};
    p.u = A * ky * sx * sx * s2y + B * sx * sy * Cz;
    p.v = -A * kx * s2x * sy * sy - B * sx * sy * Cz;
    p.u_x = A * kx * ky * s2x * s2y + B * kx * cx * sy * Cz;
    p.u_y = 2 * A * ky * ky * sx * sx * c2y + B * ky * sx * cy * Cz;
    p.u_z = -B * m * sx * sy * Sz;
    p.u_lap = 2 * A * kx * kx * ky * c2x * s2y - 4 * A * ky * ky * ky * sx * sx * s2y - B * k2 * sx * sy * Cz;
    p.u_zz = -B * m * m * sx * sy * Cz;
    p.v_x = -2 * A * kx * kx * c2x * sy * sy - B * kx * cx * sy * Cz;
    p.v_y = -A * kx * ky * s2x * s2y - B * ky * sx * cy * Cz;
    p.v_z = B * m * sx * sy * Sz;
    p.v_lap = 4 * A * kx * kx * kx * s2x * sy * sy - 2 * A * kx * ky * ky * s2x * c2y + B * k2 * sx * sy * Cz;
    p.v_zz = B * m * m * sx * sy * Cz;
    p.w = -B * (kx * cx * sy - ky * sx * cy) * Sz / m;
    p.T = D * cx * cy * Cz + E * cx;
    p.T_x = -D * kx * sx * cy * Cz - E * kx * sx;
    p.T_y = -D * ky * cx * sy * Cz;
    p.T_z = -D * m * cx * cy * Sz;
    p.T_lap = -D * k2 * cx * cy * Cz - E * kx * kx * cx;
    p.T_zz = -D * m * m * cx * cy * Cz;
    p.IT = D * cx * cy * Sz / m + E * cx * zeta;
    p.IT_x = -D * kx * sx * cy * Sz / m - E * kx * sx * zeta;
    p.IT_y = -D * ky * cx * sy * Sz / m;
    return p;
}

double MmsSolution::source_u(const Point& s, const PhysParams& p) const {
    return s.u * s.u_x + s.v * s.u_y + s.w * s.u_z - p.f * s.v - s.IT_x - s.u_lap / p.Re1 - s.u_zz / p.Re2;
}

double MmsSolution::source_v(const Point& s, const PhysParams& p) const {
    return s.u * s.v_x + s.v * s.v_y + s.w * s.v_z + p.f * s.u - s.IT_y - s.v_lap / p.Re1 - s.v_zz / p.Re2;
}

double MmsSolution::source_T(const Point& s, const PhysParams& p) const {
    return s.u * s.T_x + s.v * s.T_y + s.w * s.T_z - s.T_lap / p.R_T - p.eps * s.T_zz;
}

State MmsSolution::sample(const GridSpec& g) const {
    State st(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const Point pt = at(g.xc(i), g.yc(j), g.zc(k));
                st.v.u(i, j, k) = pt.u;
                st.v.v(i, j, k) = pt.v;
                st.T(i, j, k) = pt.T;
            }
    st.w = reconstruct_w(st.v);
    return st;
}

Tendency mms_source(const MmsSolution& m, const GridSpec& g, const PhysParams& p) {
    Tendency src{VectorField(g), ScalarField(g)};
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const auto pt = m.at(g.xc(i), g.yc(j), g.zc(k));
                src.dv.u(i, j, k) = m.source_u(pt, p);
                src.dv.v(i, j, k) = m.source_v(pt, p);
                src.dT(i, j, k) = m.source_T(pt, p);
            }
    return src;
}

void check_mms_boundary(const MmsSolution& m, const GridSpec& g, const PhysParams& p, double tol) {
    auto fail = [](const char* what, double x, double y, double z, double value) {
        std::ostringstream msg;
        msg << "manufactured solution violates " << what << " at (" << x << ", " << y << ", " << z
            << "): " << value;
        throw std::invalid_argument(msg.str());
    };
    const double top = 0.0, bottom = -g.h;
    for (int k = 0; k < g.nz; ++k) {
        const double z = g.zc(k);
        for (int j = 0; j < g.ny; ++j)
            for (double x : {0.0, g.Lx}) {
                const auto pt = m.at(x, g.yc(j), z);
                if (std::abs(pt.u) > tol || std::abs(pt.v) > tol) fail("v = 0 on the wall", x, g.yc(j), z, pt.u);
                if (p.alpha_T == 0.0 && std::abs(pt.T_x) > tol) fail("d_n T = 0", x, g.yc(j), z, pt.T_x);
            }
        for (int i = 0; i < g.nx; ++i)
            for (double y : {0.0, g.Ly}) {
                const auto pt = m.at(g.xc(i), y, z);
                if (std::abs(pt.u) > tol || std::abs(pt.v) > tol) fail("v = 0 on the wall", g.xc(i), y, z, pt.v);
                if (p.alpha_T == 0.0 && std::abs(pt.T_y) > tol) fail("d_n T = 0", g.xc(i), y, z, pt.T_y);
            }
    }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            for (double z : {bottom, top}) {
                const auto pt = m.at(g.xc(i), g.yc(j), z);
                if (std::abs(pt.u_z) > tol || std::abs(pt.v_z) > tol)
                    fail("d_z v = 0 on the top and bottom", g.xc(i), g.yc(j), z, pt.u_z);
                // w at the surface is minus the depth-integrated divergence.
                if (std::abs(pt.w) > tol) fail("w = 0 on the top and bottom", g.xc(i), g.yc(j), z, pt.w);
            }
}

MmsForcing::MmsForcing(const MmsSolution& m, const GridSpec& g, const PhysParams& p) {
    check_mms_boundary(m, g, p);
    source_ = mms_source(m, g, p);
}

void MmsForcing::add_tendency(double, const State&, const PhysParams&, Tendency& out) const {
    out.dv += source_.dv;
    out.dT += source_.dT;
}

}  // namespace hydrostat

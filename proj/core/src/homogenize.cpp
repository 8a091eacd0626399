#include "hydrostat/homogenize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hydrostat/dynamics.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"

namespace hydrostat {

namespace {

double max_abs(std::span<const double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

// Derivative at x of the quadratic through (a, fa), (b, fb), (c, fc).
template <class T>
T lagrange_derivative(double x, double a, double b, double c, const T& fa, const T& fb, const T& fc) {
    const double wa = ((x - b) + (x - c)) / ((a - b) * (a - c));
    const double wb = ((x - a) + (x - c)) / ((b - a) * (b - c));
    const double wc = ((x - a) + (x - b)) / ((c - a) * (c - b));
    T out = wa * fa;
    out.axpy(wb, fb);
    out.axpy(wc, fc);
    return out;
}

template <class T>
T lerp(const T& a, const T& b, double w) {
    T out = (1.0 - w) * a;
    out.axpy(w, b);
    return out;
}

}  // namespace

BoundaryForcing::BoundaryForcing(const GridSpec& grid, double alpha_v, double alpha_T)
    : grid_(grid), alpha_v_(alpha_v), alpha_T_(alpha_T) {
    grid_.validate();
    if (!(alpha_v >= 0.0) || !(alpha_T >= 0.0))
        throw std::invalid_argument("boundary forcing coefficients must be non-negative");
}

void BoundaryForcing::add_sample(double t, VectorField tau, ScalarField Ts) {
    if (!std::isfinite(t)) throw std::invalid_argument("forcing sample time is not finite");
    if (!times_.empty() && !(t > times_.back()))
        throw std::invalid_argument("forcing samples must have strictly increasing times");
    if (!tau.grid().same_shape(grid_.surface())) throw std::invalid_argument("tau sample must be a single layer");
    if (!Ts.grid().same_shape(grid_)) throw std::invalid_argument("Ts sample does not match the grid");
    tau.u.require_finite("tau sample");
    tau.v.require_finite("tau sample");
    Ts.require_finite("Ts sample");
    times_.push_back(t);
    tau_.push_back(std::move(tau));
    Ts_.push_back(std::move(Ts));
}

BoundaryForcing BoundaryForcing::zero(const GridSpec& grid, double alpha_v, double alpha_T, double t_end) {
    BoundaryForcing f(grid, alpha_v, alpha_T);
    for (int n = 0; n < 3; ++n) f.add_sample(0.5 * n * t_end, VectorField(grid.surface()), ScalarField(grid));
    return f;
}

double BoundaryForcing::t_begin() const {
    if (times_.empty()) throw std::logic_error("boundary forcing has no samples");
    return times_.front();
}

double BoundaryForcing::t_end() const {
    if (times_.empty()) throw std::logic_error("boundary forcing has no samples");
    return times_.back();
}

void BoundaryForcing::check_compatibility(double rel_tol) const {
    const GridSpec& g = grid_;
    for (std::size_t n = 0; n < times_.size(); ++n) {
        if (alpha_v_ > 0.0) {
            for (const ScalarField* c : {&tau_[n].u, &tau_[n].v}) {
                const ScalarField& f = *c;
                const double scale = max_abs(f.values());
                double wall = 0.0;
                for (int j = 0; j < g.ny; ++j) {
                    wall = std::max(wall, std::abs(1.5 * f(0, j, 0) - 0.5 * f(1, j, 0)));
                    wall = std::max(wall, std::abs(1.5 * f(g.nx - 1, j, 0) - 0.5 * f(g.nx - 2, j, 0)));
                }
                for (int i = 0; i < g.nx; ++i) {
                    wall = std::max(wall, std::abs(1.5 * f(i, 0, 0) - 0.5 * f(i, 1, 0)));
                    wall = std::max(wall, std::abs(1.5 * f(i, g.ny - 1, 0) - 0.5 * f(i, g.ny - 2, 0)));
                }
                if (wall > rel_tol * scale) {
                    std::ostringstream msg;
                    msg << "tau=0 on Gamma_s is required if alpha_v>0 (sample t=" << times_[n]
                        << ", wall value " << wall << ")";
                    throw std::invalid_argument(msg.str());
                }
            }
        }
        if (alpha_T_ > 0.0) {
            const ScalarField& f = Ts_[n];
            const double scale = max_abs(f.values()) / g.h;
            const double dz = g.dz();
            const int nz = g.nz;
            double worst = 0.0;
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const bool wall = i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1;
                    if (!wall) continue;
                    double bottom, top;
                    if (nz >= 3) {
                        bottom = (-2.0 * f(i, j, 0) + 3.0 * f(i, j, 1) - f(i, j, 2)) / dz;
                        top = (2.0 * f(i, j, nz - 1) - 3.0 * f(i, j, nz - 2) + f(i, j, nz - 3)) / dz;
                    } else {
                        bottom = top = (f(i, j, 1) - f(i, j, 0)) / dz;
                    }
                    worst = std::max({worst, std::abs(bottom), std::abs(top)});
                }
            if (worst > rel_tol * scale) {
                std::ostringstream msg;
                msg << "d_z Ts = 0 on the top and bottom edges of Gamma_s is required if alpha_T>0 (sample t="
                    << times_[n] << ", |d_z Ts| " << worst << ")";
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

void BoundaryForcing::locate(double t, std::size_t& n, double& w) const {
    if (times_.size() < 3) throw std::logic_error("boundary forcing needs at least three time samples");
    const double span = times_.back() - times_.front();
    const double slack = 1e-12 * std::max(span, 1.0);
    if (t < times_.front() - slack || t > times_.back() + slack) {
        std::ostringstream msg;
        msg << "forcing requested at t=" << t << " outside the sampled interval [" << times_.front() << ", "
            << times_.back() << "]";
        throw std::out_of_range(msg.str());
    }
    t = std::clamp(t, times_.front(), times_.back());
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    n = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
    n = std::min(n, times_.size() - 2);
    w = (t - times_[n]) / (times_[n + 1] - times_[n]);
}

VectorField BoundaryForcing::tau(double t) const {
    std::size_t n;
    double w;
    locate(t, n, w);
    return lerp(tau_[n], tau_[n + 1], w);
}

ScalarField BoundaryForcing::Ts(double t) const {
    std::size_t n;
    double w;
    locate(t, n, w);
    return lerp(Ts_[n], Ts_[n + 1], w);
}

VectorField BoundaryForcing::dtau_dt(double t) const {
    std::size_t n;
    double w;
    locate(t, n, w);
    const std::size_t last = times_.size() - 1;
    auto node = [&](std::size_t m) {
        const std::size_t a = m == 0 ? 0 : (m == last ? last - 2 : m - 1);
        return lagrange_derivative(times_[m], times_[a], times_[a + 1], times_[a + 2], tau_[a], tau_[a + 1],
                                   tau_[a + 2]);
    };
    return lerp(node(n), node(n + 1), w);
}

GhostOffsets robin_offsets(const ScalarField& Ts, double alpha_T) {
    GhostOffsets off;
    if (alpha_T == 0.0) return off;
    const GridSpec& g = Ts.grid();
    const double cx = 2.0 * alpha_T * g.dx() / (2.0 + alpha_T * g.dx());
    const double cy = 2.0 * alpha_T * g.dy() / (2.0 + alpha_T * g.dy());
    off.west.assign(static_cast<std::size_t>(g.ny) * g.nz, 0.0);
    off.east = off.west;
    off.south.assign(static_cast<std::size_t>(g.nx) * g.nz, 0.0);
    off.north = off.south;
    for (int k = 0; k < g.nz; ++k) {
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t n = static_cast<std::size_t>(j) + static_cast<std::size_t>(g.ny) * k;
            off.west[n] = cx * (1.5 * Ts(0, j, k) - 0.5 * Ts(1, j, k));
            off.east[n] = cx * (1.5 * Ts(g.nx - 1, j, k) - 0.5 * Ts(g.nx - 2, j, k));
        }
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t n = static_cast<std::size_t>(i) + static_cast<std::size_t>(g.nx) * k;
            off.south[n] = cy * (1.5 * Ts(i, 0, k) - 0.5 * Ts(i, 1, k));
            off.north[n] = cy * (1.5 * Ts(i, g.ny - 1, k) - 0.5 * Ts(i, g.ny - 2, k));
        }
    }
    return off;
}

FieldBoundary temperature_boundary(const ScalarField& Ts, double alpha_T) {
    FieldBoundary bc = FieldBoundary::temperature(alpha_T);
    bc.offsets = robin_offsets(Ts, alpha_T);
    return bc;
}

LiftProfile::LiftProfile(const GridSpec& g) {
    const double dz = g.dz(), h = g.h;
    P.resize(g.nz);
    Q.resize(g.nz);
    zh.resize(g.nz);
    for (int k = 0; k < g.nz; ++k) {
        const double a = k * dz, b = (k + 1) * dz;
        P[k] = (b * b * b - a * a * a) / (6.0 * dz) - h * h / 6.0;
        const double s = (k + 0.5) * dz;
        zh[k] = s;
        Q[k] = s * s * s - h * h * s;
    }
}

namespace {

VectorField add_lift(const VectorField& v, const VectorField& tau, double scale) {
    const GridSpec& g = v.grid();
    if (!tau.grid().same_shape(g.surface())) throw std::invalid_argument("lift: tau must be a single layer");
    if (scale == 0.0) return v;
    const LiftProfile prof(g);
    const double s = scale / g.h;
    VectorField out = v;
    const std::size_t cols = g.columns();
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t c = 0; c < cols; ++c) {
            out.u[c + cols * k] += s * prof.P[k] * tau.u[c];
            out.v[c + cols * k] += s * prof.P[k] * tau.v[c];
        }
    return out;
}

}  // namespace

VectorField lift(const VectorField& v, const VectorField& tau, double alpha_v) { return add_lift(v, tau, alpha_v); }

VectorField unlift(const VectorField& V, const VectorField& tau, double alpha_v) {
    return add_lift(V, tau, -alpha_v);
}

TstarIntegrator::TstarIntegrator(const BoundaryForcing& forcing, double dt, double tolerance, int max_iterations)
    : forcing_(&forcing), dt_(dt), tol_(tolerance), max_iter_(max_iterations) {
    if (!(dt > 0.0)) throw std::invalid_argument("T* step must be positive");
    window_.emplace_back(forcing.grid());
}

void TstarIntegrator::release_before(double t) {
    const double pos = (t - forcing_->t_begin()) / dt_;
    if (!(pos > 2.0)) return;
    const std::size_t keep = static_cast<std::size_t>(std::floor(pos)) - 2;
    while (first_ < keep && window_.size() > 1) {
        window_.pop_front();
        ++first_;
    }
}

void TstarIntegrator::advance_to_index(std::size_t n) {
    const GridSpec& g = forcing_->grid();
    const double alpha = forcing_->alpha_T();
    while (first_ + window_.size() - 1 < n) {
        const std::size_t next = first_ + window_.size();
        const ScalarField& prev = window_.back();
        ++step_count_;
        if (alpha == 0.0) {
            window_.emplace_back(g);
            continue;
        }
        const double t_new = forcing_->t_begin() + static_cast<double>(next) * dt_;
        const FieldBoundary data_bc = temperature_boundary(forcing_->Ts(t_new), alpha);
        const FieldBoundary hom = FieldBoundary::temperature(alpha);

        // (I - dt lap) x = prev + dt * (boundary data contribution)
        ScalarField rhs = prev;
        rhs.axpy(dt_, laplacian_h(ScalarField(g), data_bc));

        auto apply = [&](const ScalarField& x) {
            ScalarField ax = x;
            ax.axpy(-dt_, laplacian_h(x, hom));
            ax.axpy(-dt_, d2z(x, hom));
            return ax;
        };
        const double cx = hom.side.coefficient(g.dx()), cy = hom.side.coefficient(g.dy());
        ScalarField diag(g);
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    double d = 2.0 / (g.dx() * g.dx()) + 2.0 / (g.dy() * g.dy()) + 2.0 / (g.dz() * g.dz());
                    if (i == 0) d -= cx / (g.dx() * g.dx());
                    if (i == g.nx - 1) d -= cx / (g.dx() * g.dx());
                    if (j == 0) d -= cy / (g.dy() * g.dy());
                    if (j == g.ny - 1) d -= cy / (g.dy() * g.dy());
                    if (k == 0) d -= 1.0 / (g.dz() * g.dz());
                    if (k == g.nz - 1) d -= 1.0 / (g.dz() * g.dz());
                    diag(i, j, k) = 1.0 + dt_ * d;
                }

        ScalarField x = prev;
        ScalarField r = rhs;
        r -= apply(x);
        const double bnorm = std::max(norm_l2(rhs), 1e-300);
        ScalarField z(g), p(g);
        for (std::size_t m = 0; m < z.size(); ++m) z[m] = r[m] / diag[m];
        p = z;
        double rz = inner(r, z);
        int it = 0;
        while (norm_l2(r) > tol_ * bnorm) {
            if (++it > max_iter_) throw NumericalFailure("T* solve did not converge");
            const ScalarField ap = apply(p);
            const double alpha_cg = rz / inner(p, ap);
            x.axpy(alpha_cg, p);
            r.axpy(-alpha_cg, ap);
            for (std::size_t m = 0; m < z.size(); ++m) z[m] = r[m] / diag[m];
            const double rz_new = inner(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            p *= beta;
            p += z;
        }
        window_.push_back(std::move(x));
    }
}

const ScalarField& TstarIntegrator::sample(std::size_t n) {
    if (n < first_) throw std::logic_error("T* sample requested after it was released");
    advance_to_index(n);
    return window_[n - first_];
}

ScalarField TstarIntegrator::node_rate(std::size_t n) {
    if (n == 0) {
        ScalarField out = (-3.0 / (2.0 * dt_)) * sample(0);
        out.axpy(4.0 / (2.0 * dt_), sample(1));
        out.axpy(-1.0 / (2.0 * dt_), sample(2));
        return out;
    }
    ScalarField out = (1.0 / (2.0 * dt_)) * sample(n + 1);
    out.axpy(-1.0 / (2.0 * dt_), sample(n - 1));
    return out;
}

ScalarField TstarIntegrator::value(double t) {
    const double pos = (t - forcing_->t_begin()) / dt_;
    if (pos < -1e-9) throw std::out_of_range("T* requested before the start of the forcing");
    const double fl = std::floor(std::max(pos, 0.0));
    const std::size_t n = static_cast<std::size_t>(fl);
    const double w = std::max(pos, 0.0) - fl;
    if (w == 0.0) return sample(n);
    return lerp(sample(n), sample(n + 1), w);
}

ScalarField TstarIntegrator::rate(double t) {
    const double pos = (t - forcing_->t_begin()) / dt_;
    if (pos < -1e-9) throw std::out_of_range("T* rate requested before the start of the forcing");
    const double fl = std::floor(std::max(pos, 0.0));
    const std::size_t n = static_cast<std::size_t>(fl);
    const double w = std::max(pos, 0.0) - fl;
    if (w == 0.0) return node_rate(n);
    return lerp(node_rate(n), node_rate(n + 1), w);
}

std::vector<ScalarField> solve_Tstar(const BoundaryForcing& forcing, const std::vector<double>& times, double dt) {
    forcing.check_compatibility();
    TstarIntegrator integ(forcing, dt);
    std::vector<ScalarField> out;
    out.reserve(times.size());
    double last = -std::numeric_limits<double>::infinity();
    for (double t : times) {
        if (t < last) throw std::invalid_argument("solve_Tstar: times must be non-decreasing");
        last = t;
        out.push_back(integ.value(t));
        integ.release_before(t);
    }
    return out;
}

CorrectionTerms correction_terms(const VectorField& V, const ScalarField& Tcal, const CorrectionInputs& in,
                                 const PhysParams& p) {
    const GridSpec& g = V.grid();
    if (!Tcal.grid().same_shape(g) || !in.Tstar.grid().same_shape(g) || !in.dTstar_dt.grid().same_shape(g) ||
        !in.Ts.grid().same_shape(g))
        throw std::invalid_argument("correction_terms: fields live on different grids");
    if (!in.tau.grid().same_shape(g.surface()) || !in.dtau_dt.grid().same_shape(g.surface()))
        throw std::invalid_argument("correction_terms: tau must be a single layer");

    const LiftProfile prof(g);
    const double s = p.alpha_v / g.h;
    const FieldBoundary vbc = FieldBoundary::velocity();
    const FieldBoundary Tbc = FieldBoundary::temperature(p.alpha_T);
    const FieldBoundary Tsbc = temperature_boundary(in.Ts, p.alpha_T);

    const ScalarField& tu = in.tau.u;
    const ScalarField& tv = in.tau.v;
    const ScalarField tu_x = ddx(tu, vbc), tu_y = ddy(tu, vbc);
    const ScalarField tv_x = ddx(tv, vbc), tv_y = ddy(tv, vbc);
    const ScalarField lap_tu = laplacian_h(tu, vbc), lap_tv = laplacian_h(tv, vbc);

    const ScalarField int_div = hydrostatic_integral(divergence_h(V, vbc));
    const ScalarField Vu_x = ddx(V.u, vbc), Vu_y = ddy(V.u, vbc);
    const ScalarField Vv_x = ddx(V.v, vbc), Vv_y = ddy(V.v, vbc);
    const ScalarField Vu_z = ddz(V.u, vbc), Vv_z = ddz(V.v, vbc);

    const ScalarField Tc_x = ddx(Tcal, Tbc), Tc_y = ddy(Tcal, Tbc), Tc_z = ddz(Tcal, Tbc);
    const ScalarField& Ts_ = in.Tstar;
    const ScalarField S_x = ddx(Ts_, Tsbc), S_y = ddy(Ts_, Tsbc), S_z = ddz(Ts_, Tsbc);
    const ScalarField S_lap = laplacian_h(Ts_, Tsbc), S_zz = d2z(Ts_, Tsbc);
    VectorField grad_int_S = baroclinic_grad(Ts_, Tsbc);
    grad_int_S *= -1.0;

    CorrectionTerms out{VectorField(g), ScalarField(g), VectorField(g), ScalarField(g)};
    const std::size_t cols = g.columns();
    for (int k = 0; k < g.nz; ++k) {
        const double P = prof.P[k], Q = prof.Q[k], zh = prof.zh[k];
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t n = c + cols * k;
            const double div_tau = tu_x[c] + tv_y[c];
            const double Vu = V.u[n], Vv = V.v[n];

            // a_tau(V)
            const double V_grad_tau_u = Vu * tu_x[c] + Vv * tu_y[c];
            const double V_grad_tau_v = Vu * tv_x[c] + Vv * tv_y[c];
            const double tau_grad_V_u = tu[c] * Vu_x[n] + tv[c] * Vu_y[n];
            const double tau_grad_V_v = tu[c] * Vv_x[n] + tv[c] * Vv_y[n];
            out.a_tau.u[n] = -s * P * (V_grad_tau_u + tau_grad_V_u) + (s / 6.0) * Q * div_tau * Vu_z[n] +
                             int_div[n] * s * zh * tu[c];
            out.a_tau.v[n] = -s * P * (V_grad_tau_v + tau_grad_V_v) + (s / 6.0) * Q * div_tau * Vv_z[n] +
                             int_div[n] * s * zh * tv[c];

            // b(V, Tcal)
            out.b[n] = -int_div[n] * S_z[n] - s * P * (tu[c] * Tc_x[n] + tv[c] * Tc_y[n]) +
                       (s / 6.0) * Q * div_tau * Tc_z[n] + Vu * S_x[n] + Vv * S_y[n];

            // F_tau
            const double tau_grad_tau_u = tu[c] * tu_x[c] + tv[c] * tu_y[c];
            const double tau_grad_tau_v = tu[c] * tv_x[c] + tv[c] * tv_y[c];
            out.F_tau.u[n] = s * P * (-p.f * tv[c] + in.dtau_dt.u[c]) - s * s * P * P * tau_grad_tau_u -
                             (s / p.Re1) * P * lap_tu[c] - s * tu[c] / p.Re2 + grad_int_S.u[n] +
                             (s * s / 6.0) * Q * zh * div_tau * tu[c];
            out.F_tau.v[n] = s * P * (p.f * tu[c] + in.dtau_dt.v[c]) - s * s * P * P * tau_grad_tau_v -
                             (s / p.Re1) * P * lap_tv[c] - s * tv[c] / p.Re2 + grad_int_S.v[n] +
                             (s * s / 6.0) * Q * zh * div_tau * tv[c];

            // G_tau
            out.G_tau[n] = s * P * (tu[c] * S_x[n] + tv[c] * S_y[n]) - (s / 6.0) * Q * div_tau * S_z[n] -
                           in.dTstar_dt[n] + S_lap[n] / p.R_T + p.eps * S_zz[n];
        }
    }
    return out;
}

Boundaries DirectForcing::boundaries(double t, const PhysParams& p) const {
    Boundaries b = Boundaries::homogeneous(p);
    if (p.alpha_T > 0.0) b.temperature = temperature_boundary(data_->Ts(t), p.alpha_T);
    return b;
}

std::optional<VectorField> DirectForcing::surface_velocity_flux(double t) const {
    if (data_->alpha_v() == 0.0) return std::nullopt;
    VectorField flux = data_->tau(t);
    flux *= -data_->alpha_v();
    return flux;
}

HomogenizedForcing::HomogenizedForcing(const BoundaryForcing& data, double tstar_dt)
    : data_(&data), tstar_(data, tstar_dt) {}

CorrectionInputs HomogenizedForcing::inputs(double t) const {
    CorrectionInputs in{data_->tau(t), data_->dtau_dt(t), tstar_.value(t), tstar_.rate(t), data_->Ts(t)};
    tstar_.release_before(t);
    return in;
}

void HomogenizedForcing::add_tendency(double t, const State& s, const PhysParams& p, Tendency& out) const {
    const CorrectionTerms c = correction_terms(s.v, s.T, inputs(t), p);
    out.dv += c.F_tau;
    out.dv -= c.a_tau;
    out.dT += c.G_tau;
    out.dT -= c.b;
}

namespace {

void run_branch(Stepper& stepper, State& s, const Forcing& forcing, double dt, double t_end, int& steps) {
    const double span = t_end - s.t;
    if (!(span > 0.0)) return;
    const int count = static_cast<int>(std::ceil(span / dt - 1e-9));
    const double h = span / count;
    const double t0 = s.t;
    for (int n = 1; n <= count; ++n) {
        stepper.step(s, &forcing, h);
        ++steps;
        if (std::abs(s.t - (t0 + n * h)) > 1e-9 * h)
            throw NumericalFailure("step size was reduced during a fixed-step comparison run");
        s.t = t0 + n * h;
    }
}

double relative(double diff, double ref) { return ref > 0.0 ? diff / ref : diff; }

}  // namespace

EquivalenceReport equivalence_run(const State& initial, const PhysParams& p, const StepConfig& c,
                                  const BoundaryForcing& data, double dt, double t_end, int threads) {
    if (!(dt > 0.0)) throw std::invalid_argument("equivalence_run: dt must be positive");
    if (data.alpha_v() != p.alpha_v || data.alpha_T() != p.alpha_T)
        throw std::invalid_argument("equivalence_run: forcing coefficients differ from the physics block");
    data.check_compatibility();
    if (data.t_begin() > initial.t || data.t_end() < t_end + 3.0 * dt)
        throw std::invalid_argument("equivalence_run: forcing samples must cover [t0, t_end + 3 dt]");

    const GridSpec& g = initial.grid();
    EquivalenceReport rep;
    rep.t_end = t_end;

    const DirectForcing direct(data);
    const HomogenizedForcing homog(data, dt);

    State a = initial;
    State b = initial;
    b.v = lift(initial.v, data.tau(initial.t), p.alpha_v);
    b.T -= homog.tstar().value(initial.t);

    std::string err_a, err_b;
    int steps_a = 0, steps_b = 0;
    auto branch_a = [&] {
        try {
            Stepper st(g, p, c);
            st.prepare(a);
            run_branch(st, a, direct, dt, t_end, steps_a);
        } catch (const std::exception& e) {
            err_a = e.what();
        }
    };
    auto branch_b = [&] {
        try {
            Stepper st(g, p, c);
            st.prepare(b);
            run_branch(st, b, homog, dt, t_end, steps_b);
        } catch (const std::exception& e) {
            err_b = e.what();
        }
    };
    if (threads > 1) {
        std::thread worker(branch_a);
        branch_b();
        worker.join();
    } else {
        branch_a();
        branch_b();
    }
    rep.steps = steps_a;
    if (!err_a.empty() || !err_b.empty()) {
        rep.failed = true;
        rep.failing_branch = !err_a.empty() ? "direct" : "homogenized";
        rep.message = !err_a.empty() ? err_a : err_b;
        return rep;
    }

    State mapped = b;
    mapped.v = unlift(b.v, data.tau(b.t), p.alpha_v);
    mapped.T += homog.tstar().value(b.t);
    rep.dv_rel = relative(norm_l2(mapped.v - a.v), norm_l2(a.v));
    rep.dT_rel = relative(norm_l2(mapped.T - a.T), norm_l2(a.T));
    rep.direct = std::move(a);
    rep.homogenized = std::move(mapped);
    return rep;
}

}  // namespace hydrostat

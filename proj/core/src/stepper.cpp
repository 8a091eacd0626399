#include "hydrostat/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hydrostat/norms.hpp"

namespace hydrostat {

void StepConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("step.") + what);
    };
    require(cfl_adv > 0.0 && cfl_adv <= 1.0, "cfl_adv must lie in (0, 1]");
    require(cfl_diff > 0.0 && cfl_diff <= 0.5, "cfl_diff must lie in (0, 0.5]");
    require(dt_min > 0.0 && dt_max > 0.0, "dt_min and dt_max must be positive");
    require(dt_min <= dt_max, "dt_min must not exceed dt_max");
    require(t_end > 0.0, "t_end must be positive");
    require(projection_tol > 0.0, "projection_tol must be positive");
    require(max_poisson_iterations > 0, "max_poisson_iterations must be positive");
}

Boundaries Forcing::boundaries(double, const PhysParams& p) const { return Boundaries::homogeneous(p); }

std::optional<VectorField> Forcing::surface_velocity_flux(double) const { return std::nullopt; }

void Forcing::add_tendency(double, const State&, const PhysParams&, Tendency&) const {}

void solve_vertical_diffusion(ScalarField& q, double kappa, double dt, const ScalarField* surface_flux) {
    if (kappa == 0.0) return;
    const GridSpec& g = q.grid();
    const int nz = g.nz;
    const double dz = g.dz();
    const double r = dt * kappa / (dz * dz);
    const std::size_t cols = g.columns();
    std::vector<double> cprime(nz), rhs(nz);
    for (std::size_t c = 0; c < cols; ++c) {
        for (int k = 0; k < nz; ++k) rhs[k] = q[c + cols * k];
        if (surface_flux) rhs[nz - 1] += dt * kappa * (*surface_flux)[c] / dz;
        // Thomas sweep; sub/super diagonals are -r, the end rows lose one r.
        double diag = 1.0 + r;
        cprime[0] = -r / diag;
        rhs[0] /= diag;
        for (int k = 1; k < nz; ++k) {
            diag = (k == nz - 1 ? 1.0 + r : 1.0 + 2.0 * r) + r * cprime[k - 1];
            cprime[k] = -r / diag;
            rhs[k] = (rhs[k] + r * rhs[k - 1]) / diag;
        }
        for (int k = nz - 2; k >= 0; --k) rhs[k] -= cprime[k] * rhs[k + 1];
        for (int k = 0; k < nz; ++k) q[c + cols * k] = rhs[k];
    }
}

namespace {

double linf(const std::span<const double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

constexpr double kFloor = 1e-30;

}  // namespace

std::pair<double, double> courant_numbers(const State& s, const PhysParams& p, double dt) {
    const GridSpec& g = s.grid();
    const double um = std::max(linf(s.v.u.values()), kFloor);
    const double vm = std::max(linf(s.v.v.values()), kFloor);
    const double wm = std::max(linf(s.w.values()), kFloor);
    const double adv = dt * std::max({um / g.dx(), vm / g.dy(), wm / g.dz()});
    const double diff = dt / (std::min(g.dx() * g.dx(), g.dy() * g.dy()) * std::min(p.Re1, p.R_T));
    return {adv, diff};
}

double cfl_dt(const State& s, const PhysParams& p, const StepConfig& c) {
    const GridSpec& g = s.grid();
    const double um = std::max(linf(s.v.u.values()), kFloor);
    const double vm = std::max(linf(s.v.v.values()), kFloor);
    const double wm = std::max(linf(s.w.values()), kFloor);
    double dt = c.dt_max;
    dt = std::min(dt, c.cfl_adv * std::min({g.dx() / um, g.dy() / vm, g.dz() / wm}));
    dt = std::min(dt, c.cfl_diff * std::min(g.dx() * g.dx(), g.dy() * g.dy()) * std::min(p.Re1, p.R_T));
    if (p.f != 0.0) dt = std::min(dt, 0.5 / std::abs(p.f));
    return dt;
}

Stepper::Stepper(const GridSpec& grid, PhysParams params, StepConfig config)
    : params_(params), config_(config), projector_(grid, config.projection_tol, config.max_poisson_iterations) {
    params_.validate();
    config_.validate();
}

void Stepper::prepare(State& s) {
    if (config_.frozen_velocity) {
        s.w = reconstruct_w(s.v);
        return;
    }
    // dt only scales phi; the corrected velocity does not depend on it.
    projector_.project(s.v, 1.0);
    s.w = reconstruct_w(s.v);
    s.ps = ScalarField(s.grid().surface());
}

void Stepper::implicit_and_project(State& s, double dt, double t_new, const Forcing& forcing, PoissonSolve* rep) {
    if (config_.frozen_velocity) {
        solve_vertical_diffusion(s.T, params_.eps, dt);
        s.t = t_new;
        return;
    }
    const auto flux = forcing.surface_velocity_flux(t_new);
    if (flux) {
        solve_vertical_diffusion(s.v.u, 1.0 / params_.Re2, dt, &flux->u);
        solve_vertical_diffusion(s.v.v, 1.0 / params_.Re2, dt, &flux->v);
    } else {
        solve_vertical_diffusion(s.v.u, 1.0 / params_.Re2, dt);
        solve_vertical_diffusion(s.v.v, 1.0 / params_.Re2, dt);
    }
    solve_vertical_diffusion(s.T, params_.eps, dt);
    auto res = projector_.project(s.v, dt);
    s.ps = std::move(res.phi);
    if (rep) *rep = res.report;
    s.w = reconstruct_w(s.v);
    s.t = t_new;
}

bool Stepper::try_step(const State& s, State& out, double dt, const Forcing& forcing, StepReport& rep) {
    const double t0 = s.t;
    const double t1 = t0 + dt;

    const auto [adv0, diff0] = courant_numbers(s, params_, dt);
    rep.cfl_advective = adv0;
    rep.cfl_diffusive = diff0;
    const double slack = 1.0 + 1e-12;
    if (adv0 > config_.cfl_adv * slack || diff0 > config_.cfl_diff * slack) return false;
    if (params_.f != 0.0 && std::abs(params_.f) * dt > 0.5 * slack) return false;

    Tendency k0 = explicit_tendency(s, params_, forcing.boundaries(t0, params_));
    forcing.add_tendency(t0, s, params_, k0);
    if (config_.frozen_velocity) k0.dv *= 0.0;

    State stage = s;
    stage.v.axpy(dt, k0.dv);
    stage.T.axpy(dt, k0.dT);
    implicit_and_project(stage, dt, t1, forcing, nullptr);
    if (!stage.all_finite()) throw NumericalFailure("non-finite values after the predictor stage");

    const double adv1 = courant_numbers(stage, params_, dt).first;
    rep.cfl_advective = std::max(adv0, adv1);
    if (adv1 > config_.cfl_adv * slack) return false;

    Tendency k1 = explicit_tendency(stage, params_, forcing.boundaries(t1, params_));
    forcing.add_tendency(t1, stage, params_, k1);
    if (config_.frozen_velocity) k1.dv *= 0.0;

    out = s;
    out.v.axpy(0.5 * dt, k0.dv);
    out.v.axpy(0.5 * dt, k1.dv);
    out.T.axpy(0.5 * dt, k0.dT);
    out.T.axpy(0.5 * dt, k1.dT);
    implicit_and_project(out, dt, t1, forcing, &rep.poisson);
    if (!out.all_finite()) throw NumericalFailure("non-finite values after the corrector stage");
    return true;
}

StepReport Stepper::step(State& s, const Forcing* forcing, std::optional<double> dt_request) {
    static const Forcing none;
    const Forcing& f = forcing ? *forcing : none;
    StepReport rep;
    double dt = dt_request ? *dt_request : cfl_dt(s, params_, config_);
    State next;
    for (;;) {
        if (!(dt >= config_.dt_min)) {
            std::ostringstream msg;
            msg << "time step fell below dt_min (" << config_.dt_min << ") at t=" << s.t;
            throw NumericalFailure(msg.str());
        }
        bool ok = false;
        try {
            ok = try_step(s, next, dt, f, rep);
        } catch (const ProjectionFailure& e) {
            throw NumericalFailure(e.what());
        } catch (const std::domain_error& e) {
            throw NumericalFailure(e.what());
        }
        if (ok) break;
        dt *= 0.5;
        ++rep.rejections;
        rep.rejected = true;
    }
    rep.dt = dt;
    s = std::move(next);
    return rep;
}

}  // namespace hydrostat

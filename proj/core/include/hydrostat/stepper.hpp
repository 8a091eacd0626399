#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydrostat/dynamics.hpp"
#include "hydrostat/pressure.hpp"
#include "hydrostat/state.hpp"

namespace hydrostat {

struct StepConfig {
    double cfl_adv = 0.5;
    double cfl_diff = 0.25;
    double dt_max = 1e-2;
    double dt_min = 1e-9;
    double t_end = 1.0;
    double projection_tol = 1e-10;
    int max_poisson_iterations = 5000;
    /// Keep v (and w) fixed; only T evolves.
    bool frozen_velocity = false;

    void validate() const;
};

struct StepReport {
    double dt = 0.0;
    double cfl_advective = 0.0;
    double cfl_diffusive = 0.0;
    PoissonSolve poisson;
    int rejections = 0;  ///< halvings before acceptance
    bool rejected = false;
};

/// Hard failure of the integrator (NaN, dt below dt_min, Poisson failure).
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Boundary data and extra source terms acting on a run. The default is the
/// homogeneous problem.
class Forcing {
public:
    virtual ~Forcing() = default;
    /// Ghost rules (possibly inhomogeneous) at time t.
    virtual Boundaries boundaries(double t, const PhysParams& p) const;
    /// d_z v on the surface at time t, one value per column and component.
    virtual std::optional<VectorField> surface_velocity_flux(double t) const;
    /// Adds explicit source terms at time t for the given state.
    virtual void add_tendency(double t, const State& s, const PhysParams& p, Tendency& out) const;
};

/// Implicit Euler for d_t q = kappa d_z^2 q in every column,
/// (I - dt kappa D_zz) q_new = q, with zero-flux bottom and the given
/// surface flux d_z q (empty: zero flux). Single-layer `surface_flux`.
void solve_vertical_diffusion(ScalarField& q, double kappa, double dt, const ScalarField* surface_flux = nullptr);

/// Largest admissible step for the state.
double cfl_dt(const State& s, const PhysParams& p, const StepConfig& c);

/// Advective and diffusive Courant numbers of a step of size dt.
std::pair<double, double> courant_numbers(const State& s, const PhysParams& p, double dt);

/// Two-stage Heun on the explicit terms, implicit Euler vertical diffusion
/// and surface-pressure projection after each stage.
class Stepper {
public:
    Stepper(const GridSpec& grid, PhysParams params, StepConfig config);

    /// Advances `s` by one accepted step. `dt` overrides the CFL choice
    /// (still halved on violation). Throws NumericalFailure.
    StepReport step(State& s, const Forcing* forcing = nullptr, std::optional<double> dt = std::nullopt);

    const PhysParams& params() const { return params_; }
    const StepConfig& config() const { return config_; }

    /// Makes `s` consistent: projects v, rebuilds w, resets p_s.
    void prepare(State& s);

private:
    bool try_step(const State& s, State& out, double dt, const Forcing& forcing, StepReport& rep);
    void implicit_and_project(State& s, double dt, double t_new, const Forcing& forcing, PoissonSolve* rep);

    PhysParams params_;
    StepConfig config_;
    PressureProjector projector_;
};

}  // namespace hydrostat

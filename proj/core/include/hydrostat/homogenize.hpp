#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "hydrostat/field.hpp"
#include "hydrostat/params.hpp"
#include "hydrostat/state.hpp"
#include "hydrostat/stepper.hpp"

namespace hydrostat {

/// Time samples of the wind stress tau (single layer) and the side
/// temperature Ts (full 3D field; only its wall extrapolation is used).
/// Values between samples are linear in t; time derivatives are centered
/// differences at the samples (second-order one-sided at the ends),
/// interpolated linearly.
class BoundaryForcing {
public:
    BoundaryForcing(const GridSpec& grid, double alpha_v, double alpha_T);

    /// Samples must arrive with strictly increasing t.
    void add_sample(double t, VectorField tau, ScalarField Ts);

    /// Zero data on [0, t_end] (three samples).
    static BoundaryForcing zero(const GridSpec& grid, double alpha_v, double alpha_T, double t_end);

    /// tau = 0 on the lateral wall if alpha_v > 0; d_z Ts = 0 at the top and
    /// bottom edges if alpha_T > 0. Throws std::invalid_argument.
    void check_compatibility(double rel_tol = 5e-2) const;

    const GridSpec& grid() const { return grid_; }
    double alpha_v() const { return alpha_v_; }
    double alpha_T() const { return alpha_T_; }
    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    double t_begin() const;
    double t_end() const;

    /// Throw std::out_of_range outside the sampled interval and
    /// std::logic_error with fewer than three samples.
    VectorField tau(double t) const;
    VectorField dtau_dt(double t) const;
    ScalarField Ts(double t) const;

    const VectorField& tau_sample(std::size_t n) const { return tau_[n]; }
    const ScalarField& Ts_sample(std::size_t n) const { return Ts_[n]; }

private:
    void locate(double t, std::size_t& n, double& w) const;

    GridSpec grid_;
    double alpha_v_, alpha_T_;
    std::vector<double> times_;
    std::vector<VectorField> tau_;
    std::vector<ScalarField> Ts_;
};

/// Lateral ghost offsets carrying the Robin data alpha_T * Ts, with the wall
/// value of Ts extrapolated linearly from the first two interior cells.
GhostOffsets robin_offsets(const ScalarField& Ts, double alpha_T);

/// Temperature ghost rule with side data Ts.
FieldBoundary temperature_boundary(const ScalarField& Ts, double alpha_T);

/// Vertical profiles used by the lift.
///   P(z) = (z+h)^2/2 - h^2/6 as exact layer averages (so sum P dz = 0),
///   Q(z) = (z+h)^3 - h^2 (z+h) and (z+h) at layer centers.
struct LiftProfile {
    std::vector<double> P;
    std::vector<double> Q;
    std::vector<double> zh;

    explicit LiftProfile(const GridSpec& grid);
};

/// V = v + (alpha_v/h) P tau
VectorField lift(const VectorField& v, const VectorField& tau, double alpha_v);
/// v = V - (alpha_v/h) P tau
VectorField unlift(const VectorField& V, const VectorField& tau, double alpha_v);

/// Implicit Euler for d_t T* = lap T* (full 3D Laplacian, unit diffusivity)
/// with Robin side data alpha_T Ts, zero flux on top and bottom, T*(0) = 0.
/// Keeps a sliding window of samples on the fixed step `dt`.
class TstarIntegrator {
public:
    TstarIntegrator(const BoundaryForcing& forcing, double dt, double tolerance = 1e-12, int max_iterations = 5000);

    /// T*(t), linear between samples. Advances as needed.
    ScalarField value(double t);
    /// Centered-difference d_t T*, linear between samples.
    ScalarField rate(double t);

    /// Samples older than t - 2 dt are released.
    void release_before(double t);

    double dt() const { return dt_; }
    int steps_taken() const { return static_cast<int>(step_count_); }

private:
    void advance_to_index(std::size_t n);
    const ScalarField& sample(std::size_t n);
    ScalarField node_rate(std::size_t n);

    const BoundaryForcing* forcing_;
    double dt_, tol_;
    int max_iter_;
    std::size_t first_ = 0;  ///< index of window.front()
    std::size_t step_count_ = 0;
    std::deque<ScalarField> window_;
};

/// T* at each of `times` (non-decreasing), integrated with step dt.
std::vector<ScalarField> solve_Tstar(const BoundaryForcing& forcing, const std::vector<double>& times, double dt);

/// Individual terms of the homogenized equations.
struct CorrectionTerms {
    VectorField a_tau;
    ScalarField b;
    VectorField F_tau;
    ScalarField G_tau;
};

/// Inputs of correction_terms at one time level.
struct CorrectionInputs {
    VectorField tau;       ///< single layer
    VectorField dtau_dt;   ///< single layer
    ScalarField Tstar;
    ScalarField dTstar_dt;
    ScalarField Ts;        ///< side data for the T* ghosts
};

/// Evaluates a_tau(V), b(V, Tcal), F_tau and G_tau term by term.
CorrectionTerms correction_terms(const VectorField& V, const ScalarField& Tcal, const CorrectionInputs& in,
                                 const PhysParams& p);

/// Forcing of the direct branch: Robin side data for T, surface flux
/// d_z v = -alpha_v tau.
class DirectForcing : public Forcing {
public:
    explicit DirectForcing(const BoundaryForcing& data) : data_(&data) {}
    Boundaries boundaries(double t, const PhysParams& p) const override;
    std::optional<VectorField> surface_velocity_flux(double t) const override;

private:
    const BoundaryForcing* data_;
};

/// Forcing of the homogenized branch in (V, Tcal): homogeneous boundaries,
/// tendencies F_tau - a_tau(V) and G_tau - b(V, Tcal).
class HomogenizedForcing : public Forcing {
public:
    HomogenizedForcing(const BoundaryForcing& data, double tstar_dt);
    void add_tendency(double t, const State& s, const PhysParams& p, Tendency& out) const override;

    CorrectionInputs inputs(double t) const;
    TstarIntegrator& tstar() const { return tstar_; }

private:
    const BoundaryForcing* data_;
    mutable TstarIntegrator tstar_;
};

struct EquivalenceReport {
    double t_end = 0.0;
    double dv_rel = 0.0;  ///< ||unlift(V) - v|| / ||v||
    double dT_rel = 0.0;  ///< ||Tcal + T* - T|| / ||T||
    int steps = 0;
    bool failed = false;
    std::string failing_branch;  ///< "direct" or "homogenized"
    std::string message;
    State direct;       ///< branch A at t_end
    State homogenized;  ///< branch B mapped back to (v, T)
};

/// Runs both branches from `initial` (in the original variables) with the
/// fixed step dt to t_end and compares them. `threads` > 1 runs the two
/// branches concurrently.
EquivalenceReport equivalence_run(const State& initial, const PhysParams& p, const StepConfig& c,
                                  const BoundaryForcing& data, double dt, double t_end, int threads = 1);

}  // namespace hydrostat

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hydrostat/diagnostics.hpp"
#include "hydrostat/stepper.hpp"

namespace hydrostat {

/// Ledger cadence: every step while t < 10 dt_max, then whenever t has
/// grown by `factor` since the last sample; the final time always.
struct SampleSchedule {
    double dt_max = 1e-2;
    double factor = 1.05;

    bool due(double t, double last_sampled) const {
        return t < 10.0 * dt_max || t >= last_sampled * factor;
    }
};

/// Dissipation rate of 1/2 ||T||^2 for the homogeneous problem:
/// (1/R_T)(||grad_H T||^2 + alpha_T ||T||^2_{Gamma_s}) + eps ||d_z T||^2.
double temperature_dissipation(const ScalarField& T, const PhysParams& p);

struct SimulationOptions {
    double t_end = 1.0;
    std::optional<double> fixed_dt;  ///< constant step (adjusted to land on t_end)
    const Forcing* forcing = nullptr;
    bool record_ledger = true;
    SampleOptions sample;
    /// Called after every accepted step.
    std::function<void(const State&, const StepReport&)> on_step;
    std::vector<double> snapshot_times;
    std::string output_dir;  ///< snapshots and checkpoints; empty disables both
};

struct SimulationResult {
    EnergyLedger ledger;
    State final_state;
    int steps = 0;
    int rejections = 0;
    double max_energy_residual = 0.0;
    double sum_energy_residual = 0.0;  ///< over all accepted steps
    std::vector<std::string> snapshots;
};

/// Integrates from `initial` (made consistent first) to t_end. On a
/// NumericalFailure a checkpoint of the last good state is written to
/// output_dir and the failure is rethrown with its path.
SimulationResult simulate(const State& initial, const PhysParams& p, const StepConfig& c,
                          const SimulationOptions& opt);

/// Writes v.u, v.v, T (and w) snapshots named <prefix>_<field>.snap; returns the paths.
std::vector<std::string> write_state(const State& s, const std::string& dir, const std::string& prefix);

/// Runs fn(0..count-1) on up to `threads` workers; rethrows the first exception.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace hydrostat

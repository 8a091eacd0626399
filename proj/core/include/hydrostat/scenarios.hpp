#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hydrostat/config.hpp"
#include "hydrostat/diagnostics.hpp"
#include "hydrostat/homogenize.hpp"
#include "hydrostat/simulation.hpp"

namespace hydrostat {

/// Exit statuses of run_scenario.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numerical = 3, exit_acceptance = 4 };

/// Smooth wind stress and side temperature switched on by
/// r(t) = 1 - exp(-(t/0.2)^2):
///   tau = r tau_amp (sx sy, 0.6 sin(2 kx x) sy)
///   Ts  = r Ts_amp (1 + 0.5 cx cy)(1 + 0.3 cos(m(z+h)))
/// sampled every `spacing` on [0, t_end].
BoundaryForcing analytic_forcing(const GridSpec& g, double alpha_v, double alpha_T, double tau_amp, double Ts_amp,
                                 double t_end, double spacing = 0.02);

struct SkewReport {
    double worst = 0.0;  ///< max |<advect(q), q>| / (||q||^2 ||v||_inf / min(dx, dz))
    int states = 0;
};
SkewReport skew_symmetry_check(const GridSpec& g, int states, std::uint64_t seed, double alpha_T = 0.5);

struct EnergyIdentityReport {
    std::vector<double> eps;
    std::vector<double> residual_dt;    ///< mean per-step residual with dt
    std::vector<double> residual_half;  ///< same interval with dt/2
    std::vector<double> factor;         ///< residual_dt / residual_half
};
/// v frozen at zero; T from smooth random data.
EnergyIdentityReport energy_identity_study(const GridSpec& g, PhysParams p, double dt, int steps,
                                           const std::vector<double>& eps_values, std::uint64_t seed);

struct EigenmodeReport {
    double lambda_h = 0.0;   ///< discrete eigenvalue of the horizontal Laplacian
    double observed = 0.0;   ///< ||T(t)|| / ||T0||
    double expected = 0.0;   ///< exp(-lambda_h t / R_T)
    double rel_error = 0.0;
    int steps = 0;
};
EigenmodeReport eigenmode_study(const GridSpec& g, PhysParams p, double t_end, int steps);

struct ConstraintReport {
    double max_ratio = 0.0;  ///< max over steps of ||div_H vbar|| / ||grad_H v||
    int steps = 0;
};
ConstraintReport constraint_study(const GridSpec& g, PhysParams p, const StepConfig& c, std::uint64_t seed,
                                  double tau_amp, double Ts_amp);

struct MmsReport {
    std::vector<int> nx;
    std::vector<double> err_v;  ///< relative L2 errors at t_end
    std::vector<double> err_T;
    double order_v = 0.0;
    double order_T = 0.0;
};
/// Runs the manufactured solution on `coarse` and its refinement.
MmsReport mms_study(const GridSpec& coarse, PhysParams p, const StepConfig& c, double t_end, int threads = 1);

/// Runs eps = 0 and each value in `eps_values` from the same smooth data
/// with one fixed step.
EpsilonSweepReport eps_sweep_study(const GridSpec& g, PhysParams p, const StepConfig& c,
                                   const std::vector<double>& eps_values, std::uint64_t seed, double t_end,
                                   int threads = 1);

struct PerturbationReport {
    std::vector<double> deltas;
    std::vector<GronwallReport> monitors;
    double spread = 0.0;  ///< |C1 - C2| / max(|C1|, |C2|)
    bool bounded = true;
};
PerturbationReport perturbation_study(const GridSpec& g, const PhysParams& p, const StepConfig& c,
                                      std::uint64_t seed, double delta0, double t_end, int threads = 1);

struct EquivalenceStudy {
    EquivalenceReport coarse, fine;
    double err_direct_v = 0.0, err_direct_T = 0.0;  ///< ||coarse - restrict(fine)|| / ||fine||
    double err_homog_v = 0.0, err_homog_T = 0.0;
};
/// Two-level equivalence run with dt scaled like dx^2.
EquivalenceStudy equivalence_study(const GridSpec& coarse, const PhysParams& p, const StepConfig& c,
                                   double tau_amp, double Ts_amp, double t_end, double dt_coarse, int threads = 1);

struct ProductBoundReport {
    double max_ratio_coarse = 0.0;
    double max_ratio_fine = 0.0;
    double change = 0.0;  ///< max(a/b, b/a)
    int triples = 0;
    bool violation = false;
};
ProductBoundReport product_bound_study(const GridSpec& coarse, int triples, std::uint64_t seed);

struct RoughReport {
    double calibration = 0.0;  ///< max over smooth runs of peak monitor / initial size
    double factor = 4.0;
    double envelope = 0.0;     ///< factor * calibration * initial size of the rough data
    double peak = 0.0;         ///< max_t t (||grad_H v||^2 + ||grad_H T||^2), rough run
    bool finite = true;
    int steps = 0;
    EnergyLedger ledger;
};
/// Initial size: 1 + ||(v0, T0)||^2 + ||(d_z v0, d_z T0)||^2.
RoughReport rough_study(const GridSpec& g, const PhysParams& p, const StepConfig& c, std::uint64_t seed,
                        double noise, double t_end, int calibration_runs = 3, int threads = 1);

/// Runs the scenario named in the config, writes its artifacts to
/// output_dir and returns an ExitCode. Messages go to `log`.
int run_scenario(const RunConfig& config, std::ostream& log);

/// Names accepted by run_scenario.
const std::vector<std::string>& scenario_names();

}  // namespace hydrostat

#pragma once

namespace hydrostat {

/// Physical coefficients of the regularized system.
struct PhysParams {
    double Re1 = 10.0;    ///< horizontal Reynolds number
    double Re2 = 10.0;    ///< vertical Reynolds number
    double R_T = 10.0;    ///< horizontal temperature diffusion is 1/R_T
    double f = 0.0;       ///< Coriolis parameter
    double eps = 0.0;     ///< vertical temperature diffusivity (0 is the target system)
    double alpha_T = 0.0; ///< side-wall Robin coefficient for T
    double alpha_v = 0.0; ///< wind-stress coefficient at the surface
    double delta = 1.0;   ///< exponent offset of the L^{3+delta} monitor

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

}  // namespace hydrostat

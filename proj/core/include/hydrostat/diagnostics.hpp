#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "hydrostat/params.hpp"
#include "hydrostat/state.hpp"

namespace hydrostat {

/// One row of the energy ledger. Column order is fixed; see column_names().
struct LedgerRow {
    double t = 0.0;
    double v_l2 = 0.0;
    double T_l2 = 0.0;
    double dzv_l2 = 0.0;
    double dzT_l2 = 0.0;
    double gradv_l2 = 0.0;
    double gradT_l2 = 0.0;
    double grad_dzv_l2 = 0.0;
    double grad_dzT_l2 = 0.0;
    double dzzv_l2 = 0.0;
    double T_gamma_s = 0.0;
    double vtilde_l3pd = 0.0;
    double K1 = 0.0, K2 = 0.0, K3 = 0.0, K4 = 0.0, K5 = 0.0;
    double G1 = 0.0, G2 = 0.0;
    double sqrt_t_gradv = 0.0;
    double sqrt_t_gradT = 0.0;
    double disk_scan = 0.0;
    double product_ratio = 0.0;
    double energy_residual_T = 0.0;
    double constraint_div = 0.0;  ///< ||div_H depth_average(v)||

    static constexpr std::size_t kColumns = 25;
    static const std::array<std::string_view, kColumns>& column_names();
    std::array<double, kColumns> values() const;
    static LedgerRow from_values(const std::array<double, kColumns>& v);
};

/// The estimate-ladder functionals, as arithmetic on the norm columns.
struct Functionals {
    double K1, K2, K3, K4, K5, G1, G2;
};
Functionals functionals_from_norms(const LedgerRow& norms, double delta);

/// Time series of ledger rows; t strictly increasing, entries finite.
class EnergyLedger {
public:
    void append(const LedgerRow& row);
    const std::vector<LedgerRow>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    const LedgerRow& back() const { return rows_.back(); }

    void write_csv(const std::string& path) const;
    static EnergyLedger read_csv(const std::string& path);

private:
    std::vector<LedgerRow> rows_;
};

struct SampleOptions {
    double energy_residual_T = 0.0;
    double disk_radius = 0.0;  ///< r0; 0 picks min(Lx, Ly)/8
};

/// Computes every ledger column from the current fields.
LedgerRow sample(const State& s, const PhysParams& p, const SampleOptions& opt = {});

/// max over cell centers X of int_{-h}^0 int_{D_{2 r0}(X) cap M} |dzv|^2.
double disk_scan(const VectorField& dzv, double r0);

/// Paired difference of two runs at a common sample time.
struct DifferenceSample {
    double t = 0.0;
    double diff_sq = 0.0;  ///< ||(omega, theta)||^2
    double G1 = 0.0;       ///< of the base run
    double G2 = 0.0;
};

struct GronwallReport {
    std::vector<double> t;
    std::vector<double> ratio;     ///< R(t) = diff_sq(t) / diff_sq(0)
    std::vector<double> integral;  ///< int_0^t (G1 + G2) ds
    double C_emp = 0.0;
    bool zero_branch = false;
    /// log R(t) <= C_emp * integral(t) at every sample
    bool bound_holds = true;
};

GronwallReport gronwall_monitor(const std::vector<DifferenceSample>& samples);

struct EpsilonRun {
    double eps = 0.0;
    State final_state;
};

struct EpsilonSweepReport {
    std::vector<double> eps;
    std::vector<double> dT;  ///< ||T_eps - T_0||
    std::vector<double> dv;  ///< ||v_eps - v_0||
    bool monotone = true;    ///< non-increasing within `slack`
    double fitted_order = 0.0;
    bool degenerate = false;  ///< some difference is zero; no order fitted
};

/// Differences against the eps = 0 member; rejects mismatched grids.
EpsilonSweepReport epsilon_sweep_report(const std::vector<EpsilonRun>& runs, double slack = 0.1);

}  // namespace hydrostat

#include "hydrostat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hydrostat/decomposition.hpp"
#include "hydrostat/dynamics.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"
#include "hydrostat/pressure.hpp"

namespace hydrostat {

const std::array<std::string_view, LedgerRow::kColumns>& LedgerRow::column_names() {
    static const std::array<std::string_view, kColumns> names = {
        "t",           "v_l2",         "T_l2",         "dzv_l2",        "dzT_l2",
        "gradv_l2",    "gradT_l2",     "grad_dzv_l2",  "grad_dzT_l2",   "dzzv_l2",
        "T_gamma_s",   "vtilde_l3pd",  "K1",           "K2",            "K3",
        "K4",          "K5",           "G1",           "G2",            "sqrt_t_gradv",
        "sqrt_t_gradT", "disk_scan",   "product_ratio", "energy_residual_T", "constraint_div"};
    return names;
}

std::array<double, LedgerRow::kColumns> LedgerRow::values() const {
    return {t,           v_l2,         T_l2,         dzv_l2,       dzT_l2,        gradv_l2,         gradT_l2,
            grad_dzv_l2, grad_dzT_l2,  dzzv_l2,      T_gamma_s,    vtilde_l3pd,   K1,               K2,
            K3,          K4,           K5,           G1,           G2,            sqrt_t_gradv,     sqrt_t_gradT,
            disk_scan,   product_ratio, energy_residual_T, constraint_div};
}

LedgerRow LedgerRow::from_values(const std::array<double, kColumns>& v) {
    LedgerRow r;
    double* fields[kColumns] = {&r.t,           &r.v_l2,         &r.T_l2,        &r.dzv_l2,
                                &r.dzT_l2,      &r.gradv_l2,     &r.gradT_l2,    &r.grad_dzv_l2,
                                &r.grad_dzT_l2, &r.dzzv_l2,      &r.T_gamma_s,   &r.vtilde_l3pd,
                                &r.K1,          &r.K2,           &r.K3,          &r.K4,
                                &r.K5,          &r.G1,           &r.G2,          &r.sqrt_t_gradv,
                                &r.sqrt_t_gradT, &r.disk_scan,   &r.product_ratio, &r.energy_residual_T,
                                &r.constraint_div};
    for (std::size_t n = 0; n < kColumns; ++n) *fields[n] = v[n];
    return r;
}

Functionals functionals_from_norms(const LedgerRow& r, double delta) {
    const double v2 = r.v_l2 * r.v_l2;
    const double T2 = r.T_l2 * r.T_l2;
    const double gv2 = r.gradv_l2 * r.gradv_l2;
    const double gT2 = r.gradT_l2 * r.gradT_l2;
    const double dzv2 = r.dzv_l2 * r.dzv_l2;
    const double dzT2 = r.dzT_l2 * r.dzT_l2;
    const double gdzv2 = r.grad_dzv_l2 * r.grad_dzv_l2;
    const double gdzT2 = r.grad_dzT_l2 * r.grad_dzT_l2;

    Functionals k{};
    k.K1 = gv2 * (v2 + 1.0) + (T2 + 1.0) * (r.gradT_l2 + 1.0);
    k.K2 = v2 * gv2 + std::pow(r.vtilde_l3pd, 2.0 + 6.0 / delta) + 1.0;
    k.K3 = 1.0 + gv2 + gdzv2 + dzv2 * gdzv2;
    k.K4 = 1.0 + (v2 + dzv2) * (gv2 + gdzv2);
    k.K5 = gv2 * (dzT2 * dzT2 + dzT2 * gdzT2);
    k.G1 = 1.0 + gT2 + gdzT2 + dzT2 * dzT2 + dzT2 * gdzT2;
    k.G2 = 1.0 + gv2 + gdzv2 + dzv2 * dzv2 + dzv2 * gdzv2;
    return k;
}

void EnergyLedger::append(const LedgerRow& row) {
    if (!rows_.empty() && !(row.t > rows_.back().t)) {
        std::ostringstream msg;
        msg << "ledger rows must be strictly increasing in t (" << row.t << " after " << rows_.back().t << ")";
        throw std::invalid_argument(msg.str());
    }
    const auto vals = row.values();
    for (std::size_t n = 0; n < vals.size(); ++n)
        if (!std::isfinite(vals[n]))
            throw std::domain_error("ledger column '" + std::string(LedgerRow::column_names()[n]) +
                                    "' is not finite");
    rows_.push_back(row);
}

void EnergyLedger::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open ledger file '" + path + "' for writing");
    const auto& names = LedgerRow::column_names();
    for (std::size_t n = 0; n < names.size(); ++n) out << (n ? "," : "") << names[n];
    out << '\n' << std::setprecision(17);
    for (const auto& r : rows_) {
        const auto vals = r.values();
        for (std::size_t n = 0; n < vals.size(); ++n) out << (n ? "," : "") << vals[n];
        out << '\n';
    }
}

EnergyLedger EnergyLedger::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ledger file '" + path + "'");
    std::string line;
    std::getline(in, line);
    {
        std::ostringstream expected;
        const auto& names = LedgerRow::column_names();
        for (std::size_t n = 0; n < names.size(); ++n) expected << (n ? "," : "") << names[n];
        if (line != expected.str()) throw std::runtime_error("ledger header does not match the column list");
    }
    EnergyLedger ledger;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, LedgerRow::kColumns> vals{};
        std::istringstream ss(line);
        std::string cell;
        std::size_t n = 0;
        while (std::getline(ss, cell, ',')) {
            if (n >= vals.size()) throw std::runtime_error("ledger row has too many columns");
            vals[n++] = std::stod(cell);
        }
        if (n != vals.size()) throw std::runtime_error("ledger row has too few columns");
        ledger.append(LedgerRow::from_values(vals));
    }
    return ledger;
}

double disk_scan(const VectorField& dzv, double r0) {
    const GridSpec& g = dzv.grid();
    if (!(r0 > 0.0) || r0 > 0.25 * std::min(g.Lx, g.Ly))
        throw std::invalid_argument("disk_scan: r0 must lie in (0, min(Lx, Ly)/4]");
    const double radius = 2.0 * r0;
    if (radius < std::min(g.dx(), g.dy()))
        throw std::invalid_argument("disk_scan: disk of radius 2*r0 contains no neighbouring cell");

    // column integrals of |dzv|^2
    std::vector<double> col(g.columns(), 0.0);
    const std::size_t cols = g.columns();
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t c = 0; c < cols; ++c) {
            const double a = dzv.u[c + cols * k], b = dzv.v[c + cols * k];
            col[c] += (a * a + b * b) * g.dz();
        }
    const double cell_area = g.dx() * g.dy();
    const int ri = static_cast<int>(std::ceil(radius / g.dx()));
    const int rj = static_cast<int>(std::ceil(radius / g.dy()));
    const double r2 = radius * radius;

    double best = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double s = 0.0;
            for (int b = std::max(0, j - rj); b <= std::min(g.ny - 1, j + rj); ++b)
                for (int a = std::max(0, i - ri); a <= std::min(g.nx - 1, i + ri); ++a) {
                    const double ddx = (a - i) * g.dx(), ddy = (b - j) * g.dy();
                    if (ddx * ddx + ddy * ddy <= r2) s += col[a + g.nx * b];
                }
            best = std::max(best, s * cell_area);
        }
    return best;
}

LedgerRow sample(const State& s, const PhysParams& p, const SampleOptions& opt) {
    const GridSpec& g = s.grid();
    const FieldBoundary vbc = FieldBoundary::velocity();
    const FieldBoundary Tbc = FieldBoundary::temperature(p.alpha_T);

    LedgerRow r;
    r.t = s.t;
    r.v_l2 = norm_l2(s.v);
    r.T_l2 = norm_l2(s.T);
    const H1Parts hv = seminorm_h1_parts(s.v, vbc);
    const H1Parts hT = seminorm_h1_parts(s.T, Tbc);
    r.gradv_l2 = hv.grad_h;
    r.dzv_l2 = hv.dz;
    r.gradT_l2 = hT.grad_h;
    r.dzT_l2 = hT.dz;
    r.grad_dzv_l2 = norm_grad_h_dz(s.v, vbc);
    r.grad_dzT_l2 = norm_grad_h_dz(s.T, Tbc);
    r.dzzv_l2 = norm_l2(VectorField(d2z(s.v.u, vbc), d2z(s.v.v, vbc)));
    r.T_gamma_s = norm_l2_gamma_s(s.T, Tbc);
    r.vtilde_l3pd = norm_lp(decompose(s.v).vtilde, 3.0 + p.delta);

    const Functionals k = functionals_from_norms(r, p.delta);
    r.K1 = k.K1;
    r.K2 = k.K2;
    r.K3 = k.K3;
    r.K4 = k.K4;
    r.K5 = k.K5;
    r.G1 = k.G1;
    r.G2 = k.G2;

    const double st = std::sqrt(std::max(s.t, 0.0));
    r.sqrt_t_gradv = st * r.gradv_l2;
    r.sqrt_t_gradT = st * r.gradT_l2;

    const double r0 = opt.disk_radius > 0.0 ? opt.disk_radius : 0.125 * std::min(g.Lx, g.Ly);
    r.disk_scan = disk_scan(VectorField(ddz(s.v.u, vbc), ddz(s.v.v, vbc)), r0);
    r.product_ratio = anisotropic_product_bound(s.v.u, s.v.v, s.T).ratio();
    if (!std::isfinite(r.product_ratio)) r.product_ratio = std::numeric_limits<double>::max();
    r.energy_residual_T = opt.energy_residual_T;
    r.constraint_div = depth_mean_divergence_norm(s.v);
    return r;
}

GronwallReport gronwall_monitor(const std::vector<DifferenceSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("gronwall_monitor: no samples");
    GronwallReport rep;
    bool all_zero = true;
    for (const auto& s : samples) all_zero = all_zero && s.diff_sq == 0.0;
    if (all_zero) {
        rep.zero_branch = true;
        for (const auto& s : samples) {
            rep.t.push_back(s.t);
            rep.ratio.push_back(0.0);
        }
        rep.integral.assign(samples.size(), 0.0);
        return rep;
    }
    const double d0 = samples.front().diff_sq;
    if (!(d0 > 0.0)) throw std::invalid_argument("gronwall_monitor: zero initial difference, ratio undefined");

    double integral = 0.0;
    double c_emp = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < samples.size(); ++n) {
        const auto& s = samples[n];
        if (n > 0) {
            const auto& prev = samples[n - 1];
            if (!(s.t > prev.t)) throw std::invalid_argument("gronwall_monitor: sample times must increase");
            integral += 0.5 * (s.t - prev.t) * (s.G1 + s.G2 + prev.G1 + prev.G2);
        }
        const double R = s.diff_sq / d0;
        rep.t.push_back(s.t);
        rep.ratio.push_back(R);
        rep.integral.push_back(integral);
        if (!std::isfinite(R)) rep.bound_holds = false;
        if (n > 0 && integral > 0.0 && R > 0.0) c_emp = std::max(c_emp, std::log(R) / integral);
    }
    rep.C_emp = std::isfinite(c_emp) ? c_emp : 0.0;
    for (std::size_t n = 1; n < rep.t.size(); ++n) {
        const double R = rep.ratio[n];
        const double bound = rep.C_emp * rep.integral[n];
        if (R > 0.0 && std::log(R) > bound + 1e-12 * std::abs(bound) + 1e-300) rep.bound_holds = false;
    }
    return rep;
}

EpsilonSweepReport epsilon_sweep_report(const std::vector<EpsilonRun>& runs, double slack) {
    if (runs.size() < 3) throw std::invalid_argument("epsilon_sweep_report: need at least 3 runs");
    const EpsilonRun* ref = nullptr;
    for (const auto& r : runs)
        if (r.eps == 0.0) ref = &r;
    if (!ref) throw std::invalid_argument("epsilon_sweep_report: the sweep must include eps = 0");
    const GridSpec& g = ref->final_state.grid();
    for (const auto& r : runs)
        if (!r.final_state.grid().same_shape(g))
            throw std::invalid_argument("epsilon_sweep_report: runs use mismatched grids");

    std::vector<const EpsilonRun*> members;
    for (const auto& r : runs)
        if (&r != ref) members.push_back(&r);
    std::sort(members.begin(), members.end(), [](auto* a, auto* b) { return a->eps > b->eps; });

    EpsilonSweepReport rep;
    for (const auto* m : members) {
        rep.eps.push_back(m->eps);
        rep.dT.push_back(norm_l2(m->final_state.T - ref->final_state.T));
        rep.dv.push_back(norm_l2(m->final_state.v - ref->final_state.v));
    }
    for (std::size_t n = 1; n < rep.dT.size(); ++n)
        if (rep.dT[n] > (1.0 + slack) * rep.dT[n - 1]) rep.monotone = false;

    // least-squares slope of log dT against log eps
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t n = 0; n < rep.eps.size(); ++n) {
        if (!(rep.dT[n] > 0.0) || !(rep.eps[n] > 0.0)) {
            rep.degenerate = true;
            continue;
        }
        const double x = std::log(rep.eps[n]), y = std::log(rep.dT[n]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (!rep.degenerate && count >= 2) {
        const double den = count * sxx - sx * sx;
        rep.fitted_order = den != 0.0 ? (count * sxy - sx * sy) / den : 0.0;
    } else {
        rep.degenerate = true;
    }
    return rep;
}

}  // namespace hydrostat

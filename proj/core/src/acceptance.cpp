#include "hydrostat/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "hydrostat/scenarios.hpp"

namespace hydrostat {

namespace {

const GridSpec g16 = GridSpec::make(1.0, 1.0, 1.0, 16, 16, 8);
const GridSpec g32 = GridSpec::make(1.0, 1.0, 1.0, 32, 32, 16);

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(4) << x;
    return os.str();
}

Outcome skew(const AcceptanceOptions& o) {
    const auto r = skew_symmetry_check(g16, 5, o.seed);
    return {r.worst <= 1e-12, "worst normalized |<advect(q), q>| = " + fmt(r.worst) + " (<= 1e-12)"};
}

Outcome energy(const AcceptanceOptions& o) {
    PhysParams p;
    p.alpha_T = 0.5;
    const auto r = energy_identity_study(g32, p, 1e-3, 200, {0.0, 0.01}, o.seed);
    bool ok = true;
    std::string d = "residual ratio dt/(dt/2):";
    for (std::size_t n = 0; n < r.eps.size(); ++n) {
        ok = ok && std::abs(r.factor[n] - 4.0) <= 0.8;
        d += " eps=" + fmt(r.eps[n]) + " -> " + fmt(r.factor[n]);
    }
    return {ok, d + " (4 +- 20%)"};
}

Outcome eigenmode(const AcceptanceOptions&) {
    const auto r = eigenmode_study(g32, PhysParams{}, 1.0, 1000);
    return {r.rel_error <= 1e-3, "||T||/||T0|| = " + fmt(r.observed) + " vs " + fmt(r.expected) +
                                     ", rel error " + fmt(r.rel_error) + " (<= 1e-3)"};
}

Outcome constraint(const AcceptanceOptions& o) {
    PhysParams p;
    p.alpha_v = 1.0;
    p.alpha_T = 0.5;
    p.f = 1.0;
    StepConfig c;
    c.t_end = 1.0;
    const auto r = constraint_study(g32, p, c, o.seed, 0.5, 1.0);
    return {r.max_ratio <= 1e-8 && r.steps > 0,
            "max ||div_H vbar|| / ||grad_H v|| = " + fmt(r.max_ratio) + " over " + std::to_string(r.steps) +
                " steps (<= 1e-8)"};
}

Outcome mms(const AcceptanceOptions& o) {
    StepConfig c;
    c.t_end = 1.0;
    const auto r = mms_study(g16, PhysParams{}, c, 1.0, o.threads);
    return {r.order_v >= 1.8 && r.order_T >= 1.8,
            "order v " + fmt(r.order_v) + ", T " + fmt(r.order_T) + " (>= 1.8)"};
}

Outcome eps_sweep(const AcceptanceOptions& o) {
    StepConfig c;
    const auto r = eps_sweep_study(g32, PhysParams{}, c, {0.1, 0.01, 0.001}, o.seed, 0.5, o.threads);
    std::string d = "||T_eps - T_0||:";
    for (std::size_t n = 0; n < r.eps.size(); ++n) d += " " + fmt(r.dT[n]);
    d += ", fitted order " + fmt(r.fitted_order) + " (> 0.5)";
    return {r.monotone && !r.degenerate && r.fitted_order > 0.5, d};
}

Outcome perturbation(const AcceptanceOptions& o) {
    StepConfig c;
    const auto r = perturbation_study(g16, PhysParams{}, c, o.seed, 1e-3, 1.0, o.threads);
    bool finite = true;
    for (const auto& m : r.monitors)
        for (double x : m.ratio) finite = finite && std::isfinite(x);
    return {finite && r.bounded && r.spread <= 0.2,
            "C_emp " + fmt(r.monitors[0].C_emp) + " / " + fmt(r.monitors[1].C_emp) + ", spread " + fmt(r.spread) +
                (r.bounded ? ", bound holds" : ", bound violated")};
}

Outcome equivalence(const AcceptanceOptions& o) {
    PhysParams p;
    p.alpha_v = 1.0;
    p.alpha_T = 0.5;
    StepConfig c;
    c.dt_max = 1.0;
    const auto r = equivalence_study(g16, p, c, 0.5, 1.0, 0.5, 0.005, o.threads);
    for (const EquivalenceReport* e : {&r.coarse, &r.fine})
        if (e->failed) return {false, e->failing_branch + " branch failed: " + e->message};
    const double dc = std::max(r.coarse.dv_rel, r.coarse.dT_rel);
    const double df = std::max(r.fine.dv_rel, r.fine.dT_rel);
    const double err = std::min(std::max(r.err_direct_v, r.err_direct_T), std::max(r.err_homog_v, r.err_homog_T));
    return {dc <= 5.0 * err && df < dc, "discrepancy " + fmt(dc) + " -> " + fmt(df) + ", discretization error " +
                                            fmt(err) + " (<= 5x, decreasing)"};
}

Outcome product_bound(const AcceptanceOptions& o) {
    const auto r = product_bound_study(g16, 100, o.seed);
    return {!r.violation && r.change <= 2.0, "max ratio " + fmt(r.max_ratio_coarse) + " -> " +
                                                 fmt(r.max_ratio_fine) + ", change x" + fmt(r.change) + " (<= 2)"};
}

Outcome rough(const AcceptanceOptions& o) {
    StepConfig c;
    const auto r = rough_study(g32, PhysParams{}, c, o.seed, 0.5, 1.0, 3, o.threads);
    return {r.finite && r.peak <= r.envelope,
            std::string(r.finite ? "finite" : "non-finite") + ", peak t||grad_H(v, T)||^2 " + fmt(r.peak) +
                ", envelope " + fmt(r.envelope)};
}

struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds
    Outcome (*fn)(const AcceptanceOptions&);
};

const Criterion criteria[] = {
    {1, "skew-symmetry", 1.0, skew},
    {2, "energy identity", 10.0, energy},
    {3, "eigenmode decay", 10.0, eigenmode},
    {4, "depth-mean constraint", 60.0, constraint},
    {5, "manufactured solution order", 120.0, mms},
    {6, "eps sweep", 300.0, eps_sweep},
    {7, "continuous dependence", 300.0, perturbation},
    {8, "boundary-data homogenization", 600.0, equivalence},
    {9, "anisotropic product bound", 60.0, product_bound},
    {10, "rough data", 120.0, rough},
};

}  // namespace

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << " ["
       << std::fixed << std::setprecision(1) << r.seconds << " s, limit " << r.time_limit << " s]";
    return os.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out) {
    std::vector<CriterionResult> results;
    for (const Criterion& c : criteria) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.time_limit = c.limit;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.fn(opt);
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.time_limit) r.pass = false;
        out << format_result(r) << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace hydrostat

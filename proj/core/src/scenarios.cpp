#include "hydrostat/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "hydrostat/decomposition.hpp"
#include "hydrostat/dynamics.hpp"
#include "hydrostat/initial.hpp"
#include "hydrostat/io.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/pressure.hpp"

namespace hydrostat {

namespace {

constexpr double pi = std::numbers::pi;

double ramp(double t) { return 1.0 - std::exp(-(t / 0.2) * (t / 0.2)); }

double rel_diff(const ScalarField& coarse, const ScalarField& fine, double scale) {
    return norm_l2(coarse - restrict_to(fine, coarse.grid())) / scale;
}

double rel_diff(const VectorField& coarse, const VectorField& fine, double scale) {
    return std::hypot(norm_l2(coarse.u - restrict_to(fine.u, coarse.u.grid())),
                      norm_l2(coarse.v - restrict_to(fine.v, coarse.v.grid()))) /
           scale;
}

// Largest step all members of a lockstep ensemble can take.
double ensemble_dt(const State& s, const PhysParams& p, const StepConfig& c) {
    State tmp = s;
    make_consistent(tmp);
    return std::min(c.dt_max, 0.5 * cfl_dt(tmp, p, c));
}

}  // namespace

BoundaryForcing analytic_forcing(const GridSpec& g, double alpha_v, double alpha_T, double tau_amp, double Ts_amp,
                                 double t_end, double spacing) {
    if (!(t_end > 0.0) || !(spacing > 0.0)) throw std::invalid_argument("analytic_forcing: t_end and spacing must be positive");
    const double kx = pi / g.Lx, ky = pi / g.Ly, m = pi / g.h;
    const int count = std::max(3, static_cast<int>(std::ceil(t_end / spacing - 1e-9)) + 1);
    const double step = t_end / (count - 1);
    BoundaryForcing bf(g, alpha_v, alpha_T);
    const GridSpec s = g.surface();
    for (int n = 0; n < count; ++n) {
        const double t = n * step;
        const double r = ramp(t);
        VectorField tau(s);
        tau.u = ScalarField::sample(s, [&](double x, double y, double) {
            return r * tau_amp * std::sin(kx * x) * std::sin(ky * y);
        });
        tau.v = ScalarField::sample(s, [&](double x, double y, double) {
            return r * tau_amp * 0.6 * std::sin(2.0 * kx * x) * std::sin(ky * y);
        });
        ScalarField Ts = ScalarField::sample(g, [&](double x, double y, double z) {
            return r * Ts_amp * (1.0 + 0.5 * std::cos(kx * x) * std::cos(ky * y)) *
                   (1.0 + 0.3 * std::cos(m * (z + g.h)));
        });
        bf.add_sample(t, std::move(tau), std::move(Ts));
    }
    return bf;
}

SkewReport skew_symmetry_check(const GridSpec& g, int states, std::uint64_t seed, double alpha_T) {
    SkewReport rep;
    const double hmin = std::min({g.dx(), g.dy(), g.dz()});
    const FieldBoundary vel = FieldBoundary::velocity();
    const FieldBoundary temp = FieldBoundary::temperature(alpha_T);
    for (int n = 0; n < states; ++n) {
        InitOptions opt;
        opt.rough = n % 2 == 1;
        const State s = random_state(g, seed + n, opt);
        const double vinf = std::max(norm_linf(s.v.u), norm_linf(s.v.v));
        for (int which = 0; which < 3; ++which) {
            const ScalarField& q = which == 0 ? s.v.u : which == 1 ? s.v.v : s.T;
            const FieldBoundary& bc = which == 2 ? temp : vel;
            const double value = inner(advect(q, bc, s.v, s.w), q);
            const double scale = inner(q, q) * vinf / hmin;
            if (scale > 0.0) rep.worst = std::max(rep.worst, std::abs(value) / scale);
            else if (value != 0.0) rep.worst = HUGE_VAL;
        }
        ++rep.states;
    }
    return rep;
}

EnergyIdentityReport energy_identity_study(const GridSpec& g, PhysParams p, double dt, int steps,
                                           const std::vector<double>& eps_values, std::uint64_t seed) {
    if (!(dt > 0.0) || steps < 1) throw std::invalid_argument("energy_identity_study: dt and steps must be positive");
    State s0 = random_state(g, seed);
    s0.v = VectorField(g);
    s0.w = WField(g);
    EnergyIdentityReport rep;
    for (double eps : eps_values) {
        p.eps = eps;
        auto mean_residual = [&](double h, int n) {
            StepConfig c;
            c.frozen_velocity = true;
            c.dt_max = h;
            c.dt_min = h * 1e-3;
            c.t_end = h * n;
            SimulationOptions opt;
            opt.t_end = h * n;
            opt.fixed_dt = h;
            opt.record_ledger = false;
            const auto res = simulate(s0, p, c, opt);
            return res.sum_energy_residual / res.steps;
        };
        rep.eps.push_back(eps);
        rep.residual_dt.push_back(mean_residual(dt, steps));
        rep.residual_half.push_back(mean_residual(0.5 * dt, 2 * steps));
        rep.factor.push_back(rep.residual_half.back() > 0.0 ? rep.residual_dt.back() / rep.residual_half.back()
                                                            : HUGE_VAL);
    }
    return rep;
}

EigenmodeReport eigenmode_study(const GridSpec& g, PhysParams p, double t_end, int steps) {
    if (!(t_end > 0.0) || steps < 1) throw std::invalid_argument("eigenmode_study: t_end and steps must be positive");
    p.alpha_T = 0.0;
    p.eps = 0.0;
    State s(g);
    s.T = ScalarField::sample(g, [&](double x, double y, double) {
        return std::cos(pi * x / g.Lx) * std::cos(pi * y / g.Ly);
    });
    const double dt = t_end / steps;
    StepConfig c;
    c.frozen_velocity = true;
    c.dt_max = dt;
    c.dt_min = dt * 1e-3;
    c.t_end = t_end;
    SimulationOptions opt;
    opt.t_end = t_end;
    opt.fixed_dt = dt;
    opt.record_ledger = false;
    const auto res = simulate(s, p, c, opt);

    EigenmodeReport rep;
    rep.lambda_h = (2.0 - 2.0 * std::cos(pi * g.dx() / g.Lx)) / (g.dx() * g.dx()) +
                   (2.0 - 2.0 * std::cos(pi * g.dy() / g.Ly)) / (g.dy() * g.dy());
    rep.observed = norm_l2(res.final_state.T) / norm_l2(s.T);
    rep.expected = std::exp(-rep.lambda_h * t_end / p.R_T);
    rep.rel_error = std::abs(rep.observed - rep.expected) / rep.expected;
    rep.steps = res.steps;
    return rep;
}

ConstraintReport constraint_study(const GridSpec& g, PhysParams p, const StepConfig& c, std::uint64_t seed,
                                  double tau_amp, double Ts_amp) {
    const State s0 = random_state(g, seed);
    const BoundaryForcing data = analytic_forcing(g, p.alpha_v, p.alpha_T, tau_amp, Ts_amp, c.t_end + 0.1);
    data.check_compatibility();
    const DirectForcing forcing(data);
    ConstraintReport rep;
    SimulationOptions opt;
    opt.t_end = c.t_end;
    opt.forcing = &forcing;
    opt.record_ledger = false;
    const FieldBoundary vel = FieldBoundary::velocity();
    opt.on_step = [&](const State& s, const StepReport&) {
        const double grad = seminorm_h1_parts(s.v, vel).grad_h;
        const double div = depth_mean_divergence_norm(s.v);
        rep.max_ratio = std::max(rep.max_ratio, grad > 0.0 ? div / grad : (div > 0.0 ? HUGE_VAL : 0.0));
        ++rep.steps;
    };
    simulate(s0, p, c, opt);
    return rep;
}

MmsReport mms_study(const GridSpec& coarse, PhysParams p, const StepConfig& c, double t_end, int threads) {
    const GridSpec levels[2] = {coarse, coarse.refined()};
    MmsReport rep;
    rep.nx = {levels[0].nx, levels[1].nx};
    rep.err_v.assign(2, 0.0);
    rep.err_T.assign(2, 0.0);
    parallel_for(2, threads, [&](int l) {
        const GridSpec& g = levels[l];
        const MmsSolution m = MmsSolution::on(g);
        check_mms_boundary(m, g, p);
        const MmsForcing forcing(m, g, p);
        const State exact = m.sample(g);
        SimulationOptions opt;
        opt.t_end = t_end;
        opt.forcing = &forcing;
        opt.record_ledger = false;
        const auto res = simulate(exact, p, c, opt);
        rep.err_v[l] = norm_l2(res.final_state.v - exact.v) / norm_l2(exact.v);
        rep.err_T[l] = norm_l2(res.final_state.T - exact.T) / norm_l2(exact.T);
    });
    rep.order_v = std::log2(rep.err_v[0] / rep.err_v[1]);
    rep.order_T = std::log2(rep.err_T[0] / rep.err_T[1]);
    return rep;
}

EpsilonSweepReport eps_sweep_study(const GridSpec& g, PhysParams p, const StepConfig& c,
                                   const std::vector<double>& eps_values, std::uint64_t seed, double t_end,
                                   int threads) {
    const State s0 = random_state(g, seed);
    std::vector<double> all = eps_values;
    if (std::find(all.begin(), all.end(), 0.0) == all.end()) all.push_back(0.0);
    p.eps = 0.0;
    const double dt = ensemble_dt(s0, p, c);
    std::vector<EpsilonRun> runs(all.size());
    parallel_for(static_cast<int>(all.size()), threads, [&](int n) {
        PhysParams q = p;
        q.eps = all[n];
        SimulationOptions opt;
        opt.t_end = t_end;
        opt.fixed_dt = dt;
        opt.record_ledger = false;
        runs[n] = {all[n], simulate(s0, q, c, opt).final_state};
    });
    return epsilon_sweep_report(runs);
}

PerturbationReport perturbation_study(const GridSpec& g, const PhysParams& p, const StepConfig& c,
                                      std::uint64_t seed, double delta0, double t_end, int threads) {
    if (!(delta0 > 0.0)) throw std::invalid_argument("perturbation_study: delta0 must be positive");
    const State base = random_state(g, seed);
    State dir = random_state(g, seed + 7919);
    const double size = std::sqrt(inner(dir.v, dir.v) + inner(dir.T, dir.T));
    dir.v = (1.0 / size) * dir.v;
    dir.T *= 1.0 / size;

    PerturbationReport rep;
    rep.deltas = {delta0, 0.5 * delta0};
    std::vector<State> starts(3, base);
    for (int n = 0; n < 2; ++n) {
        starts[n + 1].v.axpy(rep.deltas[n], dir.v);
        starts[n + 1].T.axpy(rep.deltas[n], dir.T);
    }
    for (State& s : starts) make_consistent(s);
    const double dt = std::min(ensemble_dt(starts[1], p, c), ensemble_dt(base, p, c));

    struct Snap {
        double t;
        VectorField v;
        ScalarField T;
    };
    std::vector<std::vector<Snap>> snaps(3);
    std::vector<std::pair<double, double>> functionals;  // G1, G2 of the base run
    const SampleSchedule schedule{c.dt_max};
    parallel_for(3, threads, [&](int n) {
        auto& out = snaps[n];
        out.push_back({0.0, starts[n].v, starts[n].T});
        if (n == 0) {
            const LedgerRow row = sample(starts[0], p);
            functionals.emplace_back(row.G1, row.G2);
        }
        double last = 0.0;
        SimulationOptions opt;
        opt.t_end = t_end;
        opt.fixed_dt = dt;
        opt.record_ledger = false;
        opt.on_step = [&](const State& s, const StepReport&) {
            const bool final = std::abs(s.t - t_end) <= 1e-12 * t_end;
            if (!final && !schedule.due(s.t, last)) return;
            last = s.t;
            out.push_back({s.t, s.v, s.T});
            if (n == 0) {
                const LedgerRow row = sample(s, p);
                functionals.emplace_back(row.G1, row.G2);
            }
        };
        simulate(starts[n], p, c, opt);
    });

    std::vector<double> C;
    for (int n = 0; n < 2; ++n) {
        const auto& a = snaps[0];
        const auto& b = snaps[n + 1];
        if (a.size() != b.size()) throw std::logic_error("perturbation_study: runs sampled at different times");
        std::vector<DifferenceSample> diffs;
        for (std::size_t m = 0; m < a.size(); ++m) {
            const VectorField dv = b[m].v - a[m].v;
            const ScalarField dT = b[m].T - a[m].T;
            diffs.push_back({a[m].t, inner(dv, dv) + inner(dT, dT), functionals[m].first, functionals[m].second});
        }
        rep.monitors.push_back(gronwall_monitor(diffs));
        rep.bounded = rep.bounded && rep.monitors.back().bound_holds;
        C.push_back(rep.monitors.back().C_emp);
    }
    const double top = std::max(std::abs(C[0]), std::abs(C[1]));
    rep.spread = top > 0.0 ? std::abs(C[0] - C[1]) / top : 0.0;
    return rep;
}

EquivalenceStudy equivalence_study(const GridSpec& coarse, const PhysParams& p, const StepConfig& c,
                                   double tau_amp, double Ts_amp, double t_end, double dt_coarse, int threads) {
    EquivalenceStudy study;
    const GridSpec levels[2] = {coarse, coarse.refined()};
    EquivalenceReport* reports[2] = {&study.coarse, &study.fine};
    for (int l = 0; l < 2; ++l) {
        const GridSpec& g = levels[l];
        const double dt = dt_coarse / (l == 0 ? 1.0 : 4.0);
        const BoundaryForcing data = analytic_forcing(g, p.alpha_v, p.alpha_T, tau_amp, Ts_amp, t_end + 4.0 * dt_coarse);
        data.check_compatibility();
        State s(g);
        s.T = ScalarField::sample(g, [&](double x, double y, double z) {
            return std::cos(pi * x / g.Lx) * std::cos(pi * y / g.Ly) * (1.0 + z / g.h);
        });
        *reports[l] = equivalence_run(s, p, c, data, dt, t_end, threads);
        if (reports[l]->failed) return study;
    }
    const State& ac = study.coarse.direct;
    const State& af = study.fine.direct;
    const State& bc = study.coarse.homogenized;
    const State& bf = study.fine.homogenized;
    const double sv = norm_l2(af.v), sT = norm_l2(af.T);
    study.err_direct_v = rel_diff(ac.v, af.v, sv);
    study.err_direct_T = rel_diff(ac.T, af.T, sT);
    study.err_homog_v = rel_diff(bc.v, bf.v, sv);
    study.err_homog_T = rel_diff(bc.T, bf.T, sT);
    return study;
}

ProductBoundReport product_bound_study(const GridSpec& coarse, int triples, std::uint64_t seed) {
    ProductBoundReport rep;
    const GridSpec fine = coarse.refined();
    for (int n = 0; n < triples; ++n) {
        Rng rng(seed + static_cast<std::uint64_t>(n));
        const ModalSeries a = ModalSeries::random(coarse, ModeBasis::cosine, rng);
        const ModalSeries b = ModalSeries::random(coarse, ModeBasis::cosine, rng);
        const ModalSeries c = ModalSeries::random(coarse, ModeBasis::cosine, rng);
        const ProductBound pc = anisotropic_product_bound(a.sample(coarse), b.sample(coarse), c.sample(coarse));
        const ProductBound pf = anisotropic_product_bound(a.sample(fine), b.sample(fine), c.sample(fine));
        rep.violation = rep.violation || pc.violation || pf.violation;
        rep.max_ratio_coarse = std::max(rep.max_ratio_coarse, pc.ratio());
        rep.max_ratio_fine = std::max(rep.max_ratio_fine, pf.ratio());
        ++rep.triples;
    }
    const double lo = std::min(rep.max_ratio_coarse, rep.max_ratio_fine);
    const double hi = std::max(rep.max_ratio_coarse, rep.max_ratio_fine);
    rep.change = lo > 0.0 ? hi / lo : (hi > 0.0 ? HUGE_VAL : 1.0);
    return rep;
}

RoughReport rough_study(const GridSpec& g, const PhysParams& p, const StepConfig& c, std::uint64_t seed,
                        double noise, double t_end, int calibration_runs, int threads) {
    if (calibration_runs < 1) throw std::invalid_argument("rough_study: calibration_runs must be at least 1");
    auto initial_size = [](const LedgerRow& r) {
        return 1.0 + r.v_l2 * r.v_l2 + r.T_l2 * r.T_l2 + r.dzv_l2 * r.dzv_l2 + r.dzT_l2 * r.dzT_l2;
    };
    auto peak = [](const EnergyLedger& l) {
        double m = 0.0;
        for (const auto& r : l.rows())
            m = std::max(m, r.sqrt_t_gradv * r.sqrt_t_gradv + r.sqrt_t_gradT * r.sqrt_t_gradT);
        return m;
    };
    SimulationOptions opt;
    opt.t_end = t_end;

    std::vector<double> cal(calibration_runs);
    parallel_for(calibration_runs, threads, [&](int n) {
        const State s = random_state(g, seed + 100 + static_cast<std::uint64_t>(n));
        const auto res = simulate(s, p, c, opt);
        cal[n] = peak(res.ledger) / initial_size(res.ledger.rows().front());
    });

    RoughReport rep;
    rep.calibration = *std::max_element(cal.begin(), cal.end());
    InitOptions io;
    io.rough = true;
    io.noise = noise;
    const State s = random_state(g, seed, io);
    try {
        auto res = simulate(s, p, c, opt);
        rep.steps = res.steps;
        rep.ledger = std::move(res.ledger);
        rep.finite = res.final_state.all_finite();
    } catch (const std::domain_error&) {
        rep.finite = false;
        return rep;
    }
    rep.envelope = rep.factor * rep.calibration * initial_size(rep.ledger.rows().front());
    rep.peak = peak(rep.ledger);
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

class Report {
public:
    template <class T>
    void add(const std::string& key, const T& value) {
        std::ostringstream os;
        os << std::setprecision(10) << value;
        lines_.emplace_back(key, os.str());
    }
    void add_list(const std::string& key, const std::vector<double>& values) {
        std::ostringstream os;
        os << std::setprecision(10);
        for (std::size_t n = 0; n < values.size(); ++n) os << (n ? "," : "") << values[n];
        lines_.emplace_back(key, os.str());
    }
    void write(const std::string& dir, std::ostream& log) const {
        std::ofstream out(dir + "/report.txt");
        if (!out) throw std::runtime_error("cannot write " + dir + "/report.txt");
        for (const auto& [k, v] : lines_) {
            out << k << " = " << v << "\n";
            log << k << " = " << v << "\n";
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

struct Context {
    const RunConfig& cfg;
    std::ostream& log;
    Report report;
    int threads;
    bool passed = true;

    void check(const std::string& name, bool ok) {
        report.add("check." + name, ok ? "pass" : "fail");
        passed = passed && ok;
    }
};

void write_forcing_artifact(const BoundaryForcing& data, const std::string& dir) {
    write_forcing(dir + "/forcing.idx", data);
}

void scenario_decay(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"init", "amplitude", "T_amplitude", "noise", "forcing", "tau_amplitude", "Ts_amplitude"});
    const std::string init = cfg.get_string("init", "random");
    InitOptions io;
    io.amplitude = cfg.get_double("amplitude", 1.0);
    io.T_amplitude = cfg.get_double("T_amplitude", 1.0);
    io.noise = cfg.get_double("noise", 0.5);
    State s;
    if (init == "random") {
        s = random_state(cfg.grid, cfg.seed, io);
    } else if (init == "rough") {
        io.rough = true;
        s = random_state(cfg.grid, cfg.seed, io);
    } else if (init == "zero") {
        s = State(cfg.grid);
    } else if (init == "mms") {
        s = MmsSolution::on(cfg.grid).sample(cfg.grid);
    } else {
        throw ConfigError("scenario.init: unknown value '" + init + "' (random, rough, zero, mms)");
    }

    std::optional<BoundaryForcing> data;
    const std::string forcing_path = cfg.get_string("forcing", "");
    const double tau_amp = cfg.get_double("tau_amplitude", 0.0);
    const double Ts_amp = cfg.get_double("Ts_amplitude", 0.0);
    if (!forcing_path.empty()) {
        data = read_forcing(cfg.resolve(forcing_path), cfg.physics.alpha_v, cfg.physics.alpha_T);
    } else if (tau_amp != 0.0 || Ts_amp != 0.0) {
        data = analytic_forcing(cfg.grid, cfg.physics.alpha_v, cfg.physics.alpha_T, tau_amp, Ts_amp,
                                cfg.step.t_end + 0.1);
    }
    std::optional<DirectForcing> direct;
    if (data) {
        if (!data->grid().same_shape(cfg.grid)) throw ConfigError("scenario.forcing: grid does not match grid.*");
        data->check_compatibility();
        direct.emplace(*data);
    }

    SimulationOptions opt;
    opt.t_end = cfg.step.t_end;
    opt.forcing = direct ? &*direct : nullptr;
    opt.snapshot_times = cfg.snapshot_times;
    opt.output_dir = cfg.output_dir;
    const auto res = simulate(s, cfg.physics, cfg.step, opt);
    res.ledger.write_csv(cfg.output_dir + "/ledger.csv");
    write_state(res.final_state, cfg.output_dir, "final");
    ctx.report.add("steps", res.steps);
    ctx.report.add("rejections", res.rejections);
    ctx.report.add("t_final", res.final_state.t);
    ctx.report.add("v_l2", norm_l2(res.final_state.v));
    ctx.report.add("T_l2", norm_l2(res.final_state.T));
    ctx.report.add("max_energy_residual", res.max_energy_residual);
    ctx.report.add("max_constraint_div", [&] {
        double m = 0.0;
        for (const auto& r : res.ledger.rows()) m = std::max(m, r.constraint_div);
        return m;
    }());
}

void scenario_skew(Context& ctx) {
    ctx.cfg.require_scenario_keys({"states", "tolerance"});
    const auto rep = skew_symmetry_check(ctx.cfg.grid, ctx.cfg.get_int("states", 5), ctx.cfg.seed,
                                         ctx.cfg.physics.alpha_T);
    ctx.report.add("states", rep.states);
    ctx.report.add("worst_normalized", rep.worst);
    ctx.check("skew", rep.worst <= ctx.cfg.get_double("tolerance", 1e-12));
}

void scenario_energy(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"dt", "steps", "eps", "tolerance"});
    const auto rep = energy_identity_study(cfg.grid, cfg.physics, cfg.get_double("dt", 1e-3), cfg.get_int("steps", 200),
                                           cfg.get_list("eps", {0.0, 0.01}), cfg.seed);
    const double tol = cfg.get_double("tolerance", 0.2);
    ctx.report.add_list("eps", rep.eps);
    ctx.report.add_list("residual_dt", rep.residual_dt);
    ctx.report.add_list("residual_half", rep.residual_half);
    ctx.report.add_list("factor", rep.factor);
    bool ok = true;
    for (double f : rep.factor) ok = ok && std::abs(f - 4.0) <= 4.0 * tol;
    ctx.check("energy_factor", ok);
}

void scenario_eigenmode(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"steps", "tolerance"});
    const auto rep = eigenmode_study(cfg.grid, cfg.physics, cfg.step.t_end, cfg.get_int("steps", 1000));
    ctx.report.add("lambda_h", rep.lambda_h);
    ctx.report.add("observed", rep.observed);
    ctx.report.add("expected", rep.expected);
    ctx.report.add("rel_error", rep.rel_error);
    ctx.check("eigenmode", rep.rel_error <= cfg.get_double("tolerance", 1e-3));
}

void scenario_constraint(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"tau_amplitude", "Ts_amplitude", "tolerance"});
    const auto rep = constraint_study(cfg.grid, cfg.physics, cfg.step, cfg.seed, cfg.get_double("tau_amplitude", 0.5),
                                      cfg.get_double("Ts_amplitude", 1.0));
    ctx.report.add("steps", rep.steps);
    ctx.report.add("max_ratio", rep.max_ratio);
    ctx.check("constraint", rep.max_ratio <= cfg.get_double("tolerance", 1e-8));
}

void scenario_mms(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"min_order"});
    if (cfg.physics.alpha_T != 0.0) throw ConfigError("physics.alpha_T: the mms scenario needs alpha_T = 0");
    const auto rep = mms_study(cfg.grid, cfg.physics, cfg.step, cfg.step.t_end, ctx.threads);
    ctx.report.add("nx", std::to_string(rep.nx[0]) + "," + std::to_string(rep.nx[1]));
    ctx.report.add_list("err_v", rep.err_v);
    ctx.report.add_list("err_T", rep.err_T);
    ctx.report.add("order_v", rep.order_v);
    ctx.report.add("order_T", rep.order_T);
    const double min_order = cfg.get_double("min_order", 1.8);
    ctx.check("mms_order", rep.order_v >= min_order && rep.order_T >= min_order);
}

void scenario_eps_sweep(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"eps"});
    const auto rep = eps_sweep_study(cfg.grid, cfg.physics, cfg.step, cfg.get_list("eps", {0.1, 0.01, 0.001}),
                                     cfg.seed, cfg.step.t_end, ctx.threads);
    ctx.report.add_list("eps", rep.eps);
    ctx.report.add_list("dT", rep.dT);
    ctx.report.add_list("dv", rep.dv);
    ctx.report.add("fitted_order", rep.fitted_order);
    ctx.report.add("degenerate", rep.degenerate);
    ctx.check("eps_monotone", rep.monotone && !rep.degenerate);
}

void scenario_perturbation(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"delta0", "agreement"});
    const auto rep = perturbation_study(cfg.grid, cfg.physics, cfg.step, cfg.seed, cfg.get_double("delta0", 1e-3),
                                        cfg.step.t_end, ctx.threads);
    ctx.report.add_list("deltas", rep.deltas);
    ctx.report.add_list("C_emp", {rep.monitors[0].C_emp, rep.monitors[1].C_emp});
    ctx.report.add("spread", rep.spread);
    ctx.report.add("bounded", rep.bounded);
    ctx.check("perturbation", rep.bounded && rep.spread <= cfg.get_double("agreement", 0.2));
}

void scenario_equivalence(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"forcing", "tau_amplitude", "Ts_amplitude", "dt", "factor"});
    const double dt = cfg.get_double("dt", 0.005);
    const std::string forcing_path = cfg.get_string("forcing", "");
    if (!forcing_path.empty()) {
        const BoundaryForcing data = read_forcing(cfg.resolve(forcing_path), cfg.physics.alpha_v, cfg.physics.alpha_T);
        if (!data.grid().same_shape(cfg.grid)) throw ConfigError("scenario.forcing: grid does not match grid.*");
        data.check_compatibility();
        const State s0 = random_state(cfg.grid, cfg.seed);
        const auto rep = equivalence_run(s0, cfg.physics, cfg.step, data, dt, cfg.step.t_end, ctx.threads);
        if (rep.failed) throw NumericalFailure(rep.failing_branch + " branch failed: " + rep.message);
        write_state(rep.direct, cfg.output_dir, "direct");
        write_state(rep.homogenized, cfg.output_dir, "homogenized");
        ctx.report.add("dv_rel", rep.dv_rel);
        ctx.report.add("dT_rel", rep.dT_rel);
        ctx.report.add("steps", rep.steps);
        return;
    }
    const double tau_amp = cfg.get_double("tau_amplitude", 0.5);
    const double Ts_amp = cfg.get_double("Ts_amplitude", 1.0);
    write_forcing_artifact(analytic_forcing(cfg.grid, cfg.physics.alpha_v, cfg.physics.alpha_T, tau_amp, Ts_amp,
                                            cfg.step.t_end + 4.0 * dt),
                           cfg.output_dir);
    const auto st = equivalence_study(cfg.grid, cfg.physics, cfg.step, tau_amp, Ts_amp, cfg.step.t_end, dt, ctx.threads);
    for (const EquivalenceReport* r : {&st.coarse, &st.fine})
        if (r->failed) throw NumericalFailure(r->failing_branch + " branch failed: " + r->message);
    ctx.report.add_list("discrepancy_coarse", {st.coarse.dv_rel, st.coarse.dT_rel});
    ctx.report.add_list("discrepancy_fine", {st.fine.dv_rel, st.fine.dT_rel});
    ctx.report.add_list("err_direct", {st.err_direct_v, st.err_direct_T});
    ctx.report.add_list("err_homogenized", {st.err_homog_v, st.err_homog_T});
    const double factor = cfg.get_double("factor", 5.0);
    const double disc_c = std::max(st.coarse.dv_rel, st.coarse.dT_rel);
    const double disc_f = std::max(st.fine.dv_rel, st.fine.dT_rel);
    const double err = std::min(std::max(st.err_direct_v, st.err_direct_T), std::max(st.err_homog_v, st.err_homog_T));
    ctx.check("equivalence", disc_c <= factor * err && disc_f < disc_c);
}

void scenario_product_bound(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"triples", "max_change"});
    const auto rep = product_bound_study(cfg.grid, cfg.get_int("triples", 100), cfg.seed);
    ctx.report.add("triples", rep.triples);
    ctx.report.add("max_ratio_coarse", rep.max_ratio_coarse);
    ctx.report.add("max_ratio_fine", rep.max_ratio_fine);
    ctx.report.add("change", rep.change);
    ctx.check("product_bound", !rep.violation && rep.change <= cfg.get_double("max_change", 2.0));
}

void scenario_rough(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    cfg.require_scenario_keys({"noise", "calibration_runs"});
    const auto rep = rough_study(cfg.grid, cfg.physics, cfg.step, cfg.seed, cfg.get_double("noise", 0.5),
                                 cfg.step.t_end, cfg.get_int("calibration_runs", 3), ctx.threads);
    if (!rep.ledger.empty()) rep.ledger.write_csv(cfg.output_dir + "/ledger.csv");
    ctx.report.add("calibration", rep.calibration);
    ctx.report.add("envelope", rep.envelope);
    ctx.report.add("peak", rep.peak);
    ctx.report.add("finite", rep.finite);
    ctx.check("rough", rep.finite && rep.peak <= rep.envelope);
}

using ScenarioFn = void (*)(Context&);

const std::vector<std::pair<std::string, ScenarioFn>>& registry() {
    static const std::vector<std::pair<std::string, ScenarioFn>> r = {
        {"decay", scenario_decay},         {"skew", scenario_skew},
        {"energy", scenario_energy},       {"eigenmode", scenario_eigenmode},
        {"constraint", scenario_constraint}, {"mms", scenario_mms},
        {"eps_sweep", scenario_eps_sweep}, {"perturbation", scenario_perturbation},
        {"equivalence", scenario_equivalence}, {"product_bound", scenario_product_bound},
        {"rough", scenario_rough},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        return n;
    }();
    return names;
}

int run_scenario(const RunConfig& config, std::ostream& log) {
    ScenarioFn fn = nullptr;
    for (const auto& [name, f] : registry())
        if (name == config.scenario) fn = f;
    if (!fn) {
        log << "error: scenario.name: unknown scenario '" << config.scenario << "'\n";
        return exit_config;
    }
    Context ctx{config, log, {}, worker_threads()};
    try {
        std::filesystem::create_directories(config.output_dir);
        ctx.report.add("scenario", config.scenario);
        ctx.report.add("grid", std::to_string(config.grid.nx) + "x" + std::to_string(config.grid.ny) + "x" +
                                   std::to_string(config.grid.nz));
        ctx.report.add("seed", config.seed);
        fn(ctx);
        ctx.report.add("status", ctx.passed ? "ok" : "failed");
        ctx.report.write(config.output_dir, log);
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const NumericalFailure& e) {
        log << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::out_of_range& e) {
        log << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::runtime_error& e) {
        log << "error: " << e.what() << "\n";
        return exit_config;
    }
    return ctx.passed ? exit_ok : exit_acceptance;
}

}  // namespace hydrostat

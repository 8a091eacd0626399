#include "hydrostat/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "hydrostat/io.hpp"
#include "hydrostat/norms.hpp"

namespace hydrostat {

double temperature_dissipation(const ScalarField& T, const PhysParams& p) {
    const FieldBoundary bc = FieldBoundary::temperature(p.alpha_T);
    const H1Parts parts = seminorm_h1_parts(T, bc);
    double d = parts.grad_h * parts.grad_h;
    if (p.alpha_T > 0.0) {
        const double gs = norm_l2_gamma_s(T, bc);
        d += p.alpha_T * gs * gs;
    }
    d /= p.R_T;
    if (p.eps > 0.0) d += p.eps * parts.dz * parts.dz;
    return d;
}

std::vector<std::string> write_state(const State& s, const std::string& dir, const std::string& prefix) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    auto put = [&](const Snapshot& snap) {
        const std::string path = (std::filesystem::path(dir) / (prefix + "_" + snap.field + ".snap")).string();
        write_snapshot(path, snap);
        paths.push_back(path);
    };
    put(make_snapshot(s.v.u, "u", s.t));
    put(make_snapshot(s.v.v, "v", s.t));
    put(make_snapshot(s.T, "T", s.t));
    put(make_snapshot(s.w, "w", s.t));
    return paths;
}

SimulationResult simulate(const State& initial, const PhysParams& p, const StepConfig& c,
                          const SimulationOptions& opt) {
    if (!(opt.t_end > initial.t)) throw std::invalid_argument("simulate: t_end must exceed the initial time");
    if (opt.fixed_dt && !(*opt.fixed_dt > 0.0)) throw std::invalid_argument("simulate: fixed dt must be positive");

    Stepper stepper(initial.grid(), p, c);
    SimulationResult res;
    State s = initial;
    stepper.prepare(s);

    const SampleSchedule schedule{c.dt_max};
    double last_sampled = s.t;
    double residual = 0.0;
    auto record = [&] {
        SampleOptions so = opt.sample;
        so.energy_residual_T = residual;
        res.ledger.append(sample(s, p, so));
        last_sampled = s.t;
    };
    if (opt.record_ledger) record();

    std::vector<double> pending = opt.snapshot_times;
    std::sort(pending.begin(), pending.end());
    std::size_t next_snap = 0;
    auto snapshots = [&] {
        if (opt.output_dir.empty()) return;
        while (next_snap < pending.size() && pending[next_snap] <= s.t + 1e-12) {
            std::ostringstream prefix;
            prefix << "snap_t" << std::setprecision(6) << pending[next_snap];
            for (auto& path : write_state(s, opt.output_dir, prefix.str())) res.snapshots.push_back(path);
            ++next_snap;
        }
    };
    snapshots();

    int fixed_count = 0;
    double fixed_h = 0.0;
    const double t0 = s.t;
    if (opt.fixed_dt) {
        fixed_count = static_cast<int>(std::ceil((opt.t_end - t0) / *opt.fixed_dt - 1e-9));
        fixed_h = (opt.t_end - t0) / fixed_count;
    }

    const double eps_t = 1e-12 * std::max(1.0, std::abs(opt.t_end));
    try {
        while (opt.t_end - s.t > eps_t) {
            const double E0 = 0.5 * std::pow(norm_l2(s.T), 2);
            const double D0 = temperature_dissipation(s.T, p);
            StepReport rep;
            if (opt.fixed_dt) {
                rep = stepper.step(s, opt.forcing, fixed_h);
                if (std::abs(rep.dt - fixed_h) > 1e-12 * fixed_h)
                    throw NumericalFailure("fixed step was rejected by the stability limits");
                ++res.steps;
                s.t = t0 + res.steps * fixed_h;
                if (res.steps == fixed_count) s.t = opt.t_end;
            } else {
                double dt = cfl_dt(s, p, c);
                if (s.t + dt > opt.t_end) dt = opt.t_end - s.t;
                rep = stepper.step(s, opt.forcing, dt);
                ++res.steps;
                if (std::abs(opt.t_end - s.t) <= eps_t) s.t = opt.t_end;
            }
            res.rejections += rep.rejections;
            residual = std::abs(0.5 * std::pow(norm_l2(s.T), 2) - E0 + rep.dt * D0);
            res.max_energy_residual = std::max(res.max_energy_residual, residual);
            res.sum_energy_residual += residual;
            if (opt.on_step) opt.on_step(s, rep);
            const bool last = opt.t_end - s.t <= eps_t;
            if (opt.record_ledger && (last || schedule.due(s.t, last_sampled))) record();
            snapshots();
        }
    } catch (const NumericalFailure& e) {
        std::string where;
        if (!opt.output_dir.empty()) {
            try {
                const auto paths = write_state(s, opt.output_dir, "checkpoint");
                where = " (last checkpoint: " + paths.front() + ")";
            } catch (const std::exception&) {
                where = " (checkpoint could not be written)";
            }
        }
        throw NumericalFailure(std::string(e.what()) + where);
    }
    res.final_state = std::move(s);
    return res;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int n = 0; n < count; ++n) fn(n);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            const int n = next.fetch_add(1);
            if (n >= count) return;
            try {
                fn(n);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first) first = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

}  // namespace hydrostat

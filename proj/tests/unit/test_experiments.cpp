#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "hydrostat/config.hpp"
#include "hydrostat/initial.hpp"
#include "hydrostat/io.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/scenarios.hpp"

using namespace hydrostat;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hydrostat_test_experiments" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string small_config(const fs::path& out, const std::string& extra) {
    return "grid.nx = 8\ngrid.ny = 8\ngrid.nz = 4\nstep.t_end = 0.05\noutput.dir = " + out.string() + "\n" + extra;
}

int run(const std::string& text, std::string* log_out = nullptr) {
    std::ostringstream log;
    const int code = run_scenario(parse_config_string(text), log);
    if (log_out) *log_out = log.str();
    return code;
}

template <class F>
std::string config_error(F&& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
    const RunConfig c = parse_config_string(
        "# header\ngrid.nx = 12  # trailing\nphysics.f = 0.5\nscenario.name = skew\nscenario.states = 3\nseed = 9\n"
        "output.snapshot_times = 0.1, 0.2\ngrid.nx = 10\n");
    EXPECT_EQ(c.grid.nx, 10);
    EXPECT_EQ(c.physics.f, 0.5);
    EXPECT_EQ(c.scenario, "skew");
    EXPECT_EQ(c.get_int("states", 0), 3);
    EXPECT_EQ(c.get_int("missing", 7), 7);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.snapshot_times, (std::vector<double>{0.1, 0.2}));
}

TEST(Config, ErrorsNameTheKey) {
    EXPECT_NE(config_error([] { parse_config_string("grid.nx = many\n"); }).find("grid.nx"), std::string::npos);
    EXPECT_NE(config_error([] { parse_config_string("physics.Re1 = -1\n"); }).find("Re1"), std::string::npos);
    EXPECT_NE(config_error([] { parse_config_string("bogus.key = 1\n"); }).find("bogus.key"), std::string::npos);
    EXPECT_NE(config_error([] { parse_config_string("seed = -3\n"); }).find("seed"), std::string::npos);
    EXPECT_NE(config_error([] { parse_config_string("no equals sign\n"); }).find(":1:"), std::string::npos);
    EXPECT_NE(config_error([] { parse_config_file("/nonexistent/hydrostat.cfg"); }), "");
    const RunConfig c = parse_config_string("scenario.name = skew\nscenario.stats = 3\n");
    EXPECT_NE(config_error([&] { c.require_scenario_keys({"states"}); }).find("scenario.stats"), std::string::npos);
}

TEST(Scenario, UnknownNameIsConfigError) {
    const fs::path dir = scratch("unknown");
    std::string log;
    EXPECT_EQ(run(small_config(dir, "scenario.name = nope\n"), &log), exit_config);
    EXPECT_NE(log.find("scenario.name"), std::string::npos);
    EXPECT_EQ(run(small_config(dir, "scenario.name = decay\nscenario.colour = red\n"), &log), exit_config);
    EXPECT_NE(log.find("scenario.colour"), std::string::npos);
}

TEST(Scenario, MmsNeedsInsulatedSides) {
    const fs::path dir = scratch("mms_alpha");
    std::string log;
    EXPECT_EQ(run(small_config(dir, "scenario.name = mms\nphysics.alpha_T = 0.5\n"), &log), exit_config);
    EXPECT_NE(log.find("alpha_T"), std::string::npos);
}

TEST(Scenario, ZeroDataDecay) {
    const fs::path dir = scratch("zero");
    ASSERT_EQ(run(small_config(dir, "scenario.name = decay\nscenario.init = zero\n")), exit_ok);
    const EnergyLedger l = EnergyLedger::read_csv((dir / "ledger.csv").string());
    ASSERT_GE(l.rows().size(), 2u);
    for (const LedgerRow& r : l.rows()) {
        EXPECT_EQ(r.v_l2, 0.0);
        EXPECT_EQ(r.T_l2, 0.0);
        EXPECT_EQ(r.gradv_l2, 0.0);
        EXPECT_EQ(r.K1, 1.0);
        EXPECT_EQ(r.G1, 1.0);
    }
    for (const char* f : {"final_u.snap", "final_v.snap", "final_T.snap", "final_w.snap", "report.txt"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
}

TEST(Scenario, ReproducibleArtifacts) {
    const std::string extra = "scenario.name = decay\nscenario.init = random\nseed = 5\n";
    const fs::path a = scratch("repro_a"), b = scratch("repro_b");
    ASSERT_EQ(run(small_config(a, extra)), exit_ok);
    ASSERT_EQ(run(small_config(b, extra)), exit_ok);
    for (const char* f : {"ledger.csv", "final_u.snap", "final_v.snap", "final_T.snap", "final_w.snap"}) {
        const std::string x = slurp(a / f);
        EXPECT_FALSE(x.empty()) << f;
        EXPECT_EQ(x, slurp(b / f)) << f;
    }
}

TEST(Snapshot, RoundTrip) {
    const GridSpec g = GridSpec::make(2.0, 1.0, 0.5, 6, 5, 3);
    const State s = random_state(g, 3);
    const fs::path dir = scratch("snap");
    write_snapshot((dir / "T.snap").string(), make_snapshot(s.T, "T", 0.25));
    write_snapshot((dir / "w.snap").string(), make_snapshot(s.w, "w", 0.25));
    const Snapshot T = read_snapshot((dir / "T.snap").string());
    EXPECT_EQ(T.field, "T");
    EXPECT_EQ(T.t, 0.25);
    EXPECT_EQ(T.stagger, Stagger::center);
    EXPECT_TRUE(T.grid.same_shape(g));
    EXPECT_EQ(norm_linf(to_scalar(T) - s.T), 0.0);
    const Snapshot w = read_snapshot((dir / "w.snap").string());
    EXPECT_EQ(w.stagger, Stagger::interface);
    EXPECT_EQ(w.layers(), g.nz + 1);
    EXPECT_EQ(w.data.size(), w.expected_size());

    const SnapshotDiff d0 = diff_snapshots(T, T);
    EXPECT_EQ(d0.l2, 0.0);
    Snapshot shifted = T;
    for (double& x : shifted.data) x += 1.0;
    const SnapshotDiff d1 = diff_snapshots(T, shifted);
    EXPECT_NEAR(d1.l2, std::sqrt(g.area() * g.h), 1e-12);
    EXPECT_NEAR(d1.linf, 1.0, 1e-12);
    EXPECT_THROW(diff_snapshots(T, w), std::invalid_argument);
}

TEST(Snapshot, MalformedFiles) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, 4, 4, 2);
    const fs::path dir = scratch("malformed");
    const std::string good = (dir / "good.snap").string();
    write_snapshot(good, make_snapshot(ScalarField(g, 1.0), "T", 0.0));
    const std::string bytes = slurp(good);

    auto write_raw = [&](const std::string& name, const std::string& content) {
        const std::string p = (dir / name).string();
        std::ofstream(p, std::ios::binary) << content;
        return p;
    };
    EXPECT_THROW(read_snapshot(write_raw("short.snap", bytes.substr(0, bytes.size() - 8))), std::runtime_error);
    EXPECT_THROW(read_snapshot(write_raw("long.snap", bytes + "xxxxxxxx")), std::runtime_error);
    EXPECT_THROW(read_snapshot(write_raw("magic.snap", "NOTASNAP nx=4\n")), std::runtime_error);
    EXPECT_THROW(read_snapshot((dir / "missing.snap").string()), std::runtime_error);
}

TEST(Forcing, IndexRoundTrip) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, 6, 6, 4);
    const BoundaryForcing f = analytic_forcing(g, 1.0, 0.5, 1.0, 1.0, 0.2, 0.05);
    const fs::path dir = scratch("forcing");
    write_forcing((dir / "forcing.idx").string(), f);
    const BoundaryForcing back = read_forcing((dir / "forcing.idx").string(), 1.0, 0.5);
    ASSERT_EQ(back.times(), f.times());
    for (std::size_t n = 0; n < f.size(); ++n) {
        EXPECT_EQ(norm_linf(back.tau_sample(n).u - f.tau_sample(n).u), 0.0);
        EXPECT_EQ(norm_linf(back.tau_sample(n).v - f.tau_sample(n).v), 0.0);
        EXPECT_EQ(norm_linf(back.Ts_sample(n) - f.Ts_sample(n)), 0.0);
    }
}

TEST(Mms, DerivativesMatchFiniteDifferences) {
    const GridSpec g = GridSpec::make(1.3, 0.8, 0.7, 8, 8, 4);
    const MmsSolution m = MmsSolution::on(g);
    const double e = 1e-5;
    for (const auto& [x, y, z] : {std::tuple{0.3, 0.2, -0.1}, std::tuple{1.0, 0.55, -0.6}}) {
        const auto c = m.at(x, y, z);
        const auto xp = m.at(x + e, y, z), xm = m.at(x - e, y, z);
        const auto yp = m.at(x, y + e, z), ym = m.at(x, y - e, z);
        const auto zp = m.at(x, y, z + e), zm = m.at(x, y, z - e);
        EXPECT_NEAR(c.u_x, (xp.u - xm.u) / (2 * e), 1e-7);
        EXPECT_NEAR(c.v_y, (yp.v - ym.v) / (2 * e), 1e-7);
        EXPECT_NEAR(c.T_z, (zp.T - zm.T) / (2 * e), 1e-7);
        EXPECT_NEAR(c.u_zz, (zp.u - 2 * c.u + zm.u) / (e * e), 1e-4);
        EXPECT_NEAR(c.T_lap, (xp.T - 2 * c.T + xm.T + yp.T - 2 * c.T + ym.T) / (e * e), 1e-4);
        EXPECT_NEAR(c.IT_x, (xp.IT - xm.IT) / (2 * e), 1e-7);
        // hydrostatic integral and incompressibility
        EXPECT_NEAR(c.T, (zp.IT - zm.IT) / (2 * e), 1e-7);
        EXPECT_NEAR((zp.w - zm.w) / (2 * e), -(c.u_x + c.v_y), 1e-7);
    }
}

TEST(Mms, BoundaryConditionsAndSource) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, 8, 8, 4);
    PhysParams p;
    EXPECT_NO_THROW(check_mms_boundary(MmsSolution::on(g), g, p));
    MmsSolution off = MmsSolution::on(g);
    off.Lx = 0.9;
    EXPECT_THROW(check_mms_boundary(off, g, p), std::invalid_argument);

    MmsSolution zero = MmsSolution::on(g);
    zero.A = zero.B = zero.D = zero.E = 0.0;
    const Tendency s = mms_source(zero, g, p);
    EXPECT_EQ(norm_linf(s.dv.u), 0.0);
    EXPECT_EQ(norm_linf(s.dT), 0.0);
}

#ifdef HYDROSTAT_CLI
namespace {

int cli(const std::string& args) {
    const std::string cmd = std::string(HYDROSTAT_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
    const fs::path dir = scratch("cli");
    std::ofstream(dir / "ok.cfg") << small_config(dir / "out", "scenario.name = decay\nscenario.init = zero\n");
    std::ofstream(dir / "bad.cfg") << small_config(dir / "out", "grid.nx = x\n");
    EXPECT_EQ(cli("run " + (dir / "ok.cfg").string()), 0);
    EXPECT_EQ(cli("run " + (dir / "bad.cfg").string()), 2);
    EXPECT_EQ(cli("run " + (dir / "missing.cfg").string()), 2);
    EXPECT_EQ(cli("frobnicate"), 2);
    EXPECT_EQ(cli("--help"), 0);
    const std::string u = (dir / "out" / "final_u.snap").string();
    const std::string T = (dir / "out" / "final_T.snap").string();
    const std::string w = (dir / "out" / "final_w.snap").string();
    EXPECT_EQ(cli("diff " + u + " " + T), 0);
    EXPECT_EQ(cli("diff " + u + " " + w), 2);
    EXPECT_EQ(cli("verify " + (dir / "ok.cfg").string() + " --only 11"), 2);
}
#endif
